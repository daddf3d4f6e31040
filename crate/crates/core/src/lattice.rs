//! Lattice embeddings of paired plumbings and the modular obstruction to
//! gluing two of them along their common boundary.
//!
//! For `Y = S2(l; p1/q1, ..., p2l/q2l)` with `eps = 0` the plumbing form is
//! semidefinite with a one-dimensional kernel spanned by `v0`. Two
//! factorizations `A1, A2` of it have joint image `{x : v0·x = 0}` exactly
//! when the glued manifold has the right homology; the witness `x` built
//! here lies in that hyperplane but is detected mod `p` by `w̄`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::classifier::{first_common_factor, pair_up, PairClass};
use crate::error::{Error, Result};
use crate::factor::{enumerate_factorizations_with, ArmHint, Factorization};
use crate::matrix::IntMatrix;
use crate::plumbing::{star_plumbing, KernelVector, PlumbingGraph};
use crate::rational::Rational;
use crate::seifert::SeifertInvariants;

/// Arms grouped two by two according to the central row of a factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmPartition {
    pub classes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    /// indices into [`PairedPlumbing::classes`]
    pub first_class: usize,
    pub second_class: usize,
    pub gcd: BigInt,
    pub x: Vec<BigInt>,
    pub wbar: Vec<BigInt>,
    pub modulus: BigInt,
    pub residue: BigInt,
}

/// Star plumbing of a paired space together with its arm classes.
#[derive(Clone, Debug)]
pub struct PairedPlumbing {
    space: SeifertInvariants,
    graph: PlumbingGraph,
    classes: Vec<PairClass>,
    arm_class: Vec<usize>,
}

impl PairedPlumbing {
    pub fn new(y: &SeifertInvariants) -> Result<Self> {
        let classes = pair_up(y).map_err(|_| Error::NotPaired)?;
        let (space, graph) = if y.coeffs().is_empty() {
            let empty = SeifertInvariants::new(0, vec![])?;
            (empty, PlumbingGraph::new(0, vec![]))
        } else {
            let space = y.normalize_positive()?;
            let graph = star_plumbing(&space)?;
            (space, graph)
        };
        let arm_class = space
            .coeffs()
            .iter()
            .map(|c| {
                classes
                    .iter()
                    .position(|k| k.contains(c))
                    .expect("pair_up covers every arm")
            })
            .collect();
        Ok(PairedPlumbing {
            space,
            graph,
            classes,
            arm_class,
        })
    }

    /// The normalized presentation the plumbing is built from.
    pub fn space(&self) -> &SeifertInvariants {
        &self.space
    }

    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    pub fn classes(&self) -> &[PairClass] {
        &self.classes
    }

    pub fn arm_class(&self, arm: usize) -> usize {
        self.arm_class[arm]
    }

    pub fn gram_matrix(&self) -> Result<IntMatrix> {
        self.graph.gram_matrix()
    }

    pub fn kernel_vector(&self) -> Result<KernelVector> {
        self.graph.kernel_vector()
    }

    pub fn arm_hint(&self) -> ArmHint {
        ArmHint {
            arms: (0..self.graph.arms().len())
                .map(|i| (self.graph.arm_root(i), self.graph.arm_fraction(i)))
                .collect(),
        }
    }

    /// All factorization classes of the Gram matrix into `n - 1` rows.
    pub fn factorizations(&self) -> Result<Vec<Factorization>> {
        let q = self.gram_matrix()?;
        let m = q.rows() - 1;
        enumerate_factorizations_with(&q, m, Some(&self.arm_hint()))
    }

    fn arm_of_vertex(&self, v: usize) -> Option<usize> {
        (0..self.graph.arms().len()).find(|&i| self.graph.arm_vertices(i).contains(&v))
    }

    /// Read the arm pairing off the central vertex's image: it must be a
    /// sum of `l` distinct unit vectors, and the arms meeting each of those
    /// coordinates form a pair of complementary fractions.
    pub fn central_row_structure(&self, f: &Factorization) -> Result<ArmPartition> {
        let a = f.matrix();
        let n = self.graph.vertex_count();
        if a.cols() != n {
            return Err(Error::Dimension(format!(
                "{} columns for {n} vertices",
                a.cols()
            )));
        }
        let l = self.graph.central_weight();
        let centre = a.col(0);
        let support: Vec<usize> = (0..a.rows()).filter(|&c| centre[c] != 0).collect();
        if support.len() as i64 != l || support.iter().any(|&c| centre[c].abs() != 1) {
            return Err(Error::Inconsistent(format!(
                "central row {centre:?} is not {l} units"
            )));
        }
        let arms = self.graph.arms().len();
        let mut seen = vec![false; arms];
        let mut classes = Vec::with_capacity(support.len());
        for &c in &support {
            let mut members: Vec<usize> = (1..n)
                .filter(|&v| a.get(c, v) != 0)
                .filter_map(|v| self.arm_of_vertex(v))
                .collect();
            members.dedup();
            let [x, y] = members[..] else {
                return Err(Error::Inconsistent(format!(
                    "coordinate {c} meets arms {members:?}"
                )));
            };
            if seen[x] || seen[y] {
                return Err(Error::Inconsistent(format!(
                    "arms {x}, {y} meet two central coordinates"
                )));
            }
            seen[x] = true;
            seen[y] = true;
            let sum = self.graph.arm_fraction(x).recip() + self.graph.arm_fraction(y).recip();
            if sum != Rational::one() {
                return Err(Error::Inconsistent(format!(
                    "arms {x}, {y} have reciprocal sum {sum}"
                )));
            }
            classes.push((x, y));
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Inconsistent(
                "some arm meets no central coordinate".into(),
            ));
        }
        classes.sort();
        Ok(ArmPartition { classes })
    }

    /// Kernel vector of the sub-plumbing made of the centre and the arms of
    /// class `j` (central weight lowered to the class multiplicity), reduced
    /// mod `p_j` and extended by zero.
    pub fn image_detection_vector(&self, j: usize) -> Result<Vec<BigInt>> {
        let class = self.classes.get(j).ok_or(Error::NoSuchClass(j))?;
        let arms: Vec<usize> = (0..self.arm_class.len())
            .filter(|&i| self.arm_class[i] == j)
            .collect();
        let sub = PlumbingGraph::new(
            class.multiplicity as i64,
            arms.iter().map(|&i| self.graph.arms()[i].clone()).collect(),
        );
        let kv = sub.kernel_vector()?;
        let mut w = vec![BigInt::zero(); self.graph.vertex_count()];
        w[0] = kv.entries[0].mod_floor(&class.p);
        for (k, &i) in arms.iter().enumerate() {
            for (sv, v) in sub.arm_vertices(k).zip(self.graph.arm_vertices(i)) {
                w[v] = kv.entries[sv].mod_floor(&class.p);
            }
        }
        Ok(w)
    }

    /// A vector in the kernel hyperplane that no pair of factorizations can
    /// reach, when two distinct classes have numerators with a common factor.
    pub fn coprimality_obstruction(&self) -> Result<Option<ObstructionWitness>> {
        let Some((i, j, g)) = first_common_factor(&self.classes) else {
            return Ok(None);
        };
        let first_arm = |k: usize| {
            self.arm_class
                .iter()
                .position(|&c| c == k)
                .expect("class has arms")
        };
        let (pi, pj) = (&self.classes[i].p, &self.classes[j].p);
        let mut x = vec![BigInt::zero(); self.graph.vertex_count()];
        x[self.graph.arm_leaf(first_arm(i))] = pi / &g;
        x[self.graph.arm_leaf(first_arm(j))] = -(pj / &g);
        let wbar = self.image_detection_vector(i)?;
        let residue = dot(&wbar, &x).mod_floor(pi);
        Ok(Some(ObstructionWitness {
            first_class: i,
            second_class: j,
            gcd: g,
            x,
            wbar,
            modulus: pi.clone(),
            residue,
        }))
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether `x` lies in the integer span of the columns of `(A1ᵀ | A2ᵀ)`.
/// Anything off the hyperplane `v0·x = 0` is rejected straight away.
pub fn torsion_image_test(
    a1: &Factorization,
    a2: &Factorization,
    v0: &KernelVector,
    x: &[BigInt],
) -> bool {
    if !v0.dot(x).is_zero() {
        return false;
    }
    let gens: Vec<Vec<BigInt>> = a1
        .matrix()
        .to_rows()
        .into_iter()
        .chain(a2.matrix().to_rows())
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    lattice_contains(gens, x)
}

/// Integer membership of `x` in the lattice spanned by `gens`.
pub fn lattice_contains(gens: Vec<Vec<BigInt>>, x: &[BigInt]) -> bool {
    let basis = echelon(gens);
    let mut x = x.to_vec();
    for (col, row) in &basis {
        let (quot, rem) = x[*col].div_rem(&row[*col]);
        if !rem.is_zero() {
            return false;
        }
        if !quot.is_zero() {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &quot * ri;
            }
        }
    }
    x.iter().all(Zero::is_zero)
}

/// Row echelon form over the integers, as `(pivot column, row)` pairs.
fn echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<(usize, Vec<BigInt>)> {
    let width = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for col in 0..width {
        loop {
            rows.retain(|r| r.iter().any(|v| !v.is_zero()));
            let active: Vec<usize> = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            let Some(&best) = active.iter().min_by_key(|&&i| rows[i][col].abs()) else {
                break;
            };
            if active.len() == 1 {
                out.push((col, rows.swap_remove(best)));
                break;
            }
            let pivot = rows[best].clone();
            for &i in &active {
                if i == best {
                    continue;
                }
                let f = rows[i][col].div_floor(&pivot[col]);
                for (r, p) in rows[i].iter_mut().zip(&pivot) {
                    *r -= &f * p;
                }
            }
        }
    }
    out
}

/// `w̄ᵀAᵀ mod p`, which vanishes for every factorization.
pub fn detection_residues(wbar: &[BigInt], f: &Factorization, p: &BigInt) -> Vec<BigInt> {
    let a = f.matrix();
    (0..a.rows())
        .map(|c| {
            (0..a.cols())
                .map(|v| &wbar[v] * a.get(c, v))
                .sum::<BigInt>()
                .mod_floor(p)
        })
        .collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
