//! Integer factorizations `AᵀA = Q` of positive semidefinite Gram matrices.
//!
//! A factorization is an embedding of the lattice `(Zⁿ, Q)` into the
//! standard lattice `(Zᵐ, Id)`: column `j` of `A` is the image of basis
//! vector `j`. Two factorizations are equivalent when they differ by a
//! signed permutation of the rows of `A`, the automorphisms of `Zᵐ`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{semidefiniteness, Definiteness, IntMatrix};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    a: IntMatrix,
}

impl Factorization {
    /// Wrap `a`, checking `aᵀ a = q`.
    pub fn new(a: IntMatrix, q: &IntMatrix) -> Result<Self> {
        if a.cols() != q.rows() || a.gram() != *q {
            return Err(Error::Dimension("AᵀA does not reproduce Q".into()));
        }
        Ok(Factorization { a })
    }

    /// The `m × n` matrix `A`.
    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// `Aᵀ`: one row per vertex of the lattice.
    pub fn transpose(&self) -> IntMatrix {
        self.a.transpose()
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    /// Lexicographically least representative under signed row permutations:
    /// every row is replaced by the lesser of itself and its negation, then
    /// rows are sorted.
    pub fn canonical(&self) -> Factorization {
        Factorization {
            a: canonical_rows(&self.a),
        }
    }
}

pub fn canonical_rows(a: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = a
        .to_rows()
        .into_iter()
        .map(|r| {
            let neg: Vec<i64> = r.iter().map(|v| -v).collect();
            r.min(neg)
        })
        .collect();
    rows.sort();
    IntMatrix::from_row_major(a.rows(), a.cols(), rows.concat()).expect("same shape")
}

/// Star-plumbing data used to prune the search: each arm is a linear chain
/// with root vertex `root` representing `fraction > 1`. Arms whose roots all
/// pair non-trivially with one unit vector satisfy `sum q/p <= 1`.
#[derive(Clone, Debug, Default)]
pub struct ArmHint {
    pub arms: Vec<(usize, Rational)>,
}

/// Every factorization class of `q` into `m` rows, as sorted canonical
/// representatives.
pub fn enumerate_factorizations(q: &IntMatrix, m: usize) -> Result<Vec<Factorization>> {
    enumerate_factorizations_with(q, m, None)
}

pub fn enumerate_factorizations_with(
    q: &IntMatrix,
    m: usize,
    hint: Option<&ArmHint>,
) -> Result<Vec<Factorization>> {
    let n = q.rows();
    let rank = match semidefiniteness(q)? {
        Definiteness::PositiveDefinite => n,
        Definiteness::PositiveSemidefinite { nullity } => n - nullity,
        Definiteness::Indefinite => return Err(Error::NotPositiveSemidefinite),
    };
    if m < rank {
        return Err(Error::TooFewRows { rows: m, rank });
    }
    let search = Search::new(q, m, hint);
    let root = State {
        cols: vec![None; n],
        used: 0,
    };

    // fan out over the first two placements, then search each branch independently
    let mut frontier = vec![root];
    for depth in 0..n.min(2) {
        frontier = frontier
            .iter()
            .flat_map(|s| search.extend(s, depth))
            .collect();
    }
    let start = n.min(2);
    let found: BTreeSet<IntMatrix> = frontier
        .par_iter()
        .map(|s| {
            let mut out = BTreeSet::new();
            search.dfs(s, start, &mut out);
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().map(|a| Factorization { a }).collect())
}

#[derive(Clone)]
struct State {
    cols: Vec<Option<Vec<i64>>>,
    /// coordinates `0..used` have been touched by some placed column
    used: usize,
}

struct Search<'a> {
    q: &'a IntMatrix,
    m: usize,
    order: Vec<usize>,
    /// arm fraction keyed by root vertex
    roots: Vec<Option<Rational>>,
}

impl<'a> Search<'a> {
    fn new(q: &'a IntMatrix, m: usize, hint: Option<&ArmHint>) -> Self {
        let n = q.rows();
        let mut roots = vec![None; n];
        if let Some(h) = hint {
            for (v, f) in &h.arms {
                roots[*v] = Some(f.clone());
            }
        }
        Search {
            q,
            m,
            order: placement_order(q),
            roots,
        }
    }

    fn extend(&self, s: &State, depth: usize) -> Vec<State> {
        let v = self.order[depth];
        self.candidates(s, v)
            .into_iter()
            .filter(|(x, _)| self.arm_bound_ok(s, v, x))
            .map(|(x, used)| {
                let mut next = s.clone();
                next.cols[v] = Some(x);
                next.used = used;
                next
            })
            .collect()
    }

    fn dfs(&self, s: &State, depth: usize, out: &mut BTreeSet<IntMatrix>) {
        if depth == self.order.len() {
            out.insert(canonical_rows(&self.assemble(s)));
            return;
        }
        for next in self.extend(s, depth) {
            self.dfs(&next, depth + 1, out);
        }
    }

    fn assemble(&self, s: &State) -> IntMatrix {
        let n = self.q.rows();
        let mut a = IntMatrix::zeros(self.m, n);
        for (j, col) in s.cols.iter().enumerate() {
            for (i, &x) in col.as_ref().expect("complete").iter().enumerate() {
                a.set(i, j, x);
            }
        }
        a
    }

    /// Vectors `x` with `|x|² = Q_vv` and `x·a_u = Q_uv` for every placed `u`.
    /// Entries on untouched coordinates form a non-increasing positive prefix,
    /// which picks one representative per orbit of the signed permutations
    /// fixing the placed columns' support.
    fn candidates(&self, s: &State, v: usize) -> Vec<(Vec<i64>, usize)> {
        let placed: Vec<(&Vec<i64>, i64)> = s
            .cols
            .iter()
            .enumerate()
            .filter_map(|(u, c)| c.as_ref().map(|c| (c, self.q.get(u, v))))
            .collect();
        // suffix squared norms of each placed column over touched coordinates
        let suffix: Vec<Vec<i64>> = placed
            .iter()
            .map(|(c, _)| {
                let mut suf = vec![0; s.used + 1];
                for i in (0..s.used).rev() {
                    suf[i] = suf[i + 1] + c[i] * c[i];
                }
                suf
            })
            .collect();
        let mut out = Vec::new();
        let mut x = vec![0i64; self.m];
        let residual: Vec<i64> = placed.iter().map(|(_, t)| *t).collect();
        self.fill_touched(
            s.used,
            0,
            self.q.get(v, v),
            &placed,
            &suffix,
            residual,
            &mut x,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_touched(
        &self,
        used: usize,
        i: usize,
        rem: i64,
        placed: &[(&Vec<i64>, i64)],
        suffix: &[Vec<i64>],
        residual: Vec<i64>,
        x: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, usize)>,
    ) {
        if i == used {
            if residual.iter().any(|&r| r != 0) {
                return;
            }
            let mut parts = Vec::new();
            fresh_parts(rem, isqrt(rem), self.m - used, &mut parts, &mut |p| {
                let mut y = x.clone();
                for (k, &c) in p.iter().enumerate() {
                    y[used + k] = c;
                }
                out.push((y, used + p.len()));
            });
            return;
        }
        let s = isqrt(rem);
        for val in -s..=s {
            let rem2 = rem - val * val;
            let mut ok = true;
            let mut next = residual.clone();
            for (k, (c, _)) in placed.iter().enumerate() {
                next[k] -= val * c[i];
                let r = next[k];
                // Cauchy-Schwarz on the coordinates still to be filled
                if r * r > rem2 * suffix[k][i + 1] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            x[i] = val;
            self.fill_touched(used, i + 1, rem2, placed, suffix, next, x, out);
            x[i] = 0;
        }
    }

    fn arm_bound_ok(&self, s: &State, v: usize, x: &[i64]) -> bool {
        let Some(frac) = &self.roots[v] else {
            return true;
        };
        for (c, &xc) in x.iter().enumerate() {
            if xc == 0 {
                continue;
            }
            let mut total = frac.recip();
            for (u, col) in s.cols.iter().enumerate() {
                if let (Some(col), Some(f)) = (col, &self.roots[u]) {
                    if col[c] != 0 {
                        total = total + f.recip();
                    }
                }
            }
            if total > Rational::one() {
                return false;
            }
        }
        true
    }
}

/// Non-increasing positive sequences of length `<= slots` whose squares sum to `rem`.
fn fresh_parts(rem: i64, max: i64, slots: usize, cur: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if rem == 0 {
        emit(cur);
        return;
    }
    if slots == 0 {
        return;
    }
    let top = max.min(isqrt(rem));
    for c in (1..=top).rev() {
        // remaining slots can hold at most slots * c² with entries <= c
        if (slots as i64) * c * c < rem {
            break;
        }
        cur.push(c);
        fresh_parts(rem - c * c, c, slots - 1, cur, emit);
        cur.pop();
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Start from the largest diagonal entry, then repeatedly take the vertex
/// with the most already-placed neighbours (ties: larger diagonal, lower index).
fn placement_order(q: &IntMatrix) -> Vec<usize> {
    let n = q.rows();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| q.get(u, v) != 0).count();
                (links, q.get(v, v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}
