//! Star-shaped plumbing graphs of normalized Seifert spaces.
//!
//! Vertices are indexed central-first, then arm by arm in input order, each
//! arm listed from the vertex adjacent to the centre out to its leaf.

use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{denominator_sequence, neg_cf_eval, neg_cf_expand, NegCF, Rational};
use crate::seifert::SeifertInvariants;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    central_weight: i64,
    arms: Vec<NegCF>,
}

impl PlumbingGraph {
    pub fn new(central_weight: i64, arms: Vec<NegCF>) -> Self {
        PlumbingGraph {
            central_weight,
            arms,
        }
    }

    pub fn central_weight(&self) -> i64 {
        self.central_weight
    }

    pub fn arms(&self) -> &[NegCF] {
        &self.arms
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.arms.iter().map(NegCF::len).sum::<usize>()
    }

    /// Vertex indices of arm `i`, root to leaf.
    pub fn arm_vertices(&self, i: usize) -> Range<usize> {
        let start = 1 + self.arms[..i].iter().map(NegCF::len).sum::<usize>();
        start..start + self.arms[i].len()
    }

    pub fn arm_root(&self, i: usize) -> usize {
        self.arm_vertices(i).start
    }

    pub fn arm_leaf(&self, i: usize) -> usize {
        self.arm_vertices(i).end - 1
    }

    /// The fraction `p/q > 1` carried by arm `i`.
    pub fn arm_fraction(&self, i: usize) -> Rational {
        neg_cf_eval(&self.arms[i])
    }

    /// `e - sum q_i/p_i` of the Seifert space bounded by the plumbing.
    pub fn euler_number(&self) -> Rational {
        let s: Rational = (0..self.arms.len())
            .map(|i| self.arm_fraction(i).recip())
            .sum();
        Rational::from(self.central_weight) - s
    }

    pub fn gram_matrix(&self) -> Result<IntMatrix> {
        let n = self.vertex_count();
        let mut q = IntMatrix::zeros(n, n);
        q.set(0, 0, self.central_weight);
        for (i, arm) in self.arms.iter().enumerate() {
            let weights = arm.terms_i64()?;
            let range = self.arm_vertices(i);
            for (offset, (v, w)) in range.clone().zip(weights).enumerate() {
                q.set(v, v, w);
                let prev = if offset == 0 { 0 } else { v - 1 };
                q.set(v, prev, -1);
                q.set(prev, v, -1);
            }
        }
        Ok(q)
    }

    /// Integer vector `v0` with `v0ᵀ Q = 0`: `L = lcm(p_i)` on the centre and
    /// `(L/p_i)·(b1, ..., bh)` along arm `i`, where `b` is the denominator
    /// sequence of the arm's continued fraction.
    pub fn kernel_vector(&self) -> Result<KernelVector> {
        if !self.euler_number().is_zero() {
            return Err(Error::NonZeroEuler);
        }
        let fractions: Vec<Rational> = (0..self.arms.len()).map(|i| self.arm_fraction(i)).collect();
        let lcm = fractions
            .iter()
            .fold(BigInt::one(), |l, f| l.lcm(f.numer()));
        let mut entries = vec![BigInt::zero(); self.vertex_count()];
        entries[0] = lcm.clone();
        for (i, arm) in self.arms.iter().enumerate() {
            let scale = &lcm / fractions[i].numer();
            let b = denominator_sequence(arm);
            for (v, bk) in self.arm_vertices(i).zip(b) {
                entries[v] = &scale * bk;
            }
        }
        let kv = KernelVector { entries, lcm };
        let q = self.gram_matrix()?;
        if !kv.annihilates(&q) {
            return Err(Error::Inconsistent(
                "kernel vector construction failed".into(),
            ));
        }
        Ok(kv)
    }
}

/// Star plumbing of a space in normalized form (`e >= 0`, all `p/q > 1`).
pub fn star_plumbing(y: &SeifertInvariants) -> Result<PlumbingGraph> {
    if !y.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let central = y
        .e()
        .to_i64()
        .ok_or_else(|| Error::Overflow(format!("framing {}", y.e())))?;
    let arms = y
        .coeffs()
        .iter()
        .map(neg_cf_expand)
        .collect::<Result<Vec<_>>>()?;
    Ok(PlumbingGraph::new(central, arms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector {
    pub entries: Vec<BigInt>,
    pub lcm: BigInt,
}

impl KernelVector {
    pub fn annihilates(&self, q: &IntMatrix) -> bool {
        q.rows() == self.entries.len()
            && (0..q.cols()).all(|j| {
                (0..q.rows())
                    .map(|i| &self.entries[i] * q.get(i, j))
                    .sum::<BigInt>()
                    .is_zero()
            })
    }

    pub fn dot(&self, x: &[BigInt]) -> BigInt {
        self.entries.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(ToPrimitive::to_i64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{semidefiniteness, Definiteness};

    fn sfs(e: i64, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::from_pairs(e, pairs).unwrap()
    }

    fn arms(g: &PlumbingGraph) -> Vec<Vec<i64>> {
        g.arms().iter().map(|a| a.terms_i64().unwrap()).collect()
    }

    fn worked() -> PlumbingGraph {
        star_plumbing(&sfs(2, &[(2, 1), (2, 1), (8, 3), (8, 5)])).unwrap()
    }

    #[test]
    fn star_examples() {
        let g = worked();
        assert_eq!(g.central_weight(), 2);
        assert_eq!(arms(&g), vec![vec![2], vec![2], vec![3, 3], vec![2, 3, 2]]);
        let g = star_plumbing(&sfs(1, &[(2, 1)])).unwrap();
        assert_eq!((g.central_weight(), arms(&g)), (1, vec![vec![2]]));
        let g = star_plumbing(&sfs(3, &[(3, 2), (3, 2), (3, 2)])).unwrap();
        assert_eq!(arms(&g), vec![vec![2, 2]; 3]);
        assert_eq!(
            star_plumbing(&sfs(0, &[(5, 2), (-5, 2)])),
            Err(Error::NotNormalized)
        );
    }

    #[test]
    fn worked_gram_matrix() {
        let expected = IntMatrix::from_rows(&[
            vec![2, -1, -1, -1, 0, -1, 0, 0],
            vec![-1, 2, 0, 0, 0, 0, 0, 0],
            vec![-1, 0, 2, 0, 0, 0, 0, 0],
            vec![-1, 0, 0, 3, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 3, 0, 0, 0],
            vec![-1, 0, 0, 0, 0, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 3, -1],
            vec![0, 0, 0, 0, 0, 0, -1, 2],
        ])
        .unwrap();
        assert_eq!(worked().gram_matrix().unwrap(), expected);
        assert_eq!(
            semidefiniteness(&expected).unwrap(),
            Definiteness::PositiveSemidefinite { nullity: 1 }
        );
    }

    #[test]
    fn small_gram_matrices() {
        let g = PlumbingGraph::new(5, vec![]);
        assert_eq!(
            g.gram_matrix().unwrap(),
            IntMatrix::from_rows(&[vec![5]]).unwrap()
        );
        let g = star_plumbing(&sfs(1, &[(2, 1)])).unwrap();
        assert_eq!(
            g.gram_matrix().unwrap(),
            IntMatrix::from_rows(&[vec![1, -1], vec![-1, 2]]).unwrap()
        );
    }

    #[test]
    fn kernel_examples() {
        let v = worked().kernel_vector().unwrap();
        assert_eq!(v.to_i64().unwrap(), vec![8, 4, 4, 3, 1, 5, 2, 1]);
        assert_eq!(v.lcm, BigInt::from(8));
        let g = star_plumbing(&sfs(1, &[(2, 1)])).unwrap();
        assert_eq!(g.kernel_vector(), Err(Error::NonZeroEuler));
        let g = star_plumbing(&sfs(2, &[(2, 1), (2, 1)])).unwrap();
        assert_eq!(g.kernel_vector(), Err(Error::NonZeroEuler));
        let g = star_plumbing(&sfs(1, &[(2, 1), (2, 1)])).unwrap();
        assert_eq!(g.kernel_vector().unwrap().to_i64().unwrap(), vec![2, 1, 1]);
    }

    #[test]
    fn vertex_layout() {
        let g = worked();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.arm_vertices(2), 3..5);
        assert_eq!(g.arm_root(3), 5);
        assert_eq!(g.arm_leaf(3), 7);
        assert_eq!(g.euler_number(), Rational::zero());
    }
}
