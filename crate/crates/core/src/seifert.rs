//! Seifert fibered spaces over S² given by the surgery description
//! `S2(e; p1/q1, ..., pk/qk)`: an `e`-framed central unknot with `k`
//! meridional unknots carrying `pi/qi` surgeries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::smith::smith_diagonal;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertInvariants {
    e: BigInt,
    coeffs: Vec<Rational>,
}

impl SeifertInvariants {
    pub fn new(e: impl Into<BigInt>, coeffs: Vec<Rational>) -> Result<Self> {
        for c in &coeffs {
            if c.numer().abs() <= BigInt::one() {
                return Err(Error::DegenerateCoefficient(c.to_string()));
            }
        }
        Ok(SeifertInvariants {
            e: e.into(),
            coeffs,
        })
    }

    /// Convenience constructor from `(p, q)` pairs; each pair must be coprime.
    pub fn from_pairs(e: i64, pairs: &[(i64, i64)]) -> Result<Self> {
        let coeffs = pairs
            .iter()
            .map(|&(p, q)| Rational::new_reduced(p, q))
            .collect::<Result<Vec<_>>>()?;
        SeifertInvariants::new(e, coeffs)
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `(p_i, q_i)` with the sign carried by `p_i`.
    pub fn pairs(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.coeffs.iter().map(|c| (c.numer(), c.denom()))
    }

    pub fn euler_number(&self) -> Rational {
        let s: Rational = self.coeffs.iter().map(|c| c.recip()).sum();
        Rational::from_int(self.e.clone()) - s
    }

    pub fn first_betti(&self) -> u32 {
        u32::from(self.euler_number().is_zero())
    }

    /// `-Y`: negate the framing and every coefficient.
    pub fn reverse_orientation(&self) -> SeifertInvariants {
        SeifertInvariants {
            e: -self.e.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// First homology from the gcd formula: `d1 = d2 = 1`, `dj` the gcd of all
    /// `(j-2)`-fold products of the `pi`, `d(k+1) = p1...pk * eps`, and
    /// invariant factors `Di = d(i+1)/di`.
    pub fn homology(&self) -> AbelianGroup {
        let k = self.coeffs.len();
        if k == 0 {
            return AbelianGroup::from_factors(std::iter::once(self.e.abs()));
        }
        let ps: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer().abs()).collect();
        let mut d: Vec<BigInt> = Vec::with_capacity(k + 1);
        for j in 1..=k {
            if j <= 2 {
                d.push(BigInt::one());
            } else {
                d.push(subset_product_gcd(&ps, j - 2));
            }
        }
        let prod: BigInt = ps.iter().product();
        let top = Rational::from_int(prod) * self.euler_number();
        debug_assert!(top.is_integer());
        d.push(top.numer().abs());
        let factors = d.windows(2).map(|w| &w[1] / &w[0]);
        AbelianGroup::from_factors(factors)
    }

    /// First homology from the Smith normal form of the surgery presentation
    /// matrix on meridians `mu0, ..., muk`.
    pub fn homology_oracle(&self) -> AbelianGroup {
        let k = self.coeffs.len();
        let mut m = vec![vec![BigInt::zero(); k + 1]; k + 1];
        m[0][0] = self.e.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            m[0][i + 1] = BigInt::one();
            m[i + 1][0] = c.denom().clone();
            m[i + 1][i + 1] = c.numer().clone();
        }
        AbelianGroup::from_factors(smith_diagonal(m))
    }

    /// Normal form under Rolfsen twists: every coefficient becomes `p/q` with
    /// `0 < q < p`, the integer parts are absorbed into `e` (so `eps` is
    /// preserved) and the coefficients are sorted by `(p, q)`.
    pub fn canonical_form(&self) -> SeifertInvariants {
        let mut out = self.twist_positive();
        out.coeffs
            .sort_by(|a, b| (a.numer(), a.denom()).cmp(&(b.numer(), b.denom())));
        out
    }

    pub fn is_homeomorphic(&self, other: &SeifertInvariants) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Presentation with every `pi/qi > 1` and `e >= 0`, coefficient order kept.
    pub fn normalize_positive(&self) -> Result<SeifertInvariants> {
        if self.coeffs.is_empty() {
            return Err(Error::NoFibers);
        }
        if self.euler_number().is_negative() {
            return Err(Error::NegativeEuler);
        }
        let out = self.twist_positive();
        debug_assert!(!out.e.is_negative());
        Ok(out)
    }

    pub fn is_normalized(&self) -> bool {
        !self.e.is_negative() && self.coeffs.iter().all(|c| c > &Rational::one())
    }

    fn twist_positive(&self) -> SeifertInvariants {
        let mut e = self.e.clone();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let r = c.recip();
            let frac = r.fract_part();
            e -= r.floor();
            if frac.is_zero() {
                continue;
            }
            coeffs.push(frac.recip());
        }
        SeifertInvariants { e, coeffs }
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S2({};", self.e)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, c)?;
        }
        write!(f, ")")
    }
}

fn subset_product_gcd(ps: &[BigInt], size: usize) -> BigInt {
    fn rec(ps: &[BigInt], start: usize, left: usize, acc: &BigInt, g: &mut BigInt) {
        if left == 0 {
            *g = g.gcd(acc);
            return;
        }
        for i in start..=ps.len() - left {
            rec(ps, i + 1, left - 1, &(acc * &ps[i]), g);
            if g.is_one() {
                return;
            }
        }
    }
    let mut g = BigInt::zero();
    rec(ps, 0, size, &BigInt::one(), &mut g);
    g
}

/// Finitely generated abelian group `Z^r + Z/D1 + ... + Z/Dm`, `1 < D1 | D2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Build from a list of cyclic factors `Z/Di` already forming a
    /// divisibility chain; `0` counts as a free summand and `1` is dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for f in factors {
            let f = f.abs();
            if f.is_zero() {
                free_rank += 1;
            } else if !f.is_one() {
                torsion.push(f);
            }
        }
        torsion.sort();
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Dimension of `H ⊗ Z/2`.
    pub fn rank_mod2(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| d.is_even()).count()
    }

    pub fn is_chain(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = std::iter::repeat("Z".to_string())
            .take(self.free_rank)
            .chain(self.torsion.iter().map(|d| format!("Z/{d}")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sfs(e: i64, pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::from_pairs(e, pairs).unwrap()
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn group(free: usize, tors: &[i64]) -> AbelianGroup {
        AbelianGroup {
            free_rank: free,
            torsion: tors.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    fn worked() -> SeifertInvariants {
        sfs(2, &[(2, 1), (2, 1), (8, 3), (8, 5)])
    }

    #[test]
    fn rejects_degenerate_coefficients() {
        assert!(SeifertInvariants::from_pairs(0, &[(1, 2)]).is_err());
        assert!(SeifertInvariants::from_pairs(0, &[(-1, 3)]).is_err());
        assert!(SeifertInvariants::from_pairs(0, &[(4, 2)]).is_err());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(worked().euler_number(), Rational::zero());
        assert_eq!(sfs(0, &[]).euler_number(), Rational::zero());
        assert_eq!(sfs(1, &[(2, 1)]).euler_number(), q(1, 2));
    }

    #[test]
    fn betti_examples() {
        assert_eq!(sfs(0, &[(5, 2), (-5, 2)]).first_betti(), 1);
        assert_eq!(sfs(1, &[(2, 1)]).first_betti(), 0);
        assert_eq!(sfs(0, &[]).first_betti(), 1);
    }

    #[test]
    fn homology_examples() {
        let y = sfs(0, &[(5, 2), (-5, 2), (5, 1), (-5, 1)]);
        assert_eq!(y.homology(), group(1, &[5, 5]));
        assert_eq!(y.homology_oracle(), group(1, &[5, 5]));
        assert_eq!(sfs(0, &[]).homology_oracle(), group(1, &[]));
        assert_eq!(worked().homology(), worked().homology_oracle());
        // values below come from the Smith normal form path
        let y = sfs(0, &[(2, 1), (-2, 1)]);
        assert_eq!(y.homology_oracle(), group(1, &[]));
        assert_eq!(y.homology(), y.homology_oracle());
        let y = sfs(1, &[(2, 1)]);
        assert_eq!(y.homology_oracle(), group(0, &[]));
        assert_eq!(y.homology(), y.homology_oracle());
    }

    #[test]
    fn lens_space_cases() {
        assert_eq!(sfs(5, &[]).homology(), group(0, &[5]));
        assert_eq!(sfs(-3, &[]).homology_oracle(), group(0, &[3]));
        assert_eq!(sfs(2, &[(7, 3)]).homology(), group(0, &[11]));
        assert_eq!(sfs(2, &[(7, 3)]).homology_oracle(), group(0, &[11]));
    }

    #[test]
    fn canonical_form_examples() {
        let y = sfs(0, &[(5, 2), (-5, 2)]);
        // -2/5 = -1 + 3/5, so one unit moves into the framing
        assert_eq!(y.canonical_form(), sfs(1, &[(5, 2), (5, 3)]));
        assert_eq!(sfs(0, &[]).canonical_form(), sfs(0, &[]));
        assert_eq!(worked().canonical_form(), worked());
        let c = y.canonical_form();
        assert_eq!(c.canonical_form(), c);
        assert_eq!(c.euler_number(), y.euler_number());
    }

    #[test]
    fn homeomorphism_examples() {
        let y = sfs(0, &[(5, 2), (-5, 2)]);
        assert!(y.is_homeomorphic(&sfs(1, &[(5, 2), (5, 3)])));
        assert!(!y.is_homeomorphic(&sfs(-1, &[(5, 2), (5, 3)])));
        assert!(y.is_homeomorphic(&y));
        assert!(!y.is_homeomorphic(&sfs(0, &[(2, 1), (-2, 1)])));
        // order of fibers is irrelevant
        assert!(sfs(1, &[(3, 1), (5, 2)]).is_homeomorphic(&sfs(1, &[(5, 2), (3, 1)])));
    }

    #[test]
    fn normalize_examples() {
        let y = sfs(0, &[(5, 2), (-5, 2), (5, 1), (-5, 1)]);
        assert_eq!(
            y.normalize_positive().unwrap(),
            sfs(2, &[(5, 2), (5, 3), (5, 1), (5, 4)])
        );
        assert_eq!(worked().normalize_positive().unwrap(), worked());
        assert_eq!(
            sfs(0, &[(2, 1), (-2, 1)]).normalize_positive().unwrap(),
            sfs(1, &[(2, 1), (2, 1)])
        );
        assert_eq!(
            sfs(-1, &[(2, 1)]).normalize_positive(),
            Err(Error::NegativeEuler)
        );
        assert_eq!(sfs(0, &[]).normalize_positive(), Err(Error::NoFibers));
    }

    #[test]
    fn orientation_reversal() {
        let y = sfs(1, &[(2, 1), (5, 3)]);
        let r = y.reverse_orientation();
        assert_eq!(r, sfs(-1, &[(-2, 1), (-5, 3)]));
        assert_eq!(r.euler_number(), -y.euler_number());
        assert_eq!(r.reverse_orientation(), y);
    }

    #[test]
    fn group_display() {
        assert_eq!(group(1, &[5, 5]).to_string(), "Z + Z/5 + Z/5");
        assert_eq!(group(0, &[]).to_string(), "0");
    }
}
