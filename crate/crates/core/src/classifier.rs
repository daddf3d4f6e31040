//! Deciding when a Seifert space over S² embeds in an integer homology
//! S¹×S³ with H₁-surjection, and when it bounds a rational homology S¹×B³.
//!
//! Both questions reduce to matching the coefficients, taken as `q/p mod 1`,
//! into complementary pairs `{r, 1 - r}` over a common numerator. Embedding
//! additionally needs the numerators of distinct pair classes to be coprime.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::rational::Rational;
use crate::seifert::SeifertInvariants;

/// A class of cancelling pairs `{p/q, -p/q}` with representative `p/q >= 2`.
/// The pair `{p/(p-q), -p/(p-q)}` belongs to the same class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairClass {
    pub p: BigInt,
    pub q: BigInt,
    pub multiplicity: usize,
}

impl PairClass {
    pub fn representative(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q > 0")
    }

    /// Whether a coefficient `c` (any presentation) belongs to this class.
    pub fn contains(&self, c: &Rational) -> bool {
        class_key(c) == (self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{0}, -{0}}}^{1}",
            self.representative(),
            self.multiplicity
        )
    }
}

/// `(p, q)` with `q/p ≡ ±(1/c) mod 1`, `p > 0` and `0 < q <= p/2`.
pub fn class_key(c: &Rational) -> (BigInt, BigInt) {
    let r = c.recip().fract_part();
    let p = r.denom().clone();
    let q = r.numer().clone();
    let other = &p - &q;
    let q = q.min(other);
    (p, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairUpFailure {
    NonZeroEuler(Rational),
    /// A coefficient with no complementary partner.
    Unpaired(Rational),
}

/// Group the coefficients of `y` into classes of complementary pairs.
/// Classes come out sorted by `(p, q)`.
pub fn pair_up(y: &SeifertInvariants) -> Result<Vec<PairClass>, PairUpFailure> {
    let eps = y.euler_number();
    if !eps.is_zero() {
        return Err(PairUpFailure::NonZeroEuler(eps));
    }
    // (p, q) -> (coefficients with frac q/p, coefficients with frac (p-q)/p)
    let mut sides: BTreeMap<(BigInt, BigInt), (Vec<&Rational>, Vec<&Rational>)> = BTreeMap::new();
    for c in y.coeffs() {
        let r = c.recip().fract_part();
        let key = class_key(c);
        let entry = sides.entry(key.clone()).or_default();
        if r.numer() == &key.1 {
            entry.0.push(c);
        } else {
            entry.1.push(c);
        }
    }
    let mut classes = Vec::with_capacity(sides.len());
    for ((p, q), (a, b)) in sides {
        let self_dual = &q * 2 == p;
        let multiplicity = if self_dual {
            if a.len() % 2 == 1 {
                return Err(PairUpFailure::Unpaired(a[a.len() - 1].clone()));
            }
            a.len() / 2
        } else {
            if a.len() != b.len() {
                let odd = if a.len() > b.len() {
                    a[b.len()]
                } else {
                    b[a.len()]
                };
                return Err(PairUpFailure::Unpaired(odd.clone()));
            }
            a.len()
        };
        classes.push(PairClass { p, q, multiplicity });
    }
    Ok(classes)
}

/// Rational homology S¹×B³ boundary test: `eps = 0` and every coefficient paired.
#[allow(non_snake_case)]
pub fn bounds_QHS1xB3(y: &SeifertInvariants) -> bool {
    pair_up(y).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedWitness {
    NonZeroEuler(Rational),
    Unpaired(Rational),
    /// Two distinct pair classes whose numerators share a factor.
    CommonFactor {
        first: Rational,
        second: Rational,
        gcd: BigInt,
    },
}

impl fmt::Display for EmbedWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedWitness::NonZeroEuler(e) => write!(f, "eps = {e} != 0"),
            EmbedWitness::Unpaired(c) => write!(f, "unpaired coefficient {c}"),
            EmbedWitness::CommonFactor { first, second, gcd } => {
                write!(f, "classes {first} and {second} share gcd {gcd}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedVerdict {
    /// Pairwise coprime classes; `S2(0; {p/q, -p/q}^m, ...)`.
    Yes {
        classes: Vec<PairClass>,
    },
    No {
        witness: EmbedWitness,
    },
}

impl EmbedVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EmbedVerdict::Yes { .. })
    }
}

/// Normal form `S2(0; {p1/q1, -p1/q1}^{n1}, ...)` of a list of classes.
pub fn paired_normal_form(classes: &[PairClass]) -> SeifertInvariants {
    let mut coeffs = Vec::new();
    for c in classes {
        let r = c.representative();
        for _ in 0..c.multiplicity {
            coeffs.push(r.clone());
            coeffs.push(-&r);
        }
    }
    SeifertInvariants::new(0, coeffs).expect("class numerators exceed 1")
}

#[allow(non_snake_case)]
pub fn embeds_in_ZHS1xS3(y: &SeifertInvariants) -> EmbedVerdict {
    let classes = match pair_up(y) {
        Ok(c) => c,
        Err(PairUpFailure::NonZeroEuler(e)) => {
            return EmbedVerdict::No {
                witness: EmbedWitness::NonZeroEuler(e),
            }
        }
        Err(PairUpFailure::Unpaired(c)) => {
            return EmbedVerdict::No {
                witness: EmbedWitness::Unpaired(c),
            }
        }
    };
    if let Some((i, j, g)) = first_common_factor(&classes) {
        return EmbedVerdict::No {
            witness: EmbedWitness::CommonFactor {
                first: classes[i].representative(),
                second: classes[j].representative(),
                gcd: g,
            },
        };
    }
    EmbedVerdict::Yes { classes }
}

/// First pair of class indices `i < j` with `gcd(p_i, p_j) > 1`.
pub fn first_common_factor(classes: &[PairClass]) -> Option<(usize, usize, BigInt)> {
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let g = classes[i].p.gcd(&classes[j].p);
            if !g.is_one() {
                return Some((i, j, g));
            }
        }
    }
    None
}

/// Undo expansions: delete cancelling pairs while at least one pair of
/// each class remains. The presentation of the surviving coefficients is
/// kept and the framing absorbs the integer sum of each deleted pair.
pub fn expansion_reduce(y: &SeifertInvariants) -> (SeifertInvariants, usize) {
    let mut groups: BTreeMap<(BigInt, BigInt), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, c) in y.coeffs().iter().enumerate() {
        let key = class_key(c);
        let r = c.recip().fract_part();
        let entry = groups.entry(key.clone()).or_default();
        if r.numer() == &key.1 {
            entry.0.push(i);
        } else {
            entry.1.push(i);
        }
    }
    let mut dropped = vec![false; y.coeffs().len()];
    let mut steps = 0;
    for ((p, q), (a, b)) in groups {
        if &q * 2 == p {
            let pairs = a.len() / 2;
            if pairs >= 2 {
                for &i in a.iter().rev().take(2 * (pairs - 1)) {
                    dropped[i] = true;
                }
                steps += pairs - 1;
            }
        } else {
            let pairs = a.len().min(b.len());
            if pairs >= 2 {
                for &i in a
                    .iter()
                    .rev()
                    .take(pairs - 1)
                    .chain(b.iter().rev().take(pairs - 1))
                {
                    dropped[i] = true;
                }
                steps += pairs - 1;
            }
        }
    }
    let removed: Rational = y
        .coeffs()
        .iter()
        .zip(&dropped)
        .filter(|(_, &d)| d)
        .map(|(c, _)| c.recip())
        .sum();
    debug_assert!(removed.is_integer());
    let e = y.e() - removed.floor();
    let coeffs = y
        .coeffs()
        .iter()
        .zip(&dropped)
        .filter(|(_, &d)| !d)
        .map(|(c, _)| c.clone())
        .collect();
    (
        SeifertInvariants::new(e, coeffs).expect("subset of valid coefficients"),
        steps,
    )
}
