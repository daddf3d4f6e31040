//! Exact rationals and negative continued fractions.
//!
//! A rational `r > 1` has a unique expansion
//! `r = a1 - 1/(a2 - 1/(... - 1/an))` with every `ai >= 2`. These expansions
//! give the arm weights of star-shaped plumbings.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Like [`Rational::new`] but refuses inputs that are not already in lowest terms.
    pub fn new_reduced(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !num.gcd(&den).is_one() {
            return Err(Error::NotReduced(format!("{num}/{den}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_part(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! bin_op {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

bin_op!(Add, add);
bin_op!(Sub, sub);
bin_op!(Mul, mul);
bin_op!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Negative continued fraction `[a1, ..., an]^-`, every term `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NegCF {
    terms: Vec<BigInt>,
}

impl NegCF {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if terms.is_empty() || terms.iter().any(|t| t < &two) {
            return Err(Error::BadContinuedFraction);
        }
        Ok(NegCF { terms })
    }

    pub fn from_i64(terms: &[i64]) -> Result<Self> {
        NegCF::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as machine integers, for building Gram matrices.
    pub fn terms_i64(&self) -> Result<Vec<i64>> {
        self.terms
            .iter()
            .map(|t| {
                t.to_i64()
                    .ok_or_else(|| Error::Overflow(format!("arm weight {t}")))
            })
            .collect()
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]^-")
    }
}

pub fn neg_cf_expand(r: &Rational) -> Result<NegCF> {
    if r <= &Rational::one() {
        return Err(Error::NotGreaterThanOne(r.to_string()));
    }
    let mut terms = Vec::new();
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    loop {
        // a = ceil(p/q); the remainder a - p/q lies in [0, 1)
        let a = (&p + &q - BigInt::one()).div_floor(&q);
        let rem = &a * &q - &p;
        terms.push(a);
        if rem.is_zero() {
            break;
        }
        p = std::mem::replace(&mut q, rem);
    }
    Ok(NegCF { terms })
}

pub fn neg_cf_eval(cf: &NegCF) -> Rational {
    let mut acc = Rational::from_int(cf.terms.last().expect("nonempty").clone());
    for a in cf.terms.iter().rev().skip(1) {
        acc = Rational::from_int(a.clone()) - acc.recip();
    }
    acc
}

/// The sequence `b1, ..., b(n+1)` with `b(n+1) = 0`, `bn = 1` and
/// `b(k-1) = ak * bk - b(k+1)`. `b1` is the denominator of the value.
pub fn denominator_sequence(cf: &NegCF) -> Vec<BigInt> {
    let n = cf.terms.len();
    let mut b = vec![BigInt::zero(); n + 1];
    b[n - 1] = BigInt::one();
    for k in (1..n).rev() {
        // 0-based: b[k-1] = a[k] * b[k] - b[k+1]
        b[k - 1] = &cf.terms[k] * &b[k] - &b[k + 1];
    }
    b
}
