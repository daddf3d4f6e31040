//! Montesinos and pretzel links, their components and double branched
//! covers, and the double-slice verdicts that can be read off them.
//!
//! Rational tangles are stacked top to bottom, the south endpoints of each
//! tangle joined to the north endpoints of the next. The `e` half-twists sit
//! in one more box at the bottom, and the closure joins the west (east)
//! endpoints of the top box to the west (east) endpoints of the bottom box.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::classifier::{embeds_in_ZHS1xS3, EmbedVerdict, EmbedWitness};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::seifert::SeifertInvariants;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MontesinosLink {
    e: BigInt,
    tangles: Vec<Rational>,
}

impl MontesinosLink {
    pub fn new(e: impl Into<BigInt>, tangles: Vec<Rational>) -> Self {
        MontesinosLink {
            e: e.into(),
            tangles,
        }
    }

    /// `P(a1, ..., an) = M(0; a1/1, ..., an/1)`.
    pub fn pretzel(strands: &[i64]) -> Self {
        MontesinosLink::new(0, strands.iter().map(|&a| Rational::from(a)).collect())
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn tangles(&self) -> &[Rational] {
        &self.tangles
    }
}

impl fmt::Display for MontesinosLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.e)?;
        for (i, t) in self.tangles.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, t)?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NW,
    NE,
    SW,
    SE,
}

/// How a rational tangle connects its four endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndpointPairing {
    /// NW–NE and SW–SE
    Horizontal,
    /// NW–SW and NE–SE
    Vertical,
    /// NW–SE and NE–SW
    Diagonal,
}

impl EndpointPairing {
    pub fn pairs(self) -> [(Endpoint, Endpoint); 2] {
        use Endpoint::*;
        match self {
            EndpointPairing::Horizontal => [(NW, NE), (SW, SE)],
            EndpointPairing::Vertical => [(NW, SW), (NE, SE)],
            EndpointPairing::Diagonal => [(NW, SE), (NE, SW)],
        }
    }
}

/// Pairing of the tangle `p/q`; `q = 0` is allowed for the `∞` tangle.
pub fn tangle_pairing_pq(p: &BigInt, q: &BigInt) -> Result<EndpointPairing> {
    match (p.is_even(), q.is_even()) {
        (true, true) => Err(Error::BothEven(format!("{p}/{q}"))),
        (true, false) => Ok(EndpointPairing::Horizontal),
        (false, true) => Ok(EndpointPairing::Vertical),
        (false, false) => Ok(EndpointPairing::Diagonal),
    }
}

pub fn tangle_pairing(r: &Rational) -> EndpointPairing {
    tangle_pairing_pq(r.numer(), r.denom()).expect("reduced fraction")
}

/// The box of `e` half-twists, as the tangle `1/e`.
pub fn twist_box_pairing(e: &BigInt) -> EndpointPairing {
    tangle_pairing_pq(&BigInt::one(), e).expect("numerator is odd")
}

fn endpoint_index(box_index: usize, p: Endpoint) -> usize {
    4 * box_index + p as usize
}

pub fn component_count(m: &MontesinosLink) -> usize {
    let mut boxes: Vec<EndpointPairing> = m.tangles.iter().map(tangle_pairing).collect();
    boxes.push(twist_box_pairing(&m.e));
    let n = boxes.len();
    let mut uf = UnionFind::new(4 * n);
    for (i, pairing) in boxes.iter().enumerate() {
        for (a, b) in pairing.pairs() {
            uf.union(endpoint_index(i, a), endpoint_index(i, b));
        }
        if i + 1 < n {
            uf.union(
                endpoint_index(i, Endpoint::SW),
                endpoint_index(i + 1, Endpoint::NW),
            );
            uf.union(
                endpoint_index(i, Endpoint::SE),
                endpoint_index(i + 1, Endpoint::NE),
            );
        }
    }
    uf.union(
        endpoint_index(0, Endpoint::NW),
        endpoint_index(n - 1, Endpoint::SW),
    );
    uf.union(
        endpoint_index(0, Endpoint::NE),
        endpoint_index(n - 1, Endpoint::SE),
    );
    uf.count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// `S2(e; p1/q1, ...)`. Tangles `±1/q` are integral and fold into the framing;
/// a `0` tangle has no Seifert description and is rejected.
pub fn double_branched_cover(m: &MontesinosLink) -> Result<SeifertInvariants> {
    let mut e = m.e.clone();
    let mut coeffs = Vec::with_capacity(m.tangles.len());
    for t in &m.tangles {
        if t.is_zero() {
            return Err(Error::DegenerateCoefficient(t.to_string()));
        }
        if t.numer().abs().is_one() {
            // e - q/p with p = ±1
            e -= t.recip().floor();
        } else {
            coeffs.push(t.clone());
        }
    }
    SeifertInvariants::new(e, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakDs {
    /// weakly doubly slice with both quasi-orientations
    YesBoth,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongDs {
    Yes,
    No { witness: EmbedWitness },
    Unknown,
}

/// `(r1, ..., rk, -rk, ..., -r1)` with `e = 0` and at most one even numerator.
pub fn weak_ds_certificate(m: &MontesinosLink) -> WeakDs {
    let t = &m.tangles;
    let k = t.len() / 2;
    let palindrome =
        !t.is_empty() && t.len() % 2 == 0 && (0..k).all(|i| t[t.len() - 1 - i] == -&t[i]);
    let evens = t[..k].iter().filter(|r| r.numer().is_even()).count();
    if m.e.is_zero() && palindrome && evens <= 1 {
        WeakDs::YesBoth
    } else {
        WeakDs::Unknown
    }
}

/// `e = 0`, odd numerator, and the tangles are `r` and `-r` equally often.
pub fn mutant_weak_ds(m: &MontesinosLink) -> WeakDs {
    let Some(r) = m.tangles.iter().find(|t| t.is_positive()) else {
        return WeakDs::Unknown;
    };
    let neg = -r;
    let plus = m.tangles.iter().filter(|t| *t == r).count();
    let minus = m.tangles.iter().filter(|t| **t == neg).count();
    if m.e.is_zero() && r.numer().is_odd() && plus == minus && plus + minus == m.tangles.len() {
        WeakDs::YesBoth
    } else {
        WeakDs::Unknown
    }
}

/// `M(0; r, -r, r, -r, ...)` with odd numerator.
fn alternating_pair_form(m: &MontesinosLink) -> bool {
    let t = &m.tangles;
    m.e.is_zero()
        && !t.is_empty()
        && t.len() % 2 == 0
        && t[0].numer().is_odd()
        && t.chunks(2).all(|c| c[0] == t[0] && c[1] == -&t[0])
}

pub fn strong_ds_verdict(m: &MontesinosLink) -> StrongDs {
    if component_count(m) == 2 {
        if let Ok(y) = double_branched_cover(m) {
            if let EmbedVerdict::No { witness } = embeds_in_ZHS1xS3(&y) {
                return StrongDs::No { witness };
            }
        }
    }
    if alternating_pair_form(m) {
        StrongDs::Yes
    } else {
        StrongDs::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceVerdict {
    pub components: usize,
    /// one entry per quasi-orientation
    pub weak_ds: Vec<WeakDs>,
    pub strong_ds: StrongDs,
    pub reasons: Vec<String>,
}

pub fn slice_verdict(m: &MontesinosLink) -> SliceVerdict {
    let components = component_count(m);
    let mut reasons = Vec::new();
    let mut weak = WeakDs::Unknown;
    if weak_ds_certificate(m) == WeakDs::YesBoth {
        weak = WeakDs::YesBoth;
        reasons.push("palindromic tangles r, -r with at most one even numerator".to_string());
    }
    if mutant_weak_ds(m) == WeakDs::YesBoth {
        weak = WeakDs::YesBoth;
        reasons.push("mutant of M(0; r, -r, ..., r, -r) with odd numerator".to_string());
    }
    let strong_ds = strong_ds_verdict(m);
    match &strong_ds {
        StrongDs::Yes => reasons.push("alternating pairs r, -r with odd numerator".to_string()),
        StrongDs::No { witness } => reasons.push(format!(
            "double branched cover does not embed in a ZH(S1xS3): {witness}"
        )),
        StrongDs::Unknown => {}
    }
    let orientations = 1usize << components.saturating_sub(1).min(16);
    SliceVerdict {
        components,
        weak_ds: vec![weak; orientations],
        strong_ds,
        reasons,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PretzelVerdict {
    /// slice, and weakly doubly slice with both quasi-orientations
    SliceWeakDsBoth,
    NotSlice,
}

/// Rotations and reflections of the strand list.
fn dihedral_images(s: [i64; 4]) -> impl Iterator<Item = [i64; 4]> {
    (0..4).flat_map(move |r| {
        let rot = [s[r], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]];
        let rev = [rot[3], rot[2], rot[1], rot[0]];
        [rot, rev]
    })
}

pub fn classify_4strand_pretzel(strands: [i64; 4]) -> Result<PretzelVerdict> {
    let n = component_count(&MontesinosLink::pretzel(&strands));
    if n != 2 {
        return Err(Error::NotTwoComponents(n));
    }
    let slice = dihedral_images(strands).any(|[a, b, c, d]| {
        c == -b && d == -a && [a, b].iter().filter(|x| *x % 2 == 0).count() <= 1
    });
    Ok(if slice {
        PretzelVerdict::SliceWeakDsBoth
    } else {
        PretzelVerdict::NotSlice
    })
}
