//! Necessary conditions for a link to be a cross-section of one unknotted
//! 2-sphere: pairs of partitions of the components, one for each side of
//! the equator, whose classes could bound disjoint planar surfaces.
//!
//! Only the consequences that can be checked from linking numbers and
//! known sliceness of single components are enforced, so an empty result
//! rules a quasi-orientation out but a non-empty one proves nothing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `{"n": int, "lk": [[int]], "slice": [bool]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkData {
    pub n: usize,
    pub lk: Vec<Vec<i64>>,
    pub slice: Vec<bool>,
}

impl LinkData {
    pub fn validate(&self) -> Result<()> {
        if self.lk.len() != self.n || self.lk.iter().any(|r| r.len() != self.n) {
            return Err(Error::LinkData(format!("lk must be {0}x{0}", self.n)));
        }
        if self.slice.len() != self.n {
            return Err(Error::LinkData(format!("slice needs {} flags", self.n)));
        }
        for i in 0..self.n {
            if self.lk[i][i] != 0 {
                return Err(Error::LinkData("lk diagonal must vanish".into()));
            }
            for j in 0..i {
                if self.lk[i][j] != self.lk[j][i] {
                    return Err(Error::LinkData("lk must be symmetric".into()));
                }
            }
        }
        Ok(())
    }

    /// Linking numbers after reorienting component `i` by `signs[i]`.
    pub fn oriented(&self, signs: &[i8]) -> LinkData {
        let lk = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.lk[i][j] * (signs[i] * signs[j]) as i64)
                    .collect()
            })
            .collect();
        LinkData {
            n: self.n,
            lk,
            slice: self.slice.clone(),
        }
    }
}

/// Classes are lists of component labels `1..=n`, both sorted.
pub type Partition = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PartitionPair {
    pub p1: Partition,
    pub p2: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiOrientation {
    /// first entry is always `+1`
    pub signs: Vec<i8>,
    pub partitions: Vec<PartitionPair>,
}

/// All set partitions of `0..n`, classes in order of their least element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, n: usize, classes: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(classes.clone());
            return;
        }
        for c in 0..classes.len() {
            classes[c].push(i);
            rec(i + 1, n, classes, out);
            classes[c].pop();
        }
        classes.push(vec![i]);
        rec(i + 1, n, classes, out);
        classes.pop();
    }
    rec(0, n, &mut classes, &mut out);
    out
}

/// Conditions checkable on one side: singletons are slice, distinct classes
/// have total linking number zero.
fn side_ok(data: &LinkData, p: &[Vec<usize>]) -> bool {
    let singletons_slice = p.iter().all(|c| c.len() != 1 || data.slice[c[0]]);
    let unlinked = (0..p.len()).all(|a| {
        (0..a).all(|b| {
            p[a].iter()
                .map(|&i| p[b].iter().map(|&j| data.lk[i][j]).sum::<i64>())
                .sum::<i64>()
                == 0
        })
    });
    singletons_slice && unlinked
}

/// The incidence multigraph has `n + 1` vertices and `n` edges, so it is a
/// tree exactly when it is connected.
fn incidence_is_tree(n: usize, p1: &[Vec<usize>], p2: &[Vec<usize>]) -> bool {
    if p1.len() + p2.len() != n + 1 {
        return false;
    }
    let class_of = |p: &[Vec<usize>]| {
        let mut v = vec![0; n];
        for (k, c) in p.iter().enumerate() {
            for &i in c {
                v[i] = k;
            }
        }
        v
    };
    let (c1, c2) = (class_of(p1), class_of(p2));
    let mut parent: Vec<usize> = (0..p1.len() + p2.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut merges = 0;
    for i in 0..n {
        let (a, b) = (
            find(&mut parent, c1[i]),
            find(&mut parent, p1.len() + c2[i]),
        );
        if a != b {
            parent[a] = b;
            merges += 1;
        }
    }
    merges == n
}

fn one_based(p: &[Vec<usize>]) -> Partition {
    p.iter()
        .map(|c| c.iter().map(|i| i + 1).collect())
        .collect()
}

/// Set partitions are enumerated exhaustively, so keep `n` small.
pub const MAX_COMPONENTS: usize = 10;

/// Unordered pairs passing every implemented condition for the given
/// orientation (a `±1` per component).
pub fn admissible_partitions(data: &LinkData, signs: &[i8]) -> Result<Vec<PartitionPair>> {
    data.validate()?;
    if data.n > MAX_COMPONENTS {
        return Err(Error::LinkData(format!(
            "at most {MAX_COMPONENTS} components"
        )));
    }
    if signs.len() != data.n || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::LinkData(format!(
            "orientation needs {} signs of ±1",
            data.n
        )));
    }
    let data = data.oriented(signs);
    let n = data.n;
    let sides: Vec<Vec<Vec<usize>>> = set_partitions(n)
        .into_iter()
        .filter(|p| side_ok(&data, p))
        .collect();
    let mut out = Vec::new();
    for (a, p1) in sides.iter().enumerate() {
        for p2 in &sides[a..] {
            if incidence_is_tree(n, p1, p2) {
                let (x, y) = (one_based(p1), one_based(p2));
                out.push(if x <= y {
                    PartitionPair { p1: x, p2: y }
                } else {
                    PartitionPair { p1: y, p2: x }
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Quasi-orientations (signs up to a global flip, first sign `+1`) that
/// admit at least one partition pair.
pub fn weak_ds_orientation_filter(data: &LinkData) -> Result<Vec<QuasiOrientation>> {
    data.validate()?;
    if data.n < 2 {
        return Err(Error::LinkData("need at least two components".into()));
    }
    let mut out = Vec::new();
    for mask in 0..1u64 << (data.n - 1) {
        let signs: Vec<i8> = std::iter::once(1)
            .chain((0..data.n - 1).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }))
            .collect();
        let partitions = admissible_partitions(data, &signs)?;
        if !partitions.is_empty() {
            out.push(QuasiOrientation { signs, partitions });
        }
    }
    Ok(out)
}
