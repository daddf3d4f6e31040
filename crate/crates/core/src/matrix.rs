//! Dense integer matrices and the `{"n", "entries"}` JSON schema.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `Aᵀ A`.
    pub fn gram(&self) -> IntMatrix {
        self.transpose().mul(self).expect("shapes agree")
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Drop row and column `k`.
    pub fn minor(&self, k: usize) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let mut out = IntMatrix::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Square matrix on the wire: `{"n": int, "entries": [row-major ints]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<i64>,
}

impl TryFrom<MatrixJson> for IntMatrix {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<IntMatrix> {
        IntMatrix::from_row_major(m.n, m.n, m.entries)
    }
}

impl TryFrom<&IntMatrix> for MatrixJson {
    type Error = Error;
    fn try_from(m: &IntMatrix) -> Result<MatrixJson> {
        if !m.is_square() {
            return Err(Error::Dimension(
                "matrix JSON carries square matrices only".into(),
            ));
        }
        Ok(MatrixJson {
            n: m.rows,
            entries: m.entries.clone(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite { nullity: usize },
    Indefinite,
}

/// Exact symmetric elimination over the rationals. A zero pivot is only
/// admissible if its whole remaining row vanishes; it then counts towards
/// the nullity.
pub fn semidefiniteness(q: &IntMatrix) -> Result<Definiteness> {
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = q.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(q.get(i, j).into()))
                .collect()
        })
        .collect();
    let mut nullity = 0;
    for k in 0..n {
        let pivot = m[k][k].clone();
        if pivot.is_negative() {
            return Ok(Definiteness::Indefinite);
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !m[k][j].is_zero()) {
                return Ok(Definiteness::Indefinite);
            }
            nullity += 1;
            continue;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    Ok(if nullity == 0 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefinite { nullity }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(
            semidefiniteness(&IntMatrix::identity(3)).unwrap(),
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            semidefiniteness(&m(&[&[0, 1], &[1, 0]])).unwrap(),
            Definiteness::Indefinite
        );
        assert_eq!(
            semidefiniteness(&m(&[&[1, -1], &[-1, 1]])).unwrap(),
            Definiteness::PositiveSemidefinite { nullity: 1 }
        );
        assert_eq!(
            semidefiniteness(&m(&[&[-1]])).unwrap(),
            Definiteness::Indefinite
        );
        assert_eq!(
            semidefiniteness(&m(&[&[0, 0], &[0, 0]])).unwrap(),
            Definiteness::PositiveSemidefinite { nullity: 2 }
        );
        assert!(semidefiniteness(&m(&[&[1, 2], &[0, 1]])).is_err());
    }

    #[test]
    fn gram_and_json() {
        let a = m(&[&[1, 1, 0], &[-1, 0, 1]]);
        assert_eq!(a.gram(), m(&[&[2, 1, -1], &[1, 1, 0], &[-1, 0, 1]]));
        let j: MatrixJson = (&a.gram()).try_into().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"n":3,"entries":[2,1,-1,1,1,0,-1,0,1]}"#);
        let back: IntMatrix = serde_json::from_str::<MatrixJson>(&text)
            .unwrap()
            .try_into()
            .unwrap();
        assert_eq!(back, a.gram());
        assert!(IntMatrix::try_from(MatrixJson {
            n: 2,
            entries: vec![1, 2, 3]
        })
        .is_err());
    }

    #[test]
    fn minor_drops_row_and_column() {
        let q = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(q.minor(1), m(&[&[1, 3], &[7, 9]]));
    }
}
