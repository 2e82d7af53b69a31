use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse matrix over the integers. Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "super::entry_list")]
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self::from_dense(
            rows.len(),
            ncols,
            rows.iter().map(|r| r.iter().cloned().map(Into::into).collect()).collect(),
        ))
    }

    pub(crate) fn from_dense(rows: usize, cols: usize, dense: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v);
                }
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!("column {j} has length {}, expected {rows}", col.len())));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        let mut r = vec![BigInt::zero(); self.cols];
        for (&(_, j), v) in self.entries.range((i, 0)..(i + 1, 0)) {
            r[j] = v.clone();
        }
        r
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_default() += a * b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Self { rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] += a * &v[j];
        }
        Ok(out)
    }

    /// Submatrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (new_i, &i) in rows.iter().enumerate() {
            for (&(_, j), v) in self.entries.range((i, 0)..(i + 1, 0)) {
                m.entries.insert((new_i, j), v.clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, Vec<usize>> = cols.iter().enumerate().fold(BTreeMap::new(), |mut acc, (n, &c)| {
            acc.entry(c).or_default().push(n);
            acc
        });
        let mut m = Self::zeros(self.rows, cols.len());
        for (&(i, j), v) in &self.entries {
            if let Some(targets) = pos.get(&j) {
                for &t in targets {
                    m.entries.insert((i, t), v.clone());
                }
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(&(i, j), v)| i == j && v.is_one())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
