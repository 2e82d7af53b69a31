//! Smith normal form over the integers.
//!
//! Pivoting picks the nonzero entry of smallest absolute value in the active
//! submatrix, ties broken by (row, col) order, so the output is a pure function
//! of the input matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Invariant factors, `min(rows, cols)` of them; nonzero ones divide their successor.
    pub diagonal: Vec<BigInt>,
    /// Unimodular `U` with `U * A * V = D`.
    pub left_transform: ExactMatrix,
    /// Unimodular `V` with `U * A * V = D`.
    pub right_transform: ExactMatrix,
    /// `U^{-1}`, maintained alongside `U`.
    pub left_inverse: ExactMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `D` with the shape of the original input.
    pub fn diagonal_matrix(&self) -> ExactMatrix {
        let mut d = ExactMatrix::zeros(self.left_transform.rows(), self.right_transform.rows());
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

pub fn smith_normal_form(m: &ExactMatrix) -> SnfResult {
    let mut w = Work::new(m, true);
    w.run();
    w.finish()
}

/// Same as [`smith_normal_form`] but skips maintaining the right transform;
/// the returned `right_transform` is the identity placeholder of the right size.
pub(crate) fn smith_normal_form_left(m: &ExactMatrix) -> SnfResult {
    let mut w = Work::new(m, false);
    w.run();
    w.finish()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    uinv: Vec<Vec<BigInt>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Work {
    fn new(m: &ExactMatrix, track_right: bool) -> Self {
        Self {
            a: m.to_dense(),
            u: identity(m.rows()),
            uinv: identity(m.rows()),
            v: track_right.then(|| identity(m.cols())),
            rows: m.rows(),
            cols: m.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in &mut self.uinv {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(j, k);
            }
        }
    }

    /// row_i += q * row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            if !self.a[t][j].is_zero() {
                let d = q * &self.a[t][j];
                self.a[i][j] += d;
            }
        }
        for j in 0..self.rows {
            if !self.u[t][j].is_zero() {
                let d = q * &self.u[t][j];
                self.u[i][j] += d;
            }
        }
        // U^{-1} picks up the inverse operation on the right: col_t -= q * col_i.
        for row in &mut self.uinv {
            if !row[i].is_zero() {
                let d = q * &row[i];
                row[t] -= d;
            }
        }
    }

    /// col_j += q * col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[t].is_zero() {
                let d = q * &row[t];
                row[j] += d;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[t].is_zero() {
                    let d = q * &row[t];
                    row[j] += d;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        for x in &mut self.u[i] {
            *x = -&*x;
        }
        for row in &mut self.uinv {
            row[i] = -&row[i];
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&p);
                    self.add_row(i, t, &-q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&p);
                    self.add_col(j, t, &-q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                // Divisibility of the remaining block by the pivot.
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_zero() && !self.a[i][j].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn finish(self) -> SnfResult {
        let steps = self.rows.min(self.cols);
        let diagonal = (0..steps).map(|t| self.a[t][t].clone()).collect();
        SnfResult {
            diagonal,
            left_transform: ExactMatrix::from_dense(self.rows, self.rows, self.u),
            right_transform: match self.v {
                Some(v) => ExactMatrix::from_dense(self.cols, self.cols, v),
                None => ExactMatrix::identity(self.cols),
            },
            left_inverse: ExactMatrix::from_dense(self.rows, self.rows, self.uinv),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &ExactMatrix, r: &SnfResult) {
        let d = r.left_transform.mul(a).unwrap().mul(&r.right_transform).unwrap();
        assert_eq!(d, r.diagonal_matrix());
        assert!(r.left_transform.mul(&r.left_inverse).unwrap().is_identity());
        let nonzero: Vec<_> = r.diagonal.iter().filter(|d| !d.is_zero()).collect();
        for w in nonzero.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
    }

    #[test]
    fn one_by_one() {
        let a = m(&[vec![6]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, ints(&[6]));
        assert!(r.left_transform.is_identity());
        assert!(r.right_transform.is_identity());
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, ints(&[1, 6]));
        check(&a, &r);
    }

    #[test]
    fn zero_matrix() {
        let a = ExactMatrix::zeros(2, 2);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, ints(&[0, 0]));
        check(&a, &r);
    }

    #[test]
    fn empty_matrix() {
        let r = smith_normal_form(&ExactMatrix::zeros(0, 3));
        assert!(r.diagonal.is_empty());
    }

    #[test]
    fn rectangular_with_torsion() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, ints(&[2, 6, 12]));
        check(&a, &r);
        let b = m(&[vec![4, 6], vec![6, 9], vec![2, 3]]);
        let r = smith_normal_form(&b);
        assert_eq!(r.diagonal, ints(&[1, 0]));
        check(&b, &r);
    }

    #[test]
    fn left_only_agrees_on_left_data() {
        let a = m(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]]);
        let full = smith_normal_form(&a);
        let left = smith_normal_form_left(&a);
        assert_eq!(full.diagonal, left.diagonal);
        assert_eq!(full.left_transform, left.left_transform);
    }
}
