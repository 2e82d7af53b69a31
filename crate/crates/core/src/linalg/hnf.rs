//! Row-style Hermite normal form: `H = T * A` with `T` unimodular, `H` in row
//! echelon form, positive pivots, and entries above each pivot reduced into
//! `[0, pivot)`. Zero rows are moved to the bottom.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: ExactMatrix,
    pub transform: ExactMatrix,
    pub transform_inverse: ExactMatrix,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(m: &ExactMatrix) -> HnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.to_dense();
    let id = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    };
    let mut t = id(rows);
    let mut tinv = id(rows);

    // row_i += q * row_k, mirrored on T^{-1} as col_k -= q * col_i
    let add_row = |a: &mut Vec<Vec<BigInt>>,
                   t: &mut Vec<Vec<BigInt>>,
                   tinv: &mut Vec<Vec<BigInt>>,
                   i: usize,
                   k: usize,
                   q: &BigInt| {
        for j in 0..cols {
            if !a[k][j].is_zero() {
                let d = q * &a[k][j];
                a[i][j] += d;
            }
        }
        for j in 0..rows {
            if !t[k][j].is_zero() {
                let d = q * &t[k][j];
                t[i][j] += d;
            }
        }
        for row in tinv.iter_mut() {
            if !row[i].is_zero() {
                let d = q * &row[i];
                row[k] -= d;
            }
        }
    };
    let swap = |a: &mut Vec<Vec<BigInt>>, t: &mut Vec<Vec<BigInt>>, tinv: &mut Vec<Vec<BigInt>>, i: usize, k: usize| {
        if i != k {
            a.swap(i, k);
            t.swap(i, k);
            for row in tinv.iter_mut() {
                row.swap(i, k);
            }
        }
    };

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..rows {
                if !a[i][c].is_zero() {
                    let ax = a[i][c].abs();
                    if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                        best = Some((i, ax));
                    }
                }
            }
            let Some((pi, _)) = best else { break };
            swap(&mut a, &mut t, &mut tinv, r, pi);
            let p = a[r][c].clone();
            let mut done = true;
            for i in r + 1..rows {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&p);
                    add_row(&mut a, &mut t, &mut tinv, i, r, &-q);
                    done &= a[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in &mut a[r] {
                *x = -&*x;
            }
            for x in &mut t[r] {
                *x = -&*x;
            }
            for row in &mut tinv {
                row[r] = -&row[r];
            }
        }
        let p = a[r][c].clone();
        for k in 0..r {
            if !a[k][c].is_zero() {
                let q = a[k][c].div_floor(&p);
                add_row(&mut a, &mut t, &mut tinv, k, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }

    HnfResult {
        h: ExactMatrix::from_dense(rows, cols, a),
        transform: ExactMatrix::from_dense(rows, rows, t),
        transform_inverse: ExactMatrix::from_dense(rows, rows, tinv),
        pivots,
    }
}
