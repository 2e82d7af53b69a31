use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Tests whether `v` lies in the integer span of the columns of `basis`.
///
/// Returns integer coordinates `c` with `basis * c = v` when it does. The
/// coordinates are unique when the basis has full column rank.
pub fn lattice_member(basis: &ExactMatrix, v: &[BigRational]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != basis.rows() {
        return Err(Error::Shape(format!("vector of length {} against {} rows", v.len(), basis.rows())));
    }
    if v.iter().any(|x| !x.is_integer()) {
        return Ok(None);
    }
    let target: Vec<BigInt> = v.iter().map(|x| x.to_integer()).collect();
    let snf = smith_normal_form(basis);
    let uv = snf.left_transform.mul_vec(&target)?;
    let mut y = vec![BigInt::zero(); basis.cols()];
    for (i, rhs) in uv.iter().enumerate() {
        let d = snf.diagonal.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
            continue;
        }
        let (q, r) = rhs.div_rem(&d);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    Ok(Some(snf.right_transform.mul_vec(&y)?))
}

/// Rank over the rationals by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..ncols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}
