use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{log_series, FglTable};
use crate::linalg::{lattice_member, ExactMatrix};
use crate::ring::CoeffRing;

/// Whether non-integral values may be used.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Integral,
    Rational,
}

/// The projective-space classes `p_n` for `n <= depth`, with `p_0 = 1`,
/// read off the logarithm `log_F(t) = sum m_n t^(n+1)` as `p_n = (n+1) m_n`.
#[derive(Debug)]
pub struct MishchenkoCache<R: CoeffRing> {
    ring: Arc<R>,
    mode: Mode,
    p: Vec<R::Elem>,
    log_coeffs: Vec<R::Elem>,
    certificates: Vec<Option<Vec<BigInt>>>,
}

impl<R: CoeffRing> Clone for MishchenkoCache<R> {
    fn clone(&self) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            mode: self.mode,
            p: self.p.clone(),
            log_coeffs: self.log_coeffs.clone(),
            certificates: self.certificates.clone(),
        }
    }
}

/// Computes `p_0, ..., p_{n_max}` and their integrality certificates: the
/// integer coordinates of `p_n` against the ring's integral basis.
pub fn mishchenko_elements<R: CoeffRing>(table: &FglTable<R>, n_max: usize, mode: Mode) -> Result<MishchenkoCache<R>> {
    let ring = Arc::clone(table.ring());
    if let Some(top) = ring.truncation() {
        if n_max > top {
            return Err(Error::BeyondTruncation(format!("p_{n_max} has weight above {top}")));
        }
    }
    let log = log_series(table, n_max + 1)?;
    let mut p = Vec::with_capacity(n_max + 1);
    let mut log_coeffs = Vec::with_capacity(n_max + 1);
    let mut certificates = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let m = log.coeff(&[n as u32 + 1]);
        let pn = ring.scale(&m, &BigRational::from_integer(BigInt::from(n + 1)));
        let coords = ring.integral_coordinates(&pn);
        let basis = ExactMatrix::identity(coords.len());
        certificates.push(lattice_member(&basis, &coords)?);
        log_coeffs.push(m);
        p.push(pn);
    }
    Ok(MishchenkoCache { ring, mode, p, log_coeffs, certificates })
}

impl<R: CoeffRing> MishchenkoCache<R> {
    pub fn ring(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Largest `n` with `p_n` available.
    pub fn depth(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, n: usize) -> Result<&R::Elem> {
        self.p.get(n).ok_or(Error::InsufficientDepth { needed: n, available: self.depth() })
    }

    /// `p_n`, refused in integral mode unless certified.
    pub fn p_checked(&self, n: usize) -> Result<&R::Elem> {
        let p = self.p(n)?;
        if self.mode == Mode::Integral && self.certificates[n].is_none() {
            return Err(Error::Uncertified(n));
        }
        Ok(p)
    }

    /// Coefficient `m_n` of `t^(n+1)` in the logarithm.
    pub fn log_coeff(&self, n: usize) -> Result<&R::Elem> {
        self.log_coeffs.get(n).ok_or(Error::InsufficientDepth { needed: n, available: self.depth() })
    }

    /// Integer coordinates of `p_n` on the integral basis, if integral.
    pub fn certificate(&self, n: usize) -> Option<&[BigInt]> {
        self.certificates.get(n)?.as_deref()
    }

    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(Option::is_some)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..=self.depth())
            .map(|n| {
                json!({
                    "n": n,
                    "p": self.ring.elem_to_json(&self.p[n]),
                    "log_coeff": self.ring.elem_to_json(&self.log_coeffs[n]),
                    "certificate": self.certificates[n]
                        .as_ref()
                        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
                })
            })
            .collect();
        json!({ "depth": self.depth(), "elements": entries })
    }
}
