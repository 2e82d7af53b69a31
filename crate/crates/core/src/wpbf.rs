//! The projective bundle decomposition over the point:
//! `(α_0, ..., α_n) -> sum t^i α_i` and back.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lbmodule::{LbElement, PsiSeries};
use crate::lazard::MishchenkoCache;
use crate::proj::ProjRing;
use crate::ring::{ensure_compatible, CoeffRing};
use crate::series::TruncatedSeries;

/// `(α_0, ..., α_n)`, exactly `n + 1` entries.
pub struct WpbfDecomposition<R: CoeffRing> {
    ring: Arc<R>,
    alphas: Vec<R::Elem>,
}

impl<R: CoeffRing> Clone for WpbfDecomposition<R> {
    fn clone(&self) -> Self {
        Self { ring: Arc::clone(&self.ring), alphas: self.alphas.clone() }
    }
}

impl<R: CoeffRing> PartialEq for WpbfDecomposition<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alphas == other.alphas
    }
}

impl<R: CoeffRing> std::fmt::Debug for WpbfDecomposition<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.alphas.iter().map(|a| self.ring.format(a))).finish()
    }
}

impl<R: CoeffRing> WpbfDecomposition<R> {
    pub fn new(ring: Arc<R>, alphas: Vec<R::Elem>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, got: 0 });
        }
        Ok(Self { ring, alphas })
    }

    pub fn n(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn alphas(&self) -> &[R::Elem] {
        &self.alphas
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n(), "alphas": self.alphas.iter().map(|a| self.ring.elem_to_json(a)).collect::<Vec<_>>() })
    }

    pub fn from_json(ring: Arc<R>, v: &Value) -> Result<Self> {
        let alphas = v.get("alphas").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing \"alphas\"".into()))?;
        let alphas: Vec<R::Elem> = alphas.iter().map(|a| ring.elem_from_json(a)).collect::<Result<_>>()?;
        if let Some(n) = v.get("n").and_then(Value::as_u64) {
            if alphas.len() != n as usize + 1 {
                return Err(Error::LengthMismatch { expected: n as usize + 1, got: alphas.len() });
            }
        }
        Self::new(ring, alphas)
    }
}

fn single_cap<R: CoeffRing>(r: &ProjRing<R>) -> Result<usize> {
    match r.caps() {
        [n] => Ok(*n),
        caps => Err(Error::Shape(format!("expected a single projective factor, got caps {caps:?}"))),
    }
}

/// `sum_i t^i α_i` in `B*(P^n)`.
pub fn proj_map<R: CoeffRing>(d: &WpbfDecomposition<R>, r: &ProjRing<R>) -> Result<TruncatedSeries<R>> {
    ensure_compatible(d.ring.as_ref(), r.ring().as_ref())?;
    let n = single_cap(r)?;
    if d.alphas.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, got: d.alphas.len() });
    }
    let terms = d.alphas.iter().enumerate().map(|(i, a)| (vec![i as u32], a.clone()));
    Ok(TruncatedSeries::from_terms(Arc::clone(r.ring()), r.space().clone(), terms))
}

/// `sum_a c_a t^a -> sum_a c_a e_(n-a)`: the linear subspace `P^(n-a)`
/// carrying the restriction of `O(1)`.
pub fn iota<R: CoeffRing>(e: &TruncatedSeries<R>, r: &ProjRing<R>) -> Result<LbElement<R>> {
    r.check(e)?;
    let n = single_cap(r)?;
    Ok(LbElement::from_terms(Arc::clone(r.ring()), e.terms().map(|(x, c)| (n - x[0] as usize, c.clone()))))
}

/// Recovers `(α_0, ..., α_n)` from `e`: `α_a` is the `e_(n-a)`-coordinate of
/// `iota(e)`, read off as `ψ₀(shift^(n-a) iota(e))`.
pub fn decompose<R: CoeffRing>(
    e: &TruncatedSeries<R>,
    r: &ProjRing<R>,
    psi: &PsiSeries<R>,
    cache: &MishchenkoCache<R>,
) -> Result<WpbfDecomposition<R>> {
    let n = single_cap(r)?;
    let lifted = iota(e, r)?;
    let ring = r.ring();
    let mut alphas = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let shifted = lifted.shift_by(n - a);
        alphas.push(if shifted.is_zero() { ring.zero() } else { psi.psi0(&shifted, cache)? });
    }
    WpbfDecomposition::new(Arc::clone(ring), alphas)
}
