//! Formal group law tables and the one- and two-variable series calculus
//! built on them: formal sum, formal inverse, n-series, logarithm and
//! exponential, the projective-bundle class series, and identity checkers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{ensure_compatible, CoeffRing};
use crate::series::{SeriesSpace, TruncatedSeries};

/// Which coefficients `a_ij` a table actually knows. Outside the range the
/// coefficient is unknown, not zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownRange {
    /// Every coefficient is known; unlisted ones are zero.
    All,
    /// Known for `i + j <= d`.
    TotalDegree(usize),
    /// Known for `i <= n` and `j <= m`.
    Rectangle(usize, usize),
}

impl KnownRange {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        match *self {
            KnownRange::All => true,
            KnownRange::TotalDegree(d) => i + j <= d,
            KnownRange::Rectangle(n, m) => i <= n && j <= m,
        }
    }
}

/// Coefficients `a_ij` (`i, j >= 1`) of `F(x, y) = x + y + sum a_ij x^i y^j`.
pub struct FglTable<R: CoeffRing> {
    ring: Arc<R>,
    coeffs: BTreeMap<(usize, usize), R::Elem>,
    known: KnownRange,
}

impl<R: CoeffRing> Clone for FglTable<R> {
    fn clone(&self) -> Self {
        Self { ring: Arc::clone(&self.ring), coeffs: self.coeffs.clone(), known: self.known }
    }
}

impl<R: CoeffRing> std::fmt::Debug for FglTable<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FglTable").field("known", &self.known).field("coeffs", &self.coeffs).finish()
    }
}

impl<R: CoeffRing> FglTable<R> {
    /// Builds a table from explicit entries; zero entries and entries outside
    /// `known` are discarded.
    pub fn new(ring: Arc<R>, entries: BTreeMap<(usize, usize), R::Elem>, known: KnownRange) -> Result<Self> {
        if entries.keys().any(|&(i, j)| i == 0 || j == 0) {
            return Err(Error::Shape("FGL coefficients are indexed from 1".into()));
        }
        let coeffs = entries.into_iter().filter(|((i, j), c)| known.contains(*i, *j) && !ring.is_zero(c)).collect();
        Ok(Self { ring, coeffs, known })
    }

    /// Builds a commutative table from entries with `i <= j`.
    pub fn symmetric(ring: Arc<R>, upper: BTreeMap<(usize, usize), R::Elem>, known: KnownRange) -> Result<Self> {
        let mut all = BTreeMap::new();
        for ((i, j), c) in upper {
            if i > j {
                return Err(Error::Shape(format!("symmetric table entry a_{i}{j} must have i <= j")));
            }
            all.insert((j, i), c.clone());
            all.insert((i, j), c);
        }
        Self::new(ring, all, known)
    }

    /// `F(x, y) = x + y`.
    pub fn additive(ring: Arc<R>) -> Self {
        Self { ring, coeffs: BTreeMap::new(), known: KnownRange::All }
    }

    /// `F(x, y) = x + y - beta*x*y`.
    pub fn multiplicative(ring: Arc<R>, beta: &R::Elem) -> Self {
        let mut coeffs = BTreeMap::new();
        let c = ring.neg(beta);
        if !ring.is_zero(&c) {
            coeffs.insert((1, 1), c);
        }
        Self { ring, coeffs, known: KnownRange::All }
    }

    pub fn ring(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn known(&self) -> KnownRange {
        self.known
    }

    /// Nonzero known coefficients.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Result<R::Elem> {
        if i == 0 || j == 0 || !self.known.contains(i, j) {
            return Err(Error::UnknownCoefficient { i, j });
        }
        Ok(self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    /// Coefficient of `x^a y^b` in `F`, including the linear part.
    pub fn series_coeff(&self, a: usize, b: usize) -> Result<R::Elem> {
        match (a, b) {
            (1, 0) | (0, 1) => Ok(self.ring.one()),
            (_, 0) | (0, _) => Ok(self.ring.zero()),
            _ => self.coeff(a, b),
        }
    }

    /// Copy with a single entry `a_ij` shifted by `delta` (the mirror entry
    /// `a_ji` is left alone).
    pub fn with_mutation(&self, i: usize, j: usize, delta: &R::Elem) -> Result<Self> {
        let c = self.ring.add(&self.coeff(i, j)?, delta);
        let mut out = self.clone();
        if self.ring.is_zero(&c) {
            out.coeffs.remove(&(i, j));
        } else {
            out.coeffs.insert((i, j), c);
        }
        Ok(out)
    }

    pub fn map<S: CoeffRing>(&self, ring: Arc<S>, known: KnownRange, f: impl Fn(&R::Elem) -> S::Elem) -> FglTable<S> {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| known.contains(*i, *j))
            .map(|(k, c)| (*k, f(c)))
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        FglTable { ring, coeffs, known }
    }

    /// Whether both tables agree on every `a_ij` with `i <= n`, `j <= m`.
    pub fn agrees_with(&self, other: &Self, n: usize, m: usize) -> Result<bool> {
        for i in 1..=n {
            for j in 1..=m {
                if self.coeff(i, j)? != other.coeff(i, j)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `F` itself as a series in `space` (two variables).
    pub fn as_series(&self, space: &SeriesSpace) -> Result<TruncatedSeries<R>> {
        let x = TruncatedSeries::var(Arc::clone(&self.ring), space.clone(), 0);
        let y = TruncatedSeries::var(Arc::clone(&self.ring), space.clone(), 1);
        formal_sum(self, &x, &y)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|((i, j), c)| json!({ "i": i, "j": j, "coords": self.ring.elem_to_json(c) }))
                .collect(),
        )
    }
}

fn univariate_var<R: CoeffRing>(ring: &Arc<R>, var: &str, cap: usize) -> TruncatedSeries<R> {
    TruncatedSeries::var(Arc::clone(ring), SeriesSpace::univariate(var, cap), 0)
}

/// `F(p, q)`, truncated to the meet of the operand spaces.
pub fn formal_sum<R: CoeffRing>(
    table: &FglTable<R>,
    p: &TruncatedSeries<R>,
    q: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>> {
    ensure_compatible(table.ring.as_ref(), p.ring().as_ref())?;
    let ring = table.ring();
    if !ring.is_zero(&p.constant_term()) || !ring.is_zero(&q.constant_term()) {
        return Err(Error::NotNilpotentLike);
    }
    let linear = p.add(q)?;
    let space = linear.space().clone();
    let top = space.max_degree();
    let (Some(vp), Some(vq)) = (p.valuation(), q.valuation()) else {
        return Ok(linear);
    };
    let p = p.recap(space.clone())?;
    let q = q.recap(space.clone())?;

    let mut q_powers = vec![TruncatedSeries::one(Arc::clone(ring), space.clone())];
    while q_powers.len() * vq <= top {
        let next = q_powers.last().unwrap().mul(&q)?;
        if next.is_zero() {
            break;
        }
        q_powers.push(next);
    }

    // sum_i p^i * (sum_j a_ij q^j)
    let mut acc = linear;
    let mut p_pow = TruncatedSeries::one(Arc::clone(ring), space.clone());
    let mut i = 0;
    loop {
        i += 1;
        p_pow = p_pow.mul(&p)?;
        if p_pow.is_zero() || i * vp + vq > top {
            break;
        }
        let mut inner = TruncatedSeries::zero(Arc::clone(ring), space.clone());
        for (j, qj) in q_powers.iter().enumerate().skip(1) {
            if i * vp + j * vq > top {
                break;
            }
            let c = table.coeff(i, j)?;
            if !ring.is_zero(&c) {
                inner = inner.add(&qj.scale(&c))?;
            }
        }
        if !inner.is_zero() {
            acc = acc.add(&p_pow.mul(&inner)?)?;
        }
    }
    Ok(acc)
}

/// The formal inverse `ι(t)` with `F(t, ι(t)) = 0` through `t^cap`, solved
/// degree by degree.
pub fn formal_inverse<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<TruncatedSeries<R>> {
    formal_inverse_in(table, "t", cap)
}

pub fn formal_inverse_in<R: CoeffRing>(table: &FglTable<R>, var: &str, cap: usize) -> Result<TruncatedSeries<R>> {
    let ring = table.ring();
    let t = univariate_var(ring, var, cap);
    let mut inv = t.neg();
    for k in 2..=cap {
        let s = formal_sum(table, &t, &inv)?;
        let c = s.coeff(&[k as u32]);
        if !ring.is_zero(&c) {
            let fix = TruncatedSeries::monomial(Arc::clone(ring), t.space().clone(), vec![k as u32], ring.neg(&c));
            inv = inv.add(&fix)?;
        }
    }
    Ok(inv)
}

/// `[n]_F(t)`: `[0] = 0`, `[n+1] = F(t, [n])`, `[-n] = ι([n])`.
pub fn n_series<R: CoeffRing>(table: &FglTable<R>, n: i64, cap: usize) -> Result<TruncatedSeries<R>> {
    n_series_in(table, n, "t", cap)
}

pub fn n_series_in<R: CoeffRing>(table: &FglTable<R>, n: i64, var: &str, cap: usize) -> Result<TruncatedSeries<R>> {
    let ring = table.ring();
    let t = univariate_var(ring, var, cap);
    let mut acc = TruncatedSeries::zero(Arc::clone(ring), t.space().clone());
    for _ in 0..n.unsigned_abs() {
        acc = formal_sum(table, &t, &acc)?;
    }
    if n < 0 {
        let inv = formal_inverse_in(table, var, cap)?;
        acc = inv.compose(&acc)?;
    }
    Ok(acc)
}

/// `P(u) = -sum_{i,j>=1} a_ij u^(i-1) ι(u)^(j-1)`, the class of the
/// projective bundle `P(L ⊕ O)` as a series in `u = c1(L)`.
pub fn pbundle_class<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<TruncatedSeries<R>> {
    let ring = table.ring();
    let u = univariate_var(ring, "u", cap);
    let inv = formal_inverse_in(table, "u", cap)?;
    let mut inv_powers = vec![TruncatedSeries::one(Arc::clone(ring), u.space().clone())];
    for _ in 0..cap {
        let next = inv_powers.last().unwrap().mul(&inv)?;
        inv_powers.push(next);
    }
    let mut acc = TruncatedSeries::zero(Arc::clone(ring), u.space().clone());
    for i in 1..=cap + 1 {
        for j in 1..=cap + 2 - i {
            let c = table.coeff(i, j)?;
            if ring.is_zero(&c) {
                continue;
            }
            let term = u.pow(i as u32 - 1)?.mul(&inv_powers[j - 1])?.scale(&c);
            acc = acc.sub(&term)?;
        }
    }
    Ok(acc)
}

/// `log_F(t) = sum m_k t^(k+1)`, integrated from the invariant differential
/// `dlog_F = dt / ∂_y F(t, 0)`. This is the degreewise solution of
/// `log_F(F(x, y)) = log_F(x) + log_F(y)` read off at `x^k y`.
pub fn log_series<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<TruncatedSeries<R>> {
    let ring = table.ring();
    let space = SeriesSpace::univariate("t", cap);
    let mut g = TruncatedSeries::one(Arc::clone(ring), space.clone());
    for i in 1..cap {
        let c = table.coeff(i, 1)?;
        g = g.add(&TruncatedSeries::monomial(Arc::clone(ring), space.clone(), vec![i as u32], c))?;
    }
    let dlog = g.inverse_unit()?;
    let terms = dlog
        .terms()
        .map(|(e, c)| {
            let n = e[0] as usize;
            (vec![n as u32 + 1], ring.scale(c, &BigRational::new(1.into(), (n as i64 + 1).into())))
        })
        .collect::<Vec<_>>();
    Ok(TruncatedSeries::from_terms(Arc::clone(ring), space, terms))
}

/// Compositional inverse of `log_F`, solved degree by degree.
pub fn exp_series<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<TruncatedSeries<R>> {
    let ring = table.ring();
    let log = log_series(table, cap)?;
    let t = univariate_var(ring, "t", cap);
    let mut e = t.clone();
    for k in 2..=cap {
        let c = log.compose(&e)?.coeff(&[k as u32]);
        if !ring.is_zero(&c) {
            let fix = TruncatedSeries::monomial(Arc::clone(ring), t.space().clone(), vec![k as u32], ring.neg(&c));
            e = e.add(&fix)?;
        }
    }
    Ok(e)
}

/// The formal inverse computed as `exp_F(-log_F(t))`. Only the coefficients
/// `a_i1` enter, so it is independent of the rest of the table.
pub fn inverse_via_log<R: CoeffRing>(table: &FglTable<R>, var: &str, cap: usize) -> Result<TruncatedSeries<R>> {
    let exp = exp_series(table, cap)?;
    let log = log_series(table, cap)?;
    exp.compose(&log.neg())?.rename(vec![var.to_string()])
}

#[derive(Clone, Debug)]
pub struct IdentityCheck<R: CoeffRing> {
    pub holds: bool,
    pub residual: TruncatedSeries<R>,
}

/// Checks `u + ι(u) - u·ι(u)·P(u) = 0` through `u^cap`.
///
/// `ι` is taken from the logarithm and `P` from [`pbundle_class`], so a
/// table that is not a formal group law (e.g. one corrupted entry) leaves a
/// nonzero residual.
pub fn verify_inverse_identity<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<IdentityCheck<R>> {
    let ring = table.ring();
    let u = univariate_var(ring, "u", cap);
    let inv = inverse_via_log(table, "u", cap)?;
    let p = if cap >= 2 {
        pbundle_class(table, cap - 2)?.recap(u.space().clone())?
    } else {
        TruncatedSeries::zero(Arc::clone(ring), u.space().clone())
    };
    let residual = u.add(&inv)?.sub(&u.mul(&inv)?.mul(&p)?)?;
    Ok(IdentityCheck { holds: residual.is_zero(), residual })
}

#[derive(Clone, Debug)]
pub struct DpcSplit<R: CoeffRing> {
    /// `S(x, y) = sum a_ij x^(i-1) y^(j-1)`.
    pub s: TruncatedSeries<R>,
    /// `F(x, y) - x - y - x·y·S(x, y)`.
    pub split_residual: TruncatedSeries<R>,
    /// `S(x, ι(x)) + P(x)` through `x^min(n, m)`.
    pub bridge_residual: TruncatedSeries<R>,
}

impl<R: CoeffRing> DpcSplit<R> {
    pub fn holds(&self) -> bool {
        self.split_residual.is_zero() && self.bridge_residual.is_zero()
    }
}

/// Splits `F(x, y) = x + y + x·y·S(x, y)` on caps `(n, m)` and checks the
/// bridge `S(x, ι(x)) = -P(x)`.
pub fn dpc_expand<R: CoeffRing>(table: &FglTable<R>, n: usize, m: usize) -> Result<DpcSplit<R>> {
    let ring = table.ring();
    let space = SeriesSpace::new(vec!["x".into(), "y".into()], vec![n, m])?;
    let mut s = TruncatedSeries::zero(Arc::clone(ring), space.clone());
    for i in 1..=n + 1 {
        for j in 1..=m + 1 {
            let c = table.coeff(i, j)?;
            let t = TruncatedSeries::monomial(Arc::clone(ring), space.clone(), vec![i as u32 - 1, j as u32 - 1], c);
            s = s.add(&t)?;
        }
    }
    let x = TruncatedSeries::var(Arc::clone(ring), space.clone(), 0);
    let y = TruncatedSeries::var(Arc::clone(ring), space.clone(), 1);
    let f = formal_sum(table, &x, &y)?;
    let split_residual = f.sub(&x)?.sub(&y)?.sub(&x.mul(&y)?.mul(&s)?)?;

    let c = n.min(m);
    let line = SeriesSpace::univariate("x", c);
    let t = TruncatedSeries::var(Arc::clone(ring), line.clone(), 0);
    let inv = formal_inverse_in(table, "x", c)?;
    let s_on_line = s.substitute(&line, &[t, inv])?;
    let p = pbundle_class(table, c)?.rename(vec!["x".into()])?;
    let bridge_residual = s_on_line.add(&p)?;
    Ok(DpcSplit { s, split_residual, bridge_residual })
}

/// `F(t, ι(t))` with `ι` from [`formal_inverse`]; zero through the cap for a
/// consistent table.
pub fn inverse_residual<R: CoeffRing>(table: &FglTable<R>, cap: usize) -> Result<TruncatedSeries<R>> {
    let t = univariate_var(table.ring(), "t", cap);
    formal_sum(table, &t, &formal_inverse(table, cap)?)
}
