//! Truncated multivariate power series over a coefficient ring.
//!
//! A series lives in a [`SeriesSpace`]: named variables, a cap on each
//! exponent, and an optional cap on the total degree. Exponents outside the
//! space are never stored. Binary operations run in the meet of the operand
//! spaces (pointwise minimum caps).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{format_monomial, Exponents};
use crate::ring::{ensure_compatible, CoeffRing, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpace {
    vars: Vec<String>,
    caps: Vec<usize>,
    total: Option<usize>,
}

impl SeriesSpace {
    pub fn new(vars: Vec<String>, caps: Vec<usize>) -> Result<Self> {
        if vars.len() != caps.len() {
            return Err(Error::LengthMismatch { expected: vars.len(), got: caps.len() });
        }
        Ok(Self { vars, caps, total: None })
    }

    /// Every variable capped only through a shared total-degree cap.
    pub fn total_degree(vars: &[&str], total: usize) -> Self {
        Self {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            caps: vec![total; vars.len()],
            total: Some(total),
        }
    }

    pub fn univariate(var: &str, cap: usize) -> Self {
        Self { vars: vec![var.to_string()], caps: vec![cap], total: None }
    }

    pub fn with_total(mut self, total: usize) -> Self {
        self.total = Some(total);
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn total(&self) -> Option<usize> {
        self.total
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Largest total degree a stored exponent can have.
    pub fn max_degree(&self) -> usize {
        let sum: usize = self.caps.iter().sum();
        self.total.map_or(sum, |t| t.min(sum))
    }

    pub fn admits(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.caps).all(|(&k, &c)| k as usize <= c)
            && self.total.is_none_or(|t| e.iter().map(|&k| k as usize).sum::<usize>() <= t)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::TruncationMismatch(format!(
                "series in variables {:?} and {:?}",
                self.vars, other.vars
            )));
        }
        let total = match (self.total, other.total) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(Self {
            vars: self.vars.clone(),
            caps: self.caps.iter().zip(&other.caps).map(|(a, b)| *a.min(b)).collect(),
            total,
        })
    }

    pub(crate) fn unit_exponent(&self, idx: usize) -> Exponents {
        let mut e = vec![0; self.nvars()];
        e[idx] = 1;
        e
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "vars": self.vars, "caps": self.caps });
        if let Some(t) = self.total {
            v["total_cap"] = json!(t);
        }
        v
    }
}

pub struct TruncatedSeries<R: CoeffRing> {
    ring: Arc<R>,
    space: SeriesSpace,
    terms: BTreeMap<Exponents, R::Elem>,
}

impl<R: CoeffRing> Clone for TruncatedSeries<R> {
    fn clone(&self) -> Self {
        Self { ring: Arc::clone(&self.ring), space: self.space.clone(), terms: self.terms.clone() }
    }
}

impl<R: CoeffRing> PartialEq for TruncatedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.compatible(&other.ring) && self.space == other.space && self.terms == other.terms
    }
}

impl<R: CoeffRing> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{:?} caps {:?}]({})", self.space.vars, self.space.caps, self)
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<R: CoeffRing> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        // Lower degree first; within a degree, earlier variables first.
        ordered.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        for (e, c) in ordered {
            let mono = format_monomial(e, &self.space.vars);
            let coeff = self.ring.format(c);
            let simple = !coeff[1..].contains([' ', '+']) && !coeff[1..].contains(" -");
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, coeff.clone()),
            };
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            let body = if simple { body } else { format!("({body})") };
            match (mono.is_empty(), body.as_str()) {
                (true, b) => write!(f, "{b}")?,
                (false, "1") => write!(f, "{mono}")?,
                (false, b) => write!(f, "{b}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<R: CoeffRing> TruncatedSeries<R> {
    pub fn zero(ring: Arc<R>, space: SeriesSpace) -> Self {
        Self { ring, space, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Arc<R>, space: SeriesSpace, c: R::Elem) -> Self {
        let e = vec![0; space.nvars()];
        Self::monomial(ring, space, e, c)
    }

    pub fn one(ring: Arc<R>, space: SeriesSpace) -> Self {
        let one = ring.one();
        Self::constant(ring, space, one)
    }

    /// The series `c * x^e`; zero if `e` lies outside the space.
    pub fn monomial(ring: Arc<R>, space: SeriesSpace, e: Exponents, c: R::Elem) -> Self {
        let mut s = Self::zero(ring, space);
        s.add_term(e, c);
        s
    }

    pub fn var(ring: Arc<R>, space: SeriesSpace, idx: usize) -> Self {
        let e = space.unit_exponent(idx);
        let one = ring.one();
        Self::monomial(ring, space, e, one)
    }

    pub fn from_terms<I>(ring: Arc<R>, space: SeriesSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, R::Elem)>,
    {
        let mut s = Self::zero(ring, space);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn ring(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn space(&self) -> &SeriesSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> R::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&vec![0; self.space.nvars()])
    }

    /// Smallest total degree of a stored term, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as usize).sum()).min()
    }

    /// Largest exponent of each variable among the stored terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0; self.space.nvars()];
        for e in self.terms.keys() {
            for (a, &k) in m.iter_mut().zip(e) {
                *a = (*a).max(k);
            }
        }
        m
    }

    fn add_term(&mut self, e: Exponents, c: R::Elem) {
        if !self.space.admits(&e) || self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), &c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<SeriesSpace> {
        ensure_compatible(self.ring.as_ref(), other.ring.as_ref())?;
        self.space.meet(&other.space)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let space = self.check_ring(other)?;
        let mut out = Self::zero(Arc::clone(&self.ring), space);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.ring.neg(c))).collect();
        Self { ring: Arc::clone(&self.ring), space: self.space.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let space = self.check_ring(other)?;
        let mut out = Self::zero(Arc::clone(&self.ring), space);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if out.space.admits(&e) {
                    let c = self.ring.mul(c1, c2);
                    out.add_term(e, c);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(Arc::clone(&self.ring), self.space.clone());
        if self.ring.is_zero(c) {
            return out;
        }
        for (e, x) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(c, x));
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(Arc::clone(&self.ring), self.space.clone());
        for (e, x) in &self.terms {
            out.add_term(e.clone(), self.ring.scale(x, q));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(Arc::clone(&self.ring), self.space.clone());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reinterprets the series in another space over the same variables,
    /// dropping terms the new space does not admit.
    ///
    /// Enlarging caps is only sound when the missing terms are known to be
    /// irrelevant to the caller (e.g. the result is multiplied by a series
    /// of high enough order).
    pub fn recap(&self, space: SeriesSpace) -> Result<Self> {
        if space.vars != self.space.vars {
            return Err(Error::TruncationMismatch(format!(
                "cannot recap {:?} into {:?}",
                self.space.vars, space.vars
            )));
        }
        Ok(Self::from_terms(Arc::clone(&self.ring), space, self.terms.clone()))
    }

    /// Renames variables; terms and caps are kept in position.
    pub fn rename(&self, vars: Vec<String>) -> Result<Self> {
        let mut space = self.space.clone();
        if vars.len() != space.vars.len() {
            return Err(Error::LengthMismatch { expected: space.vars.len(), got: vars.len() });
        }
        space.vars = vars;
        Ok(Self { ring: Arc::clone(&self.ring), space, terms: self.terms.clone() })
    }

    /// Substitutes `args[i]` for the `i`-th variable. Every argument must
    /// live in `target` (up to caps) and have zero constant term.
    pub fn substitute(&self, target: &SeriesSpace, args: &[Self]) -> Result<Self> {
        if args.len() != self.space.nvars() {
            return Err(Error::LengthMismatch { expected: self.space.nvars(), got: args.len() });
        }
        for a in args {
            ensure_compatible(self.ring.as_ref(), a.ring.as_ref())?;
            if !self.ring.is_zero(&a.constant_term()) {
                return Err(Error::NotNilpotentLike);
            }
        }
        let args: Vec<Self> = args.iter().map(|a| a.recap(target.meet(&a.space)?)).collect::<Result<_>>()?;
        let target = args.iter().try_fold(target.clone(), |s, a| s.meet(&a.space))?;
        let top = self.max_exponents();
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(args.len());
        for (a, &k) in args.iter().zip(&top) {
            let mut pw = vec![Self::one(Arc::clone(&self.ring), target.clone())];
            for _ in 0..k {
                let next = pw.last().unwrap().mul(a)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Self::zero(Arc::clone(&self.ring), target.clone());
        for (e, c) in &self.terms {
            let mut term = Self::constant(Arc::clone(&self.ring), target.clone(), c.clone());
            for (var, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[var][k as usize])?;
                }
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Composition `self(g)` for a univariate `self`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.space.nvars() != 1 {
            return Err(Error::Shape("compose expects a univariate outer series".into()));
        }
        let target = g.space.clone();
        self.substitute(&target, std::slice::from_ref(g))
    }

    /// Multiplicative inverse of a series whose constant term is one.
    pub fn inverse_unit(&self) -> Result<Self> {
        let one = self.ring.one();
        if self.constant_term() != one {
            return Err(Error::Shape("series inverse needs constant term 1".into()));
        }
        // 1/(1 - h) = sum h^k with h = 1 - self nilpotent in the truncation
        let unit = Self::one(Arc::clone(&self.ring), self.space.clone());
        let h = unit.sub(self)?;
        let mut acc = unit.clone();
        let mut pw = unit;
        for _ in 0..self.space.max_degree() {
            pw = pw.mul(&h)?;
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        Ok(acc)
    }

    pub fn map_coeffs<S: CoeffRing>(&self, ring: Arc<S>, f: impl Fn(&R::Elem) -> S::Elem) -> TruncatedSeries<S> {
        TruncatedSeries::from_terms(ring, self.space.clone(), self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Weight of the series when the variable `x_i` counts as weight
    /// `var_weight` (negative weights are folded by the caller's offset).
    pub fn weight_with(&self, offset: usize, var_weight: impl Fn(&[u32]) -> isize) -> Weight {
        let mut w = Weight::Zero;
        for (e, c) in &self.terms {
            let total = match self.ring.weight(c) {
                Weight::Zero => continue,
                Weight::Mixed => return Weight::Mixed,
                Weight::Homogeneous(k) => offset as isize + k as isize + var_weight(e),
            };
            if total < 0 {
                return Weight::Mixed;
            }
            w = w.join(Weight::Homogeneous(total as usize));
        }
        w
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.space.to_json();
        v["terms"] = Value::Array(
            self.terms.iter().map(|(e, c)| json!({ "exp": e, "coeff": self.ring.elem_to_json(c) })).collect(),
        );
        v
    }

    pub fn from_json(ring: Arc<R>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("series JSON: {m}"));
        let vars: Vec<String> = serde_json::from_value(v.get("vars").cloned().ok_or_else(|| bad("missing vars"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let caps: Vec<usize> = serde_json::from_value(v.get("caps").cloned().ok_or_else(|| bad("missing caps"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let mut space = SeriesSpace::new(vars, caps)?;
        if let Some(t) = v.get("total_cap").and_then(Value::as_u64) {
            space = space.with_total(t as usize);
        }
        let mut out = Self::zero(Arc::clone(&ring), space);
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        for t in terms {
            let e: Exponents = serde_json::from_value(t.get("exp").cloned().ok_or_else(|| bad("missing exp"))?)
                .map_err(|e| bad(&e.to_string()))?;
            if e.len() != out.space.nvars() {
                return Err(Error::LengthMismatch { expected: out.space.nvars(), got: e.len() });
            }
            if !out.space.admits(&e) {
                return Err(Error::BeyondTruncation(format!("exponent {e:?} outside caps")));
            }
            let c = ring.elem_from_json(t.get("coeff").ok_or_else(|| bad("missing coeff"))?)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}
