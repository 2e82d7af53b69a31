//! The free module on `e_i = [P^i, O(1)]` over the coefficient ring, with
//! the shift `e_i -> e_(i-1)`, the forgetful map `e_i -> p_i`, the
//! coordinate projector `ψ₀`, and the product `e_i • e_j = [P^i x P^j, O(1,1)]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::FglTable;
use crate::lazard::MishchenkoCache;
use crate::ring::{ensure_compatible, CoeffRing, Weight};

/// A finite combination `sum c_i e_i`. Zero coefficients are never stored.
pub struct LbElement<R: CoeffRing> {
    ring: Arc<R>,
    terms: BTreeMap<usize, R::Elem>,
}

impl<R: CoeffRing> Clone for LbElement<R> {
    fn clone(&self) -> Self {
        Self { ring: Arc::clone(&self.ring), terms: self.terms.clone() }
    }
}

impl<R: CoeffRing> PartialEq for LbElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<R: CoeffRing> fmt::Debug for LbElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: CoeffRing> fmt::Display for LbElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.terms.iter().rev().enumerate() {
            let s = self.ring.format(c);
            let compound = s[1..].contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest),
                _ => (false, s.as_str()),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match body {
                "1" => write!(f, "e{i}")?,
                b if compound => write!(f, "({b})*e{i}")?,
                b => write!(f, "{b}*e{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: CoeffRing> LbElement<R> {
    pub fn zero(ring: Arc<R>) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn basis(ring: Arc<R>, i: usize) -> Self {
        let one = ring.one();
        Self::from_terms(ring, [(i, one)])
    }

    pub fn from_terms(ring: Arc<R>, terms: impl IntoIterator<Item = (usize, R::Elem)>) -> Self {
        let mut out = Self::zero(ring);
        for (i, c) in terms {
            out.add_term(i, &c);
        }
        out
    }

    /// `sum_i coeffs[i] e_i`.
    pub fn assemble(ring: Arc<R>, coeffs: &[R::Elem]) -> Self {
        Self::from_terms(ring, coeffs.iter().cloned().enumerate())
    }

    fn add_term(&mut self, i: usize, c: &R::Elem) {
        let sum = match self.terms.get(&i) {
            Some(prev) => self.ring.add(prev, c),
            None => c.clone(),
        };
        if self.ring.is_zero(&sum) {
            self.terms.remove(&i);
        } else {
            self.terms.insert(i, sum);
        }
    }

    pub fn ring(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.terms.get(&i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `i` with a nonzero coefficient.
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_compatible(self.ring.as_ref(), other.ring.as_ref())?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(i, c)| (*i, self.ring.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Coefficientwise scaling: the cross product with a class of the point.
    pub fn kunneth_scale(&self, alpha: &R::Elem) -> Self {
        Self::from_terms(Arc::clone(&self.ring), self.terms.iter().map(|(i, c)| (*i, self.ring.mul(alpha, c))))
    }

    /// `e_i -> e_(i-1)`, `e_0 -> 0`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, k: usize) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().filter(|(i, _)| **i >= k).map(|(i, c)| (i - k, c.clone())).collect(),
        }
    }

    /// `e_i -> p_i`.
    pub fn forget(&self, cache: &MishchenkoCache<R>) -> Result<R::Elem> {
        ensure_compatible(self.ring.as_ref(), cache.ring().as_ref())?;
        let mut acc = self.ring.zero();
        for (i, c) in &self.terms {
            acc = self.ring.add(&acc, &self.ring.mul(c, cache.p_checked(*i)?));
        }
        Ok(acc)
    }

    /// Weight of the element, with `e_i` of weight `i`.
    pub fn weight(&self) -> Weight {
        self.terms.iter().fold(Weight::Zero, |w, (i, c)| w.join(self.ring.weight(c).shift(*i)))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(i, c)| json!({ "i": i, "coeff": self.ring.elem_to_json(c) })).collect();
        json!({ "basis": "e", "terms": terms })
    }

    pub fn from_json(ring: Arc<R>, v: &Value) -> Result<Self> {
        if let Some(b) = v.get("basis") {
            if b != "e" {
                return Err(Error::Parse(format!("unknown basis {b}")));
            }
        }
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing \"terms\"".into()))?;
        let mut out = Self::zero(Arc::clone(&ring));
        for t in terms {
            let i = t.get("i").and_then(Value::as_u64).ok_or_else(|| Error::Parse("term needs \"i\"".into()))?;
            let c = ring.elem_from_json(t.get("coeff").ok_or_else(|| Error::Parse("term needs \"coeff\"".into()))?)?;
            out.add_term(i as usize, &c);
        }
        Ok(out)
    }
}

/// `γ = (sum_i p_i s^i)^(-1)` through `s^K`, so that
/// `ψ₀ = sum_k γ_k · forget ∘ shift^k`.
pub struct PsiSeries<R: CoeffRing> {
    gamma: Vec<R::Elem>,
}

impl<R: CoeffRing> Clone for PsiSeries<R> {
    fn clone(&self) -> Self {
        Self { gamma: self.gamma.clone() }
    }
}

impl<R: CoeffRing> fmt::Debug for PsiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PsiSeries").field("gamma", &self.gamma).finish()
    }
}

pub fn build_psi<R: CoeffRing>(cache: &MishchenkoCache<R>, depth: usize) -> Result<PsiSeries<R>> {
    if depth > cache.depth() {
        return Err(Error::InsufficientDepth { needed: depth, available: cache.depth() });
    }
    let ring = cache.ring();
    let mut gamma = vec![ring.one()];
    for i in 1..=depth {
        let mut acc = ring.zero();
        for (k, g) in gamma.iter().enumerate() {
            acc = ring.add(&acc, &ring.mul(g, cache.p_checked(i - k)?));
        }
        gamma.push(ring.neg(&acc));
    }
    Ok(PsiSeries { gamma })
}

impl<R: CoeffRing> PsiSeries<R> {
    pub fn depth(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn gamma(&self, k: usize) -> Option<&R::Elem> {
        self.gamma.get(k)
    }

    pub fn gammas(&self) -> &[R::Elem] {
        &self.gamma
    }

    fn ensure_depth(&self, e: &LbElement<R>) -> Result<()> {
        match e.max_index() {
            Some(m) if m > self.depth() => Err(Error::DepthExhausted { needed: m, available: self.depth() }),
            _ => Ok(()),
        }
    }

    /// `ψ₀(e) = sum_k γ_k · forget(shift^k e)`, the `e_0`-coordinate of `e`.
    pub fn psi0(&self, e: &LbElement<R>, cache: &MishchenkoCache<R>) -> Result<R::Elem> {
        self.ensure_depth(e)?;
        let ring = e.ring();
        let mut acc = ring.zero();
        for (k, g) in self.gamma.iter().enumerate().take(e.max_index().map_or(0, |m| m + 1)) {
            acc = ring.add(&acc, &ring.mul(g, &e.shift_by(k).forget(cache)?));
        }
        Ok(acc)
    }

    /// `(β_0, ..., β_M)` with `e = sum β_i e_i`, via `β_i = ψ₀(shift^i e)`.
    pub fn coordinates(&self, e: &LbElement<R>, cache: &MishchenkoCache<R>) -> Result<Vec<R::Elem>> {
        self.ensure_depth(e)?;
        match e.max_index() {
            None => Ok(Vec::new()),
            Some(m) => (0..=m).map(|i| self.psi0(&e.shift_by(i), cache)).collect(),
        }
    }
}

/// Computes products in the module. Values `forget(shift^r (e_i • e_j))`
/// are memoized; the recursion runs on `F` truncated at caps `(i, j)`.
pub struct LbAlgebra<R: CoeffRing> {
    table: FglTable<R>,
    cache: MishchenkoCache<R>,
    psi: PsiSeries<R>,
    memo: RwLock<HashMap<(usize, usize, usize), R::Elem>>,
    graded: bool,
}

impl<R: CoeffRing> fmt::Debug for LbAlgebra<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LbAlgebra").field("depth", &self.psi.depth()).finish()
    }
}

impl<R: CoeffRing> LbAlgebra<R> {
    /// Products `e_i • e_j` are available for `i + j <= depth`.
    pub fn new(table: FglTable<R>, cache: MishchenkoCache<R>, depth: usize) -> Result<Self> {
        ensure_compatible(table.ring().as_ref(), cache.ring().as_ref())?;
        let psi = build_psi(&cache, depth)?;
        let ring = table.ring();
        let graded = table.entries().all(|(&(i, j), c)| ring.weight(c) == Weight::Homogeneous(i + j - 1));
        Ok(Self { table, cache, psi, memo: RwLock::new(HashMap::new()), graded })
    }

    pub fn ring(&self) -> &Arc<R> {
        self.table.ring()
    }

    pub fn table(&self) -> &FglTable<R> {
        &self.table
    }

    pub fn cache(&self) -> &MishchenkoCache<R> {
        &self.cache
    }

    pub fn psi(&self) -> &PsiSeries<R> {
        &self.psi
    }

    pub fn depth(&self) -> usize {
        self.psi.depth()
    }

    pub fn basis(&self, i: usize) -> LbElement<R> {
        LbElement::basis(Arc::clone(self.ring()), i)
    }

    pub fn coordinates(&self, e: &LbElement<R>) -> Result<Vec<R::Elem>> {
        self.psi.coordinates(e, &self.cache)
    }

    pub fn psi0(&self, e: &LbElement<R>) -> Result<R::Elem> {
        self.psi.psi0(e, &self.cache)
    }

    /// `forget(shift^r (e_i • e_j))`.
    fn forgotten_shift(&self, r: usize, i: usize, j: usize) -> Result<R::Elem> {
        let (i, j) = (i.min(j), i.max(j));
        let ring = self.ring();
        if i == 0 {
            return Ok(if r > j { ring.zero() } else { self.cache.p_checked(j - r)?.clone() });
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(&(r, i, j)) {
            return Ok(v.clone());
        }
        let value = if r == 0 {
            ring.mul(self.cache.p_checked(i)?, self.cache.p_checked(j)?)
        } else {
            let mut acc = ring.zero();
            for a in 0..=i {
                for b in 0..=j {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let f = self.table.series_coeff(a, b)?;
                    if ring.is_zero(&f) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(&f, &self.forgotten_shift(r - 1, i - a, j - b)?));
                }
            }
            acc
        };
        self.memo.write().expect("memo lock").entry((r, i, j)).or_insert_with(|| value.clone());
        Ok(value)
    }

    /// `e_i • e_j`, the class of `P^i x P^j` with `O(1,1)`.
    pub fn eps(&self, i: usize, j: usize) -> Result<LbElement<R>> {
        let n = i + j;
        if n > self.depth() {
            return Err(Error::DepthExhausted { needed: n, available: self.depth() });
        }
        let ring = self.ring();
        let g: Vec<R::Elem> = (0..=n).map(|r| self.forgotten_shift(r, i, j)).collect::<Result<_>>()?;
        let mut coords = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = ring.zero();
            for (m, gamma) in self.psi.gammas().iter().enumerate().take(n - k + 1) {
                acc = ring.add(&acc, &ring.mul(gamma, &g[m + k]));
            }
            coords.push(acc);
        }
        let out = LbElement::assemble(Arc::clone(ring), &coords);
        if self.graded {
            debug_assert!(matches!(out.weight(), Weight::Homogeneous(w) if w == n));
        }
        Ok(out)
    }

    /// Bilinear extension of `e_i • e_j`.
    pub fn product(&self, a: &LbElement<R>, b: &LbElement<R>) -> Result<LbElement<R>> {
        ensure_compatible(a.ring().as_ref(), self.ring().as_ref())?;
        ensure_compatible(b.ring().as_ref(), self.ring().as_ref())?;
        let ring = self.ring();
        let mut out = LbElement::zero(Arc::clone(ring));
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                out = out.add(&self.eps(i, j)?.kunneth_scale(&ring.mul(x, y)))?;
            }
        }
        Ok(out)
    }
}
