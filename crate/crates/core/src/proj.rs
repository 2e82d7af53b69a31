//! Rings of products of projective spaces,
//! `R[t_1, ..., t_k] / (t_1^(n_1+1), ..., t_k^(n_k+1))`, with Chern classes of
//! line bundles and pushforward to the point.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgl::{formal_sum, n_series_in, FglTable, KnownRange};
use crate::lazard::MishchenkoCache;
use crate::ring::{ensure_compatible, CoeffRing};
use crate::series::{SeriesSpace, TruncatedSeries};

/// `t_i` is the hyperplane class of the `i`-th factor `P^(n_i)`.
#[derive(Debug)]
pub struct ProjRing<R: CoeffRing> {
    ring: Arc<R>,
    space: SeriesSpace,
}

impl<R: CoeffRing> Clone for ProjRing<R> {
    fn clone(&self) -> Self {
        Self { ring: Arc::clone(&self.ring), space: self.space.clone() }
    }
}

impl<R: CoeffRing> ProjRing<R> {
    /// Variables are `t` for a single factor and `t1, ..., tk` otherwise.
    pub fn new(ring: Arc<R>, caps: &[usize]) -> Result<Self> {
        let vars = match caps.len() {
            0 => return Err(Error::Shape("at least one projective factor is needed".into())),
            1 => vec!["t".to_string()],
            k => (1..=k).map(|i| format!("t{i}")).collect(),
        };
        Self::with_vars(ring, vars, caps)
    }

    pub fn with_vars(ring: Arc<R>, vars: Vec<String>, caps: &[usize]) -> Result<Self> {
        Ok(Self { ring, space: SeriesSpace::new(vars, caps.to_vec())? })
    }

    pub fn ring(&self) -> &Arc<R> {
        &self.ring
    }

    pub fn space(&self) -> &SeriesSpace {
        &self.space
    }

    pub fn caps(&self) -> &[usize] {
        self.space.caps()
    }

    pub fn factors(&self) -> usize {
        self.space.nvars()
    }

    pub fn zero(&self) -> TruncatedSeries<R> {
        TruncatedSeries::zero(Arc::clone(&self.ring), self.space.clone())
    }

    pub fn one(&self) -> TruncatedSeries<R> {
        TruncatedSeries::one(Arc::clone(&self.ring), self.space.clone())
    }

    pub fn constant(&self, c: R::Elem) -> TruncatedSeries<R> {
        TruncatedSeries::constant(Arc::clone(&self.ring), self.space.clone(), c)
    }

    pub fn generator(&self, factor: usize) -> TruncatedSeries<R> {
        TruncatedSeries::var(Arc::clone(&self.ring), self.space.clone(), factor)
    }

    /// `t_factor^a`, the class of a codimension-`a` linear subspace of that
    /// factor; zero once `a` exceeds the cap.
    pub fn hyperplane_divisor_power(&self, factor: usize, a: usize) -> Result<TruncatedSeries<R>> {
        if factor >= self.factors() {
            return Err(Error::Shape(format!("factor {factor} of {}", self.factors())));
        }
        let mut e = vec![0u32; self.factors()];
        e[factor] = a as u32;
        Ok(TruncatedSeries::monomial(Arc::clone(&self.ring), self.space.clone(), e, self.ring.one()))
    }

    /// Checks that `e` is an element of this ring.
    pub fn check(&self, e: &TruncatedSeries<R>) -> Result<()> {
        ensure_compatible(self.ring.as_ref(), e.ring().as_ref())?;
        if e.space() != &self.space {
            return Err(Error::TruncationMismatch(format!(
                "series caps {:?} against ring caps {:?}",
                e.space().caps(),
                self.caps()
            )));
        }
        Ok(())
    }

    /// `c1(O(d_1, ..., d_k))`: the iterated formal sum of `[d_i]_F(t_i)`.
    pub fn chern_of_line_bundle(&self, table: &FglTable<R>, degrees: &[i64]) -> Result<TruncatedSeries<R>> {
        ensure_compatible(self.ring.as_ref(), table.ring().as_ref())?;
        if degrees.len() != self.factors() {
            return Err(Error::LengthMismatch { expected: self.factors(), got: degrees.len() });
        }
        let mut acc = self.zero();
        for (idx, &d) in degrees.iter().enumerate() {
            let var = &self.space.vars()[idx];
            let cap = self.caps()[idx];
            let local = n_series_in(table, d, var, cap)?;
            let term = local.substitute(&self.space, &[self.generator(idx)])?;
            acc = if acc.is_zero() { term } else { formal_sum(table, &acc, &term)? };
        }
        acc.recap(self.space.clone())
    }

    /// Reads `a_ij` (`i <= n`, `j <= m`) off `c = c1(O(1,1))` on `P^n x P^m`.
    pub fn extract_fgl_coeffs(&self, c: &TruncatedSeries<R>) -> Result<FglTable<R>> {
        if self.factors() != 2 {
            return Err(Error::Shape("coefficient extraction needs exactly two factors".into()));
        }
        self.check(c)?;
        if !self.ring.is_zero(&c.constant_term()) {
            return Err(Error::NotFirstChernClass("nonzero constant term".into()));
        }
        let (n, m) = (self.caps()[0], self.caps()[1]);
        for (e, name) in [([1u32, 0u32], "x"), ([0, 1], "y")] {
            let lin = c.coeff(&e);
            if (e[0] as usize) <= n && (e[1] as usize) <= m && lin != self.ring.one() {
                return Err(Error::NotFirstChernClass(format!(
                    "linear coefficient of {name} is {}",
                    self.ring.format(&lin)
                )));
            }
        }
        let mut entries = BTreeMap::new();
        for (e, v) in c.terms() {
            if e[0] >= 1 && e[1] >= 1 {
                entries.insert((e[0] as usize, e[1] as usize), v.clone());
            }
        }
        FglTable::new(Arc::clone(&self.ring), entries, KnownRange::Rectangle(n, m))
    }

    /// `π_*(sum c_E t^E) = sum c_E · prod_i p_(n_i - E_i)`, factor by factor
    /// from the left.
    pub fn pushforward_to_point(&self, e: &TruncatedSeries<R>, cache: &MishchenkoCache<R>) -> Result<R::Elem> {
        self.check(e)?;
        ensure_compatible(self.ring.as_ref(), cache.ring().as_ref())?;
        let needed = self.caps().iter().copied().max().unwrap_or(0);
        if needed > cache.depth() {
            return Err(Error::InsufficientDepth { needed, available: cache.depth() });
        }
        let mut acc = self.ring.zero();
        for (exps, c) in e.terms() {
            let mut term = c.clone();
            for (&a, &n) in exps.iter().zip(self.caps()) {
                term = self.ring.mul(&term, cache.p_checked(n - a as usize)?);
            }
            acc = self.ring.add(&acc, &term);
        }
        Ok(acc)
    }
}
