//! Sparse multivariate polynomials with rational coefficients, optionally
//! truncated by weight.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{format_rational, parse_rational, rational_from_json, CoeffRing, Weight};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Poly {
    #[serde(with = "crate::linalg::entry_list")]
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect() }
    }

    /// Product, keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if keep(&e) {
                    out.add_term(e, c1 * c2);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    /// Substitutes ring elements for the variables.
    pub fn evaluate<R: CoeffRing>(&self, ring: &R, values: &[R::Elem]) -> R::Elem {
        let mut powers: Vec<Vec<R::Elem>> = values.iter().map(|v| vec![ring.one(), v.clone()]).collect();
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut term = ring.from_rational(c);
            for (var, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[var].len() <= k as usize {
                    let next = ring.mul(powers[var].last().unwrap(), &values[var]);
                    powers[var].push(next);
                }
                term = ring.mul(&term, &powers[var][k as usize]);
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    /// Human-readable form with the given variable names, highest degree first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Exponents, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| compare_grlex(b, a));
        let mut out = String::new();
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mono = format_monomial(e, names);
            let abs = c.abs();
            if n == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&format_rational(&abs)),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

/// Graded lexicographic comparison: total degree first, then lexicographic.
pub fn compare_grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn format_monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
        .collect();
    parts.join("*")
}

/// One parsed term: a coefficient and a list of `(name, exponent)` factors.
pub type RawTerm = (BigRational, Vec<(String, u32)>);

/// Parses expressions such as `2*a11^2*a12 - 3/2*a13 + 1`.
pub fn parse_terms(s: &str) -> Result<Vec<RawTerm>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    if chars.is_empty() {
        return Err(err("empty expression"));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < chars.len() {
        let mut sign = BigRational::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !terms.is_empty() {
            return Err(err("expected '+' or '-'"));
        }
        let mut coeff = sign;
        let mut factors = Vec::new();
        let mut first = true;
        loop {
            if pos >= chars.len() {
                return Err(err("dangling operator"));
            }
            if chars[pos].is_ascii_digit() {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                    pos += 1;
                }
                let text: String = chars[start..pos].iter().collect();
                coeff *= parse_rational(&text)?;
            } else if chars[pos].is_alphabetic() {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let mut exp = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let text: String = chars[start..pos].iter().collect();
                    exp = text.parse().map_err(|_| err("bad exponent"))?;
                }
                factors.push((name, exp));
            } else if first && chars[pos] == '(' {
                return Err(err("parentheses are not supported"));
            } else {
                return Err(err(&format!("unexpected character {:?}", chars[pos])));
            }
            first = false;
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        terms.push((coeff, factors));
    }
    Ok(terms)
}

/// Polynomial ring over Q in named, weighted variables, optionally truncated:
/// monomials of weight above `max_weight` are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    vars: Vec<String>,
    weights: Vec<usize>,
    max_weight: Option<usize>,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, weights: Vec<usize>, max_weight: Option<usize>) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(Error::LengthMismatch { expected: vars.len(), got: weights.len() });
        }
        Ok(Self { vars, weights, max_weight })
    }

    /// The rationals, with the integers as integral structure.
    pub fn constants() -> Self {
        Self { vars: Vec::new(), weights: Vec::new(), max_weight: None }
    }

    /// `Q[name]` with `name` of weight 1, untruncated.
    pub fn univariate(name: &str) -> Self {
        Self { vars: vec![name.to_string()], weights: vec![1], max_weight: None }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.max_weight
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn monomial_weight(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.weights).map(|(&k, &w)| k as usize * w).sum()
    }

    fn keep(&self, e: &[u32]) -> bool {
        self.max_weight.is_none_or(|m| self.monomial_weight(e) <= m)
    }

    pub fn var(&self, idx: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[idx] = 1;
        let p = Poly::monomial(e, BigRational::one());
        self.truncate(&p)
    }

    pub fn var_by_name(&self, name: &str) -> Option<Poly> {
        self.vars.iter().position(|v| v == name).map(|i| self.var(i))
    }

    pub fn truncate(&self, p: &Poly) -> Poly {
        Poly { terms: p.terms.iter().filter(|(e, _)| self.keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Parses a polynomial in this ring's variables. Monomials beyond the
    /// truncation are rejected, not dropped.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        let mut out = Poly::zero();
        for (c, factors) in parse_terms(s)? {
            let mut e = vec![0u32; self.nvars()];
            for (name, k) in factors {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                e[idx] += k;
            }
            if !self.keep(&e) {
                return Err(Error::BeyondTruncation(format!("monomial of weight {} in {s:?}", self.monomial_weight(&e))));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl CoeffRing for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }

    fn one(&self) -> Poly {
        Poly::constant(self.nvars(), BigRational::one())
    }

    fn from_rational(&self, q: &BigRational) -> Poly {
        Poly::constant(self.nvars(), q.clone())
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_filtered(b, |e| self.keep(e))
    }

    fn scale(&self, a: &Poly, q: &BigRational) -> Poly {
        a.scale(q)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn weight(&self, a: &Poly) -> Weight {
        a.terms().fold(Weight::Zero, |w, (e, _)| w.join(Weight::Homogeneous(self.monomial_weight(e))))
    }

    fn integral_coordinates(&self, a: &Poly) -> Vec<BigRational> {
        a.terms().map(|(_, c)| c.clone()).collect()
    }

    fn compatible(&self, other: &Self) -> bool {
        self == other
    }

    fn truncation(&self) -> Option<usize> {
        self.max_weight
    }

    fn format(&self, a: &Poly) -> String {
        a.display(&self.vars)
    }

    fn elem_to_json(&self, a: &Poly) -> Value {
        Value::String(self.format(a))
    }

    fn elem_from_json(&self, v: &Value) -> Result<Poly> {
        match v {
            Value::String(s) => self.parse(s),
            other => Ok(self.from_rational(&rational_from_json(other)?)),
        }
    }
}
