use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::presentation::{parse_generator_name, GradedElement, LazardPresentation, SCHEMA};
use crate::error::{Error, Result};
use crate::fgl::{FglTable, KnownRange};
use crate::poly::PolyRing;
use crate::ring::CoeffRing;

/// A ring map out of `L_{<=N}`, given by the images of the generators.
/// Generators without an explicit image go to zero.
#[derive(Debug)]
pub struct RingMorphism<S: CoeffRing> {
    source: Arc<LazardPresentation>,
    target: Arc<S>,
    images: Vec<S::Elem>,
    known: KnownRange,
}

impl<S: CoeffRing> Clone for RingMorphism<S> {
    fn clone(&self) -> Self {
        Self {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            images: self.images.clone(),
            known: self.known,
        }
    }
}

impl<S: CoeffRing> RingMorphism<S> {
    /// Checks that every stored relation maps to zero. `images` may name a
    /// generator in either index order; conflicting images are rejected.
    pub fn new(
        source: Arc<LazardPresentation>,
        target: Arc<S>,
        images: BTreeMap<(usize, usize), S::Elem>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<S::Elem>> = vec![None; source.generators().len()];
        for ((i, j), v) in images {
            let k = source.generator_index(i, j)?;
            match &slots[k] {
                Some(prev) if *prev != v => {
                    return Err(Error::NotRingMorphism(format!(
                        "a{i}{j} and a{j}{i} have different images {} and {}",
                        target.format(&v),
                        target.format(prev)
                    )))
                }
                _ => slots[k] = Some(v),
            }
        }
        let images: Vec<S::Elem> = slots.into_iter().map(|s| s.unwrap_or_else(|| target.zero())).collect();
        let n = source.max_weight();
        let m = Self { source, target, images, known: KnownRange::TotalDegree(n + 1) };
        for w in 1..=n {
            for r in m.source.relations(w) {
                let img = r.evaluate(m.target.as_ref(), &m.images);
                if !m.target.is_zero(&img) {
                    return Err(Error::NotRingMorphism(format!(
                        "relation {} maps to {}",
                        m.source.generator_ring().format(r),
                        m.target.format(&img)
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Declares that the image table is exact beyond the truncation, e.g.
    /// because every generator of higher weight is known to map to zero.
    pub fn with_known(mut self, known: KnownRange) -> Self {
        self.known = known;
        self
    }

    pub fn source(&self) -> &Arc<LazardPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<S> {
        &self.target
    }

    pub fn image(&self, i: usize, j: usize) -> Result<&S::Elem> {
        Ok(&self.images[self.source.generator_index(i, j)?])
    }

    pub fn apply(&self, x: &GradedElement) -> S::Elem {
        self.source.lift(x).evaluate(self.target.as_ref(), &self.images)
    }

    /// The image of the universal law.
    pub fn specialize(&self) -> FglTable<S> {
        let mut upper = BTreeMap::new();
        for (g, v) in self.source.generators().iter().zip(&self.images) {
            upper.insert((g.i, g.j), v.clone());
        }
        FglTable::symmetric(Arc::clone(&self.target), upper, self.known).expect("canonical generators")
    }
}

impl RingMorphism<PolyRing> {
    /// All `a_ij -> 0`, over Q.
    pub fn additive(source: Arc<LazardPresentation>) -> Self {
        Self::new(source, Arc::new(PolyRing::constants()), BTreeMap::new())
            .expect("zero map kills every relation")
            .with_known(KnownRange::All)
    }

    /// `a_11 -> -beta`, all others `-> 0`, over `Q[beta]`.
    pub fn multiplicative(source: Arc<LazardPresentation>) -> Self {
        let ring = Arc::new(PolyRing::univariate("beta"));
        let beta = ring.var(0);
        let images = BTreeMap::from([((1, 1), ring.neg(&beta))]);
        Self::new(source, ring, images).expect("multiplicative law is associative").with_known(KnownRange::All)
    }

    /// Reads `{"target": {"vars": [...], "weights": [...]}, "images": {"a11": "...", ...}}`.
    /// Without a target the images are rational numbers.
    pub fn from_json(source: Arc<LazardPresentation>, v: &Value) -> Result<Self> {
        let target = match v.get("target") {
            None | Some(Value::Null) => PolyRing::constants(),
            Some(t) => {
                let vars: Vec<String> = t
                    .get("vars")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("target needs \"vars\"".into()))?
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Parse("variable names are strings".into())))
                    .collect::<Result<_>>()?;
                let weights: Vec<usize> = match t.get("weights").and_then(Value::as_array) {
                    Some(ws) => ws
                        .iter()
                        .map(|x| x.as_u64().map(|w| w as usize).ok_or_else(|| Error::Parse("weights are integers".into())))
                        .collect::<Result<_>>()?,
                    None => vec![1; vars.len()],
                };
                let max_weight = t.get("max_weight").and_then(Value::as_u64).map(|w| w as usize);
                PolyRing::new(vars, weights, max_weight)?
            }
        };
        let target = Arc::new(target);
        let images_json =
            v.get("images").and_then(Value::as_object).ok_or_else(|| Error::Parse("morphism needs \"images\"".into()))?;
        let mut images = BTreeMap::new();
        for (name, val) in images_json {
            let (i, j) =
                parse_generator_name(name).ok_or_else(|| Error::Parse(format!("{name:?} is not a generator a_ij")))?;
            if i + j - 1 > source.max_weight() {
                continue;
            }
            let img = target.elem_from_json(val)?;
            if let Some(prev) = images.get(&(j, i)) {
                if *prev != img && i != j {
                    return Err(Error::NotRingMorphism(format!(
                        "a{i}{j} and a{j}{i} have different images {} and {}",
                        target.format(&img),
                        target.format(prev)
                    )));
                }
            }
            images.insert((i, j), img);
        }
        Self::new(source, target, images)
    }

    pub fn to_json(&self) -> Value {
        let images: serde_json::Map<String, Value> = self
            .source
            .generators()
            .iter()
            .zip(&self.images)
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, v)| (g.name(), self.target.elem_to_json(v)))
            .collect();
        json!({
            "schema": SCHEMA,
            "target": { "vars": self.target.vars(), "weights": self.target.weights(), "max_weight": self.target.max_weight() },
            "images": images,
        })
    }
}
