//! Shared inputs for the criterion benchmarks.

use std::sync::Arc;

use fgl_cobord::lazard::{build_universal_fgl, mishchenko_elements, Mode};
use fgl_cobord::{
    CoeffRing, FglTable, GradedElement, LazardPresentation, LbAlgebra, MishchenkoCache, ProjRing, TruncatedSeries,
};

pub struct Fixture {
    pub pres: Arc<LazardPresentation>,
    pub table: FglTable<LazardPresentation>,
    pub cache: MishchenkoCache<LazardPresentation>,
}

pub fn fixture(n: usize) -> Fixture {
    let (pres, table) = build_universal_fgl(n).expect("presentation builds");
    let cache = mishchenko_elements(&table, n, Mode::Integral).expect("classes are integral");
    Fixture { pres, table, cache }
}

impl Fixture {
    /// A product algebra with an empty memo.
    pub fn algebra(&self) -> LbAlgebra<LazardPresentation> {
        LbAlgebra::new(self.table.clone(), self.cache.clone(), self.pres.max_weight()).expect("depth fits")
    }

    /// Deterministic dense element: the sum of all basis vectors of weight <= N.
    pub fn dense_element(&self) -> GradedElement {
        let mut acc = self.pres.zero();
        for (w, &rank) in self.pres.ranks().iter().enumerate() {
            for k in 0..rank {
                acc = self.pres.add(&acc, &self.pres.basis_element(w, k).expect("in range"));
            }
        }
        acc
    }

    /// `sum_a x t^a` on `P^n` with `x` the dense element.
    pub fn dense_class(&self, r: &ProjRing<LazardPresentation>) -> TruncatedSeries<LazardPresentation> {
        let x = self.dense_element();
        let n = r.caps()[0];
        TruncatedSeries::from_terms(Arc::clone(&self.pres), r.space().clone(), (0..=n).map(|a| (vec![a as u32], x.clone())))
    }
}
