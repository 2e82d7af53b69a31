#![allow(dead_code)]

pub mod oracles;

use std::sync::{Arc, OnceLock};

use fgl_cobord::lazard::{build_universal_fgl, mishchenko_elements, LazardPresentation, Mode, RingMorphism};
use fgl_cobord::lbmodule::LbAlgebra;
use fgl_cobord::{CoeffRing, FglTable, GradedElement, MishchenkoCache, PolyRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const N: usize = 6;

pub struct Universal {
    pub pres: Arc<LazardPresentation>,
    pub table: FglTable<LazardPresentation>,
    pub cache: MishchenkoCache<LazardPresentation>,
    pub alg: LbAlgebra<LazardPresentation>,
}

pub fn universal() -> &'static Universal {
    static U: OnceLock<Universal> = OnceLock::new();
    U.get_or_init(|| {
        let (pres, table) = build_universal_fgl(N).unwrap();
        let cache = mishchenko_elements(&table, N, Mode::Integral).unwrap();
        let alg = LbAlgebra::new(table.clone(), cache.clone(), N).unwrap();
        Universal { pres, table, cache, alg }
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Random element of `L_{<=N}` with small integer coordinates; about half
/// of the weight components are left empty.
pub fn random_element(pres: &LazardPresentation, rng: &mut ChaCha8Rng) -> GradedElement {
    let coords = (0..=pres.max_weight())
        .map(|w| {
            let rank = pres.graded_component(w).unwrap().0;
            let live = rng.gen_bool(0.5);
            (0..rank).map(|_| if live { q(rng.gen_range(-4..=4)) } else { q(0) }).collect()
        })
        .collect();
    pres.from_coords(coords).unwrap()
}

/// Random homogeneous element of weight `w`.
pub fn random_homogeneous(pres: &LazardPresentation, w: usize, rng: &mut ChaCha8Rng) -> GradedElement {
    let mut coords: Vec<Vec<BigRational>> =
        (0..=pres.max_weight()).map(|k| vec![q(0); pres.graded_component(k).unwrap().0]).collect();
    coords[w] = (0..coords[w].len()).map(|_| q(rng.gen_range(-3..=3))).collect();
    pres.from_coords(coords).unwrap()
}

/// A random formal group law over `Q[b]` (weight of `b` is 1), built from a
/// random logarithm `t + sum c_k b^k t^(k+1)`; the images of the `a_ij`
/// define a ring map out of `L_{<=N}`.
pub fn random_specialization(pres: &Arc<LazardPresentation>, rng: &mut ChaCha8Rng) -> RingMorphism<PolyRing> {
    let cs = random_log(pres.max_weight(), rng);
    specialization_from_log(pres, &cs)
}

/// `c_1, ..., c_n`, small rationals.
pub fn random_log(n: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    (1..=n).map(|_| BigRational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=2).into())).collect()
}

pub fn specialization_from_log(pres: &Arc<LazardPresentation>, cs: &[BigRational]) -> RingMorphism<PolyRing> {
    let ring = Arc::new(PolyRing::new(vec!["b".into()], vec![1], Some(pres.max_weight())).unwrap());
    let coeffs = oracles::fgl_from_log_coefficients(cs, pres.max_weight() + 1);
    let mut images = std::collections::BTreeMap::new();
    for ((i, j), c) in coeffs {
        if i <= j && i + j - 1 <= pres.max_weight() {
            images.insert((i, j), fgl_cobord::Poly::monomial(vec![(i + j - 1) as u32], c));
        }
    }
    RingMorphism::new(Arc::clone(pres), ring, images).unwrap()
}

pub fn additive() -> (RingMorphism<PolyRing>, LbAlgebra<PolyRing>) {
    let u = universal();
    let m = RingMorphism::additive(Arc::clone(&u.pres));
    let table = m.specialize();
    let cache = mishchenko_elements(&table, 8, Mode::Integral).unwrap();
    let alg = LbAlgebra::new(table, cache, 8).unwrap();
    (m, alg)
}

pub fn multiplicative() -> (RingMorphism<PolyRing>, LbAlgebra<PolyRing>) {
    let u = universal();
    let m = RingMorphism::multiplicative(Arc::clone(&u.pres));
    let table = m.specialize();
    let cache = mishchenko_elements(&table, 8, Mode::Integral).unwrap();
    let alg = LbAlgebra::new(table, cache, 8).unwrap();
    (m, alg)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn elem_eq<R: CoeffRing>(r: &R, a: &R::Elem, b: &R::Elem) -> bool {
    r.is_zero(&r.sub(a, b))
}
