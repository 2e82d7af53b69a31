mod common;

use std::sync::Arc;

use common::{oracles, random_element, random_log, rng, specialization_from_log, universal, N};
use fgl_cobord::fgl::formal_sum;
use fgl_cobord::{CoeffRing, Error, Poly, ProjRing, TruncatedSeries};
use rand::Rng;

#[test]
fn chern_classes_associate_on_triple_products() {
    let u = universal();
    for n in 1..=4 {
        let r = ProjRing::new(Arc::clone(&u.pres), &[n, n, n]).unwrap();
        let (x, y, z) = (r.generator(0), r.generator(1), r.generator(2));
        let left = formal_sum(&u.table, &formal_sum(&u.table, &x, &y).unwrap(), &z).unwrap();
        let right = formal_sum(&u.table, &x, &formal_sum(&u.table, &y, &z).unwrap()).unwrap();
        assert_eq!(left, right, "caps ({n}, {n}, {n})");
        assert_eq!(r.chern_of_line_bundle(&u.table, &[1, 1, 1]).unwrap(), left);
        let xy = r.chern_of_line_bundle(&u.table, &[1, 1, 0]).unwrap();
        assert_eq!(xy, formal_sum(&u.table, &x, &y).unwrap());
    }
}

#[test]
fn chern_classes_of_twists_match_logarithm_oracle() {
    let u = universal();
    let mut g = rng(31);
    for _ in 0..5 {
        let cs = random_log(N, &mut g);
        let m = specialization_from_log(&u.pres, &cs);
        let table = m.specialize();
        let target = Arc::clone(m.target());
        let r = ProjRing::new(Arc::clone(&target), &[N]).unwrap();
        for d in -3..=3 {
            let c = r.chern_of_line_bundle(&table, &[d]).unwrap();
            let expected = oracles::n_series_from_log(&cs, d, N);
            for (k, coeff) in expected.iter().enumerate() {
                let want = if k == 0 { Poly::zero() } else { Poly::monomial(vec![k as u32 - 1], coeff.clone()) };
                assert_eq!(c.coeff(&[k as u32]), want, "[{d}] at t^{k}");
            }
        }
    }
}

#[test]
fn extraction_recovers_specialized_tables() {
    let u = universal();
    let mut g = rng(32);
    for _ in 0..5 {
        let m = specialization_from_log(&u.pres, &random_log(N, &mut g));
        let table = m.specialize();
        for (n, k) in [(1, 1), (2, 3), (3, 4), (4, 3)] {
            let r = ProjRing::new(Arc::clone(m.target()), &[n, k]).unwrap();
            let c = r.chern_of_line_bundle(&table, &[1, 1]).unwrap();
            let got = r.extract_fgl_coeffs(&c).unwrap();
            assert!(got.agrees_with(&table, n, k).unwrap(), "caps ({n}, {k})");
            assert!(got.coeff(n + 1, 1).is_err());
        }
    }
}

#[test]
fn extraction_is_symmetric_in_factor_order() {
    let u = universal();
    for (n, m) in [(1, 5), (2, 4), (3, 3)] {
        let r = ProjRing::new(Arc::clone(&u.pres), &[n, m]).unwrap();
        let s = ProjRing::new(Arc::clone(&u.pres), &[m, n]).unwrap();
        let a = r.extract_fgl_coeffs(&r.chern_of_line_bundle(&u.table, &[1, 1]).unwrap()).unwrap();
        let b = s.extract_fgl_coeffs(&s.chern_of_line_bundle(&u.table, &[1, 1]).unwrap()).unwrap();
        for i in 1..=n {
            for j in 1..=m {
                assert_eq!(a.coeff(i, j).unwrap(), b.coeff(j, i).unwrap());
                assert_eq!(a.coeff(i, j).unwrap(), u.table.coeff(i, j).unwrap());
            }
        }
    }
}

#[test]
fn extraction_errors() {
    let u = universal();
    let r = ProjRing::new(Arc::clone(&u.pres), &[2, 2]).unwrap();
    let doubled = r.generator(0).scale(&u.pres.from_int(2)).add(&r.generator(1)).unwrap();
    assert!(matches!(r.extract_fgl_coeffs(&doubled), Err(Error::NotFirstChernClass(_))));
    let single = ProjRing::new(Arc::clone(&u.pres), &[2]).unwrap();
    assert!(matches!(single.extract_fgl_coeffs(&single.generator(0)), Err(Error::Shape(_))));
    assert!(matches!(r.chern_of_line_bundle(&u.table, &[1]), Err(Error::LengthMismatch { expected: 2, got: 1 })));
    let other = ProjRing::new(Arc::clone(&u.pres), &[3, 2]).unwrap();
    assert!(r.check(&other.generator(0)).is_err());
}

#[test]
fn pushforward_is_linear() {
    let u = universal();
    let r = ProjRing::new(Arc::clone(&u.pres), &[3, 2]).unwrap();
    let mut g = rng(33);
    let random = |g: &mut rand_chacha::ChaCha8Rng| {
        let mut terms = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=2u32 {
                if g.gen_bool(0.5) {
                    terms.push((vec![a, b], random_homogeneous_low(g)));
                }
            }
        }
        TruncatedSeries::from_terms(Arc::clone(&u.pres), r.space().clone(), terms)
    };
    for _ in 0..30 {
        let (e, f) = (random(&mut g), random(&mut g));
        let (a, b) = (random_element(&u.pres, &mut g), random_element(&u.pres, &mut g));
        let combo = e.scale(&a).add(&f.scale(&b)).unwrap();
        let lhs = r.pushforward_to_point(&combo, &u.cache).unwrap();
        let pe = r.pushforward_to_point(&e, &u.cache).unwrap();
        let pf = r.pushforward_to_point(&f, &u.cache).unwrap();
        assert_eq!(lhs, u.pres.add(&u.pres.mul(&a, &pe), &u.pres.mul(&b, &pf)));
    }
}

fn random_homogeneous_low(g: &mut rand_chacha::ChaCha8Rng) -> fgl_cobord::GradedElement {
    let u = universal();
    common::random_homogeneous(&u.pres, g.gen_range(0..=2), g)
}

#[test]
fn pushforward_of_linear_subspaces() {
    let u = universal();
    for n in 0..=N {
        let r = ProjRing::new(Arc::clone(&u.pres), &[n]).unwrap();
        assert_eq!(r.pushforward_to_point(&r.hyperplane_divisor_power(0, n).unwrap(), &u.cache).unwrap(), u.pres.one());
        for a in 0..=n {
            let t = r.hyperplane_divisor_power(0, a).unwrap();
            assert_eq!(&r.pushforward_to_point(&t, &u.cache).unwrap(), u.cache.p(n - a).unwrap());
        }
        assert!(r.hyperplane_divisor_power(0, n + 1).unwrap().is_zero());
    }
    let r = ProjRing::new(Arc::clone(&u.pres), &[2, 3]).unwrap();
    let mixed = r.hyperplane_divisor_power(0, 1).unwrap().mul(&r.hyperplane_divisor_power(1, 2).unwrap()).unwrap();
    let expected = u.pres.mul(u.cache.p(1).unwrap(), u.cache.p(1).unwrap());
    assert_eq!(r.pushforward_to_point(&mixed, &u.cache).unwrap(), expected);
    assert_eq!(r.pushforward_to_point(&r.one(), &u.cache).unwrap(), u.pres.mul(u.cache.p(2).unwrap(), u.cache.p(3).unwrap()));
}
