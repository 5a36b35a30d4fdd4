use num_traits::{Signed, Zero};
use polygap::extremal::random::{sample_convex_polygon, sample_convex_polygon_exact};
use polygap::geom::{triangle_area, wedge};
use polygap::inscribed::{max_inscribed_bruteforce, max_inscribed_dp, peel_chain};
use polygap::{AffineMap, ConvexPolygon, Rational, Scalar, Vec2};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn vec2() -> impl Strategy<Value = Vec2<Rational>> {
    (rat(), rat()).prop_map(|(x, y)| Vec2::new(x, y))
}

fn exact_polygon(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ConvexPolygon<Rational>> {
    (n, any::<u64>()).prop_map(|(n, seed)| {
        sample_convex_polygon_exact(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_antisymmetric(u in vec2(), v in vec2()) {
        prop_assert_eq!(wedge(&u, &v), -wedge(&v, &u));
        prop_assert!(wedge(&u, &u).is_zero());
    }

    #[test]
    fn wedge_bilinear(u in vec2(), v in vec2(), w in vec2(), a in rat(), b in rat()) {
        let lhs = wedge(&u.scale(&a).add(&v.scale(&b)), &w);
        let rhs = a * wedge(&u, &w) + b * wedge(&v, &w);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn area_is_anchor_independent(p in exact_polygon(3..=10), x in vec2()) {
        prop_assert_eq!(p.area_about(&x), p.area());
        prop_assert_eq!(p.area_about(&Vec2::zero()), p.area());
    }

    #[test]
    fn every_ear_is_positive_and_smaller_than_the_polygon(p in exact_polygon(3..=12)) {
        let area = p.area();
        for e in p.ear_areas() {
            prop_assert!(e.is_positive());
            if p.len() > 3 {
                prop_assert!(e < area);
            }
        }
    }

    #[test]
    fn affine_maps_preserve_ratios(
        p in exact_polygon(4..=9),
        m in [[rat(), rat()], [rat(), rat()]],
        t in vec2(),
    ) {
        let map = AffineMap::new(m, t);
        prop_assume!(map.is_ok());
        let map = map.unwrap();
        let image = map.apply(&p).unwrap();
        let det = map.det().abs();
        let n = p.len();
        prop_assert_eq!(image.area(), p.area() * det.clone());
        let (before, after) = (p.ear_areas(), image.ear_areas());
        let mirrored = map.det().is_negative();
        for k in 0..n {
            let src = if mirrored { (n - k) % n } else { k };
            prop_assert_eq!(after[k].clone(), before[src].clone() * det.clone());
        }
        let (i0, r0) = p.min_ear_ratio();
        let (i1, r1) = image.min_ear_ratio();
        prop_assert_eq!(r0, r1);
        if !mirrored {
            prop_assert_eq!(i0, i1);
        } else {
            prop_assert_eq!(after[i1].clone(), before[(n - i1) % n].clone() * det);
        }
    }

    #[test]
    fn dp_dominates_every_subset(p in exact_polygon(4..=10), picks in proptest::collection::vec(any::<bool>(), 10)) {
        let n = p.len();
        let subset: Vec<usize> = (0..n).filter(|&i| picks[i]).collect();
        prop_assume!(subset.len() >= 3);
        let best = max_inscribed_dp(&p, subset.len()).unwrap();
        prop_assert!(best.area >= p.select(&subset).area());
    }

    #[test]
    fn peel_chain_product_is_area_ratio(p in exact_polygon(5..=11), m in 3usize..5) {
        let chain = peel_chain(&p, m).unwrap();
        prop_assert_eq!(chain.last().len(), m);
        prop_assert_eq!(chain.product(), chain.last().area() / p.area());
        for (step, k) in chain.removed_indices.iter().enumerate() {
            let (argmin, _) = chain.polygons[step].min_ear_ratio();
            prop_assert_eq!(*k, argmin);
        }
    }

    #[test]
    fn float_dp_matches_bruteforce(seed in any::<u64>(), n in 4usize..=11, m_off in 0usize..8) {
        let p = sample_convex_polygon(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let m = 3 + m_off % (n - 2);
        let dp = max_inscribed_dp(&p, m).unwrap();
        let bf = max_inscribed_bruteforce(&p, m).unwrap();
        prop_assert!((dp.area - bf.area).abs() <= 1e-12 * bf.area);
    }
}

#[test]
fn triangle_area_is_half_cross() {
    let o = Vec2::<Rational>::from_ints(0, 0);
    let a = Vec2::from_ints(2, 1);
    let b = Vec2::from_ints(3, 4);
    assert_eq!(triangle_area(&o, &a, &b), wedge(&a, &b));
    assert_eq!(wedge(&a, &b), Rational::from_ratio(5, 2));
}

#[test]
fn regular_polygon_min_ear_closed_form() {
    for n in 3..=40 {
        let p = ConvexPolygon::<f64>::regular(n);
        let expected = 4.0 / n as f64 * (std::f64::consts::PI / n as f64).sin().powi(2);
        let (_, r) = p.min_ear_ratio();
        assert!((r - expected).abs() <= 1e-12 * expected, "n = {n}");
        assert!((p.area().to_f64() - n as f64 / 2.0 * (2.0 * std::f64::consts::PI / n as f64).sin()).abs() < 1e-12);
    }
}
