use polygap::families::{HexagonParams, PentagonParams, HEXAGON_QUADS};
use polygap::geom::{triangle_area, wedge};
use polygap::symcheck::{
    derive_hexagon_formulas, derive_pentagon_formulas, Assignment, MultiPoly, Substitution, Var,
};
use polygap::{Rational, Scalar, Vec2};
use proptest::prelude::*;

fn pos() -> impl Strategy<Value = Rational> {
    (1i64..400, 1i64..40).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn small() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..7).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

/// Shoelace over raw vertices, no convexity required.
fn shoelace(vs: &[Vec2<Rational>]) -> Rational {
    let n = vs.len();
    (0..n).fold(Rational::from_i64(0), |acc, k| acc + wedge(&vs[k], &vs[(k + 1) % n]))
}

fn pick(vs: &[Vec2<Rational>], labels: &str) -> Vec<Vec2<Rational>> {
    labels.bytes().map(|c| vs[(c - b'A') as usize].clone()).collect()
}

fn assignment(names: &[&str], values: &[Rational]) -> Assignment {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| (Var::from_name(n).unwrap(), v.clone()))
        .collect()
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (small(), proptest::collection::vec((0usize..6, 0u32..3), 0..3));
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, vars)| {
            let mono = vars.into_iter().fold(MultiPoly::constant(c), |m, (v, e)| {
                &m * &MultiPoly::var(Var::from_name(["a", "b", "c", "d", "e", "f"][v]).unwrap()).pow(e)
            });
            &acc + &mono
        })
    })
}

const ABCDEF: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pentagon_formulas_match_geometry(a in pos(), b in pos(), c in pos(), d in pos()) {
        let p = PentagonParams::new(a, b, c, d).unwrap();
        let vs = p.vertices();
        prop_assert_eq!(p.area_formula(), shoelace(&vs));
        let ears: Vec<Rational> = (0..5)
            .map(|k| triangle_area(&vs[(k + 4) % 5], &vs[k], &vs[(k + 1) % 5]))
            .collect();
        for (i, f) in p.ear_formulas().into_iter().enumerate() {
            prop_assert_eq!(f, ears[(i + 1) % 5].clone());
        }
        for (f, name) in p.triangle_formulas().into_iter().zip(["ABD", "ACD", "BCE"]) {
            prop_assert_eq!(f, shoelace(&pick(&vs, name)));
        }
    }

    #[test]
    fn hexagon_formulas_match_geometry(xs in proptest::array::uniform6(pos())) {
        let h = HexagonParams::from_array(xs).unwrap();
        let vs = h.vertices();
        prop_assert_eq!(h.area_formula(), shoelace(&vs));
        let ears: Vec<Rational> = (0..6)
            .map(|k| triangle_area(&vs[(k + 5) % 6], &vs[k], &vs[(k + 1) % 6]))
            .collect();
        for (i, f) in h.ear_formulas().into_iter().enumerate() {
            prop_assert_eq!(f, ears[(i + 1) % 6].clone());
        }
        prop_assert_eq!(h.fab_formula(), ears[0].clone());
        for (q, name) in h.quad_formulas().into_iter().zip(HEXAGON_QUADS) {
            prop_assert_eq!(q, shoelace(&pick(&vs, name)));
        }
    }

    #[test]
    fn derived_polynomials_evaluate_to_family_values(xs in proptest::array::uniform6(pos())) {
        let pent = derive_pentagon_formulas().unwrap();
        let p = PentagonParams::new(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone()).unwrap();
        let at = assignment(&ABCDEF[..4], &xs[..4]);
        prop_assert_eq!(pent["area"].eval(&at).unwrap(), p.area_formula());
        for (name, v) in ["ABC", "BCD", "CDE", "DEA", "EAB"].iter().zip(p.ear_formulas()) {
            prop_assert_eq!(pent[*name].eval(&at).unwrap(), v);
        }

        let hex = derive_hexagon_formulas().unwrap();
        let h = HexagonParams::from_array(xs.clone()).unwrap();
        let at = assignment(&ABCDEF, &xs);
        prop_assert_eq!(hex["H"].eval(&at).unwrap(), h.area_formula());
        for (i, t) in h.t_values().into_iter().enumerate() {
            prop_assert_eq!(hex[&format!("T{}", i + 1)].eval(&at).unwrap(), t);
        }
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::one(), p.clone());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        p in poly(),
        q in poly(),
        xs in proptest::array::uniform6(small()),
    ) {
        let at = assignment(&ABCDEF, &xs);
        let (pv, qv) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!((&p + &q).eval(&at).unwrap(), pv.clone() + qv.clone());
        prop_assert_eq!((&p * &q).eval(&at).unwrap(), pv * qv);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in poly(),
        images in proptest::array::uniform2(poly()),
        xs in proptest::array::uniform6(small()),
    ) {
        let targets = [Var::from_name("a").unwrap(), Var::from_name("d").unwrap()];
        let sub: Substitution = targets.iter().cloned().zip(images.iter().cloned()).collect();
        let at = assignment(&ABCDEF, &xs);
        let mut shifted = at.clone();
        for (v, img) in &sub {
            shifted.insert(*v, img.eval(&at).unwrap());
        }
        prop_assert_eq!(p.substitute(&sub).eval(&at).unwrap(), p.eval(&shifted).unwrap());
    }
}
