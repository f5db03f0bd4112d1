use proptest::prelude::*;
use widthlab::{Polytope, UnitDirection};

fn polytope3() -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::array::uniform3(-5.0..5.0f64), 4..20)
        .prop_filter_map("degenerate", |v| Polytope::new(3, &v, 1.0).ok())
}

fn polytope2() -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::array::uniform2(-5.0..5.0f64), 3..15)
        .prop_filter_map("degenerate", |v| Polytope::new(2, &v, 1.0).ok())
}

fn direction3() -> impl Strategy<Value = UnitDirection> {
    (0.0..std::f64::consts::TAU, -1.0..1.0f64).prop_map(|(t, z)| UnitDirection::cylindrical(t, z))
}

proptest! {
    #[test]
    fn width_routes_agree(p in polytope3(), u in direction3()) {
        let w = p.width(&u).unwrap();
        let (g, (i, j)) = p.g_max(&u).unwrap();
        let chord = p.ball_union_chord(&u).unwrap();
        let scale = p.diameter().max(1.0);
        prop_assert!((g.sqrt() - w.raw_width).abs() <= 1e-12 * scale);
        prop_assert!((chord - w.raw_width).abs() <= 1e-12 * scale);
        prop_assert!(i < j);
    }

    #[test]
    fn planar_routes_agree(p in polytope2(), t in 0.0..std::f64::consts::TAU) {
        let u = UnitDirection::planar(t);
        let w = p.width(&u).unwrap();
        let (g, _) = p.g_max(&u).unwrap();
        prop_assert!((g.sqrt() - w.raw_width).abs() <= 1e-12 * p.diameter().max(1.0));
        prop_assert!((p.ball_union_chord(&u).unwrap() - w.raw_width).abs() <= 1e-12 * p.diameter().max(1.0));
    }

    #[test]
    fn width_is_centrally_symmetric(p in polytope3(), u in direction3()) {
        prop_assert_eq!(p.width(&u).unwrap().width.to_bits(), p.width(&-u).unwrap().width.to_bits());
    }

    #[test]
    fn width_is_translation_invariant(
        p in polytope3(), u in direction3(), off in prop::array::uniform3(-10.0..10.0f64)
    ) {
        let q = p.translated(&off).unwrap();
        let d = (q.width(&u).unwrap().width - p.width(&u).unwrap().width).abs();
        prop_assert!(d <= 1e-12 * (1.0 + p.diameter()));
    }

    #[test]
    fn width_scales_linearly(p in polytope3(), u in direction3(), s in 0.1..10.0f64) {
        let a = p.width(&u).unwrap().raw_width;
        let b = p.scaled(s).unwrap().width(&u).unwrap().raw_width;
        prop_assert!((b - s * a).abs() <= 1e-13 * s * a.max(1e-300) + 1e-300);
    }

    #[test]
    fn width_is_bounded_by_diameter(p in polytope3(), u in direction3()) {
        prop_assert!(p.width(&u).unwrap().raw_width <= p.diameter() + 1e-12);
    }

    #[test]
    fn rotating_body_and_direction_together_preserves_width(
        p in polytope3(), u in direction3(), angle in 0.0..std::f64::consts::TAU
    ) {
        let (s, c) = angle.sin_cos();
        let m = [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]];
        let [x, y, z] = u.xyz();
        let v = UnitDirection::new(&[c * x - s * y, s * x + c * y, z]).unwrap();
        let a = p.width(&u).unwrap().raw_width;
        let b = p.transformed(&m).unwrap().width(&v).unwrap().raw_width;
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + p.diameter()));
    }
}
