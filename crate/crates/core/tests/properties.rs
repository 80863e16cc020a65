use std::f64::consts::TAU;

use mixedform::forms::DEFAULT_ZERO_THRESHOLD;
use mixedform::polygon::{self, NormalFan2D};
use mixedform::{fixtures, fuchsian, polytope, surface};
use proptest::prelude::*;

/// A convex fan from `n` turning-angle weights, each angle kept in
/// `(0.15, π − 0.15)`.
fn fan_strategy() -> impl Strategy<Value = NormalFan2D> {
    (3usize..=10).prop_flat_map(|n| {
        (prop::collection::vec(1.0f64..2.0, n), 0.0..TAU).prop_filter_map("turning angles in range", |(w, start)| {
            let s: f64 = w.iter().sum();
            let t: Vec<f64> = w.iter().map(|x| TAU * x / s).collect();
            if t.iter().all(|a| *a > 0.15 && *a < std::f64::consts::PI - 0.15) {
                NormalFan2D::from_turning_angles(start, &t).ok()
            } else {
                None
            }
        })
    })
}

fn support_in_cone(fan: &NormalFan2D, seed: u64) -> Vec<f64> {
    let rel = (1.2 / fan.len() as f64).min(0.4);
    fixtures::random_polygon_support(fan, rel, 0.5, &mut fixtures::rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polygon_signature_is_lorentzian(fan in fan_strategy()) {
        let sig = polygon::area_form(&fan).unwrap().signature(DEFAULT_ZERO_THRESHOLD).unwrap();
        prop_assert_eq!(sig.as_tuple(), (1, 2, fan.len() - 3));
    }

    #[test]
    fn edge_lengths_are_linear(fan in fan_strategy(), a in -2.0f64..2.0, b in -2.0f64..2.0, seed in any::<u64>()) {
        let h = support_in_cone(&fan, seed);
        let k = support_in_cone(&fan, seed ^ 0x5a5a);
        let combo: Vec<f64> = h.iter().zip(&k).map(|(x, y)| a * x + b * y).collect();
        let lc = polygon::edge_lengths(&fan, &combo).unwrap();
        let (lh, lk) = (polygon::edge_lengths(&fan, &h).unwrap(), polygon::edge_lengths(&fan, &k).unwrap());
        for i in 0..fan.len() {
            let scale = a.abs() * lh[i].abs() + b.abs() * lk[i].abs() + 1.0;
            prop_assert!((lc[i] - a * lh[i] - b * lk[i]).abs() < 1e-13 * scale);
        }
    }

    #[test]
    fn edge_vectors_close_up(fan in fan_strategy(), seed in any::<u64>()) {
        let h = support_in_cone(&fan, seed);
        let c = polygon::double_chart_embedding(&fan, &h).unwrap();
        let a = polygon::area(&fan, &h).unwrap();
        prop_assert!((c.area - a).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn minkowski_inequality_holds(fan in fan_strategy(), seed in any::<u64>()) {
        let h = support_in_cone(&fan, seed);
        let k = support_in_cone(&fan, seed.wrapping_add(1));
        let r = polygon::minkowski_check(&fan, &h, &k).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.normalized() >= -1e-12);
    }

    #[test]
    fn mixed_area_is_translation_invariant(fan in fan_strategy(), x in -3.0f64..3.0, y in -3.0f64..3.0, seed in any::<u64>()) {
        let h = support_in_cone(&fan, seed);
        let k = support_in_cone(&fan, seed ^ 7);
        let hx = polygon::point_support_vector(&fan, [x, y]);
        let shifted: Vec<f64> = h.iter().zip(&hx).map(|(a, b)| a + b).collect();
        let before = polygon::mixed_area(&fan, &h, &k).unwrap();
        let after = polygon::mixed_area(&fan, &shifted, &k).unwrap();
        prop_assert!((before - after).abs() < 1e-11 * (1.0 + before.abs() + x.abs() + y.abs()));
    }

    #[test]
    fn flips_preserve_the_metric(seed in any::<u64>(), count in 1usize..20) {
        let mesh = fixtures::cube_mesh();
        let mut rng = fixtures::rng(seed);
        let steps = fixtures::random_flips(&mesh, count, &mut rng).unwrap();
        let flipped = &steps.last().unwrap().2;
        let (a0, a1) = (surface::total_area(&mesh), surface::total_area(flipped));
        prop_assert!((a0 - a1).abs() < 1e-12 * a0);
        let (c0, c1) = (surface::cone_data(&mesh).unwrap(), surface::cone_data(flipped).unwrap());
        for (x, y) in c0.sorted_angles().iter().zip(&c1.sorted_angles()) {
            prop_assert!((x - y).abs() < 1e-12 * x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn polytope_area_identity(seed in any::<u64>(), m in 8usize..=12) {
        let (fan, h) = fixtures::random_simple_polytope(m, 0.2, &mut fixtures::rng(seed));
        let a = polytope::boundary_area_form(&fan).unwrap();
        prop_assert_eq!(a.signature(DEFAULT_ZERO_THRESHOLD).unwrap().as_tuple(), (1, 3, m - 4));
        let v = polytope::volume_form(&fan).unwrap();
        let direct = polytope::boundary_area(&fan, &h).unwrap();
        prop_assert!((v.eval(&[1.0; 14][..m], &h, &h) * 3.0 - direct).abs() < 1e-10 * direct);
        prop_assert!((a.eval(&h) - direct).abs() < 1e-10 * direct);
    }

    #[test]
    fn quotient_hessian_is_dominant(seed in any::<u64>(), m in 2usize..=4) {
        let g = fixtures::random_quotient_fan(m, &mut fixtures::rng(seed)).unwrap();
        let fan = g.input.fan().unwrap();
        let hess = fuchsian::covolume_hessian(&fan, &vec![1.0; m]).unwrap();
        prop_assert!(fuchsian::diagonal_dominance_margin(&hess) > 0.0);
        prop_assert!(fuchsian::fuchsian_area_form(&fan).is_ok());
    }
}
