use proptest::prelude::*;

use prolate::bounds::{eig_envelope, width_bound_thm1, width_bound_thm2};
use prolate::chebsinc::{cheb_interpolate, chebyshev_nodes, interpolation_error_bound};
use prolate::displacement::{build_xl, mobius_normalize, zolotarev_bound, SetPair, ZolotarevSetPair};
use prolate::kernel::{build_prolate_matrix, sinc_entry, toeplitz_apply};
use prolate::spectrum::{dense_spectrum, transition_width, tridiagonal_spectrum};
use prolate::verify::order_violations;
use prolate::ProlateParams;

fn bandwidth() -> impl Strategy<Value = f64> {
    0.001f64..0.499
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn sinc_symmetric_and_bounded(w in bandwidth(), d in -100_000i64..100_000) {
        let v = sinc_entry(w, d).unwrap();
        prop_assert_eq!(v, sinc_entry(w, -d).unwrap());
        let cap = if d == 0 { 2.0 * w } else { (2.0 * w).min(2.0 / (std::f64::consts::PI * d.unsigned_abs() as f64)) };
        prop_assert!(v.abs() <= cap * (1.0 + 1e-15));
    }

    #[test]
    fn toeplitz_matches_dense(n in 1usize..40, w in bandwidth(), seed in any::<u64>()) {
        let p = ProlateParams::new(n, w).unwrap();
        let x: Vec<f64> = (0..n).map(|i| ((seed.wrapping_mul(31).wrapping_add(i as u64) % 1000) as f64) / 500.0 - 1.0).collect();
        let fast = toeplitz_apply(&p.kernel().first_column(n), &x).unwrap();
        let slow = build_prolate_matrix(&p).unwrap().dot(&ndarray::Array1::from(x));
        for (a, b) in fast.iter().zip(slow.iter()) {
            prop_assert!((a - b).abs() <= 1e-13);
        }
    }

    #[test]
    fn spectrum_trace_order_and_routes(n in 1usize..48, w in bandwidth()) {
        let p = ProlateParams::new(n, w).unwrap();
        let t = tridiagonal_spectrum(&p, 0, n - 1).unwrap();
        let d = dense_spectrum(&p).unwrap();
        let trace: f64 = t.entries.iter().map(|e| e.lambda).sum();
        prop_assert!((trace - 2.0 * n as f64 * w).abs() <= 1e-11 * n as f64);
        prop_assert_eq!(order_violations(&t), 0);
        for (a, b) in t.entries.iter().zip(&d.entries) {
            prop_assert!((a.lambda - b.lambda).abs() <= 1e-10);
            prop_assert!(a.lambda >= 0.0 && a.lambda <= 1.0);
        }
    }

    #[test]
    fn bandwidth_symmetry(n in 2usize..48, w in bandwidth()) {
        let p = ProlateParams::new(n, w).unwrap();
        let a = tridiagonal_spectrum(&p, 0, n - 1).unwrap();
        let b = tridiagonal_spectrum(&p.complement(), 0, n - 1).unwrap();
        for k in 0..n {
            prop_assert!((a.entries[k].lambda - b.entries[n - 1 - k].complement).abs() <= 1e-10);
        }
    }

    #[test]
    fn width_within_bounds(n in 16usize..400, w in 0.01f64..0.49, e in -10.0f64..-2.0) {
        let eps = 10f64.powf(e);
        let p = ProlateParams::new(n, w).unwrap();
        let width = transition_width(&p, eps).unwrap().width as u64;
        prop_assert!(width <= width_bound_thm1(n, eps).unwrap().integer_report);
        prop_assert!(width <= width_bound_thm2(n, w, eps).unwrap().integer_report);
    }

    #[test]
    fn width_bounds_grow_as_eps_shrinks(n in 1usize..100_000, w in bandwidth(), e in -14.0f64..-1.0) {
        let (a, b) = (10f64.powf(e), 10f64.powf(e - 0.5));
        prop_assert!(width_bound_thm1(n, b).unwrap().value >= width_bound_thm1(n, a).unwrap().value);
        prop_assert!(width_bound_thm2(n, w, b).unwrap().value >= width_bound_thm2(n, w, a).unwrap().value);
    }

    #[test]
    fn envelopes_ordered_and_monotone(n in 2usize..3000, w in bandwidth(), k in 0usize..2999) {
        prop_assume!(k + 1 < n);
        let a = eig_envelope(n, w, k).unwrap();
        let b = eig_envelope(n, w, k + 1).unwrap();
        prop_assert!(0.0 <= a.lower && a.lower <= a.upper && a.upper <= 1.0);
        prop_assert!(b.lower <= a.lower && b.upper <= a.upper);
    }

    #[test]
    fn zolotarev_pairs(mut xs in prop::array::uniform4(-1e3f64..1e3), kind in 0u8..2, k in 0usize..30) {
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assume!(xs.windows(2).all(|p| p[1] - p[0] > 1e-3));
        let sets = if kind == 0 {
            SetPair::Intervals { c1: xs[0], c2: xs[1], d1: xs[2], d2: xs[3] }
        } else {
            SetPair::Unbounded { c1: xs[0], d1: xs[1], d2: xs[2], c2: xs[3] }
        };
        let pair = ZolotarevSetPair::new(sets).unwrap();
        prop_assert!(pair.gamma > 1.0 && pair.alpha <= 4.0 * pair.gamma);
        let z = zolotarev_bound(&pair, k);
        prop_assert!(z > 0.0 && z <= 4.0);
        prop_assert!(zolotarev_bound(&pair, k + 1) < z);
        let norm = mobius_normalize(&pair).unwrap();
        prop_assert!(norm.round_trip <= 1e-10);
        prop_assert!(norm.residual <= 1e-8);
    }

    #[test]
    fn displacement_identity(n in 1usize..64, w in bandwidth(), l in 1usize..200) {
        let p = ProlateParams::new(n, w).unwrap();
        let sys = build_xl(&p, l).unwrap();
        prop_assert!(sys.displacement_residual() <= 1e-13 * (n + l) as f64);
        prop_assert!(sys.singular_values()[0] <= 0.5 + 1e-12);
    }

    #[test]
    fn interpolation_exact_at_nodes_and_bounded(w in 0.005f64..0.25, n in -20i64..60, k in 1usize..10, a in -40.0f64..-2.0) {
        let b = -1.0;
        let it = cheb_interpolate(w, n, a, b, k).unwrap();
        for &x in &it.nodes {
            prop_assert!((it.eval(x) - it.target(x)).abs() <= 1e-13);
        }
        let nodes = chebyshev_nodes(a, b, k);
        for (x, y) in nodes.iter().zip(nodes.iter().rev()) {
            prop_assert!((x + y - (a + b)).abs() <= 1e-12 * (1.0 + a.abs()));
        }
        let bound = interpolation_error_bound(w, n, a, b, k);
        for i in 0..200 {
            let t = a + (b - a) * i as f64 / 199.0;
            prop_assert!((it.eval(t) - it.target(t)).abs() <= bound * (1.0 + 1e-9) + 1e-14);
        }
    }
}
