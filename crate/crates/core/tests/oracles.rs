//! Library results against independently computed reference values.

use std::f64::consts::PI;

use prolate::bounds::{pswf_delta, pswf_transition};
use prolate::chebsinc::{cheb_interpolate, lowrank_block_approx, sinc_derivative_bound, LowRankOutcome};
use prolate::displacement::{block_bound, build_xl, sv_decay_check};
use prolate::kernel::SincKernel;
use prolate::verify::finite_difference_derivative;
use prolate::ProlateParams;

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson on 64 equal panels, so that oscillations cannot hide
/// between the first sample points.
fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + h * i as f64, a + h * (i + 1) as f64);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson(f, lo, hi, fa, fm, fb, whole, tol / panels as f64, 24)
        })
        .sum()
}

/// `g^(k)(t) = 2 int_0^W (2 pi f)^k cos(2 pi f t + k pi / 2) df`.
fn derivative_by_quadrature(w: f64, k: usize, t: f64) -> f64 {
    let f = |x: f64| (2.0 * PI * x).powi(k as i32) * (2.0 * PI * x * t + k as f64 * PI / 2.0).cos();
    let scale = w * (2.0 * PI * w).powi(k as i32);
    2.0 * integrate(&f, 0.0, w, 1e-14 * scale)
}

#[test]
fn quadrature_oracle_matches_reference_values() {
    let cases = [
        (0.1, 1, 10.0, 0.02),
        (1.0 / 32.0, 5, 3.7, -0.000_001_766_302_989_638_455_353_551_253),
        (0.1, 2, 0.0, -0.026_318_945_069_571_622_983_558_64),
        (0.25, 8, -13.25, 0.604_598_744_533_466_783_109_009_9),
        (0.4, 3, 0.5, 2.627_584_730_012_850_782_756_563),
    ];
    for (w, k, t, want) in cases {
        let got = derivative_by_quadrature(w, k, t);
        assert!((got - want).abs() <= 1e-11 * (1.0 + want.abs()), "W={w} k={k} t={t}: {got} vs {want}");
    }
}

#[test]
fn derivative_bound_dominates_quadrature() {
    for w in [0.01, 1.0 / 64.0, 1.0 / 32.0, 0.1, 0.25, 0.4] {
        for k in 0..=8 {
            for i in 0..81 {
                let t = -20.0 + 0.5 * i as f64;
                let d = derivative_by_quadrature(w, k, t).abs();
                let b = sinc_derivative_bound(w, k, t);
                assert!(d <= b * (1.0 + 1e-6) + 1e-9, "W={w} k={k} t={t}: {d} > {b}");
            }
        }
    }
}

#[test]
fn finite_differences_agree_with_quadrature() {
    let g = SincKernel::new(0.1).unwrap();
    for k in 0..=3 {
        for i in 0..41 {
            let t = -20.0 + i as f64;
            let fd = finite_difference_derivative(&g, k, t);
            let q = derivative_by_quadrature(0.1, k, t);
            assert!((fd - q).abs() <= 1e-8, "k={k} t={t}: {fd} vs {q}");
        }
    }
}

#[test]
fn interpolation_error_against_true_derivative_maximum() {
    let (w, n, a, b, k) = (1.0 / 32.0, 3, -8.0, -1.0, 5);
    let it = cheb_interpolate(w, n, a, b, k).unwrap();
    let dmax = (0..=700)
        .map(|i| a + (b - a) * i as f64 / 700.0)
        .map(|t| derivative_by_quadrature(w, k, t - n as f64).abs())
        .fold(0.0, f64::max);
    let lead = (b - a).powi(k as i32) / (2f64.powi(2 * k as i32 - 1) * 120.0);
    let worst = (0..1000)
        .map(|i| a + (b - a) * i as f64 / 999.0)
        .map(|t| (it.eval(t) - it.target(t)).abs())
        .fold(0.0, f64::max);
    assert!(worst <= lead * dmax * (1.0 + 1e-6));
}

#[test]
fn lowrank_matches_lagrange_product_form() {
    let p = ProlateParams::new(64, 1.0 / 32.0).unwrap();
    let k = 4;
    let LowRankOutcome::Computed(r) = lowrank_block_approx(&p, k).unwrap() else { panic!() };
    let l1 = r.l1 as i64;
    for col in 0..64 {
        let it = cheb_interpolate(1.0 / 32.0, col, -(l1 as f64), -1.0, k).unwrap();
        for (row, ell) in (-l1..0).enumerate() {
            let basis = it.lagrange_basis(ell as f64);
            let v: f64 = basis.iter().zip(&it.values).map(|(b, f)| b * f).sum();
            assert!((v - r.approx[[row, col as usize]]).abs() <= 1e-13);
        }
    }
}

#[test]
fn boundary_matrix_entries_match_direct_formula() {
    let p = ProlateParams::new(20, 0.3).unwrap();
    let sys = build_xl(&p, 30).unwrap();
    for (i, &ell) in sys.rows.iter().enumerate() {
        for n in 0..20 {
            let d = (ell - n as i64) as f64;
            let want = (2.0 * PI * 0.3 * d).sin() / (PI * d);
            assert!((sys.x[[i, n]] - want).abs() <= 1e-14);
        }
    }
}

#[test]
fn reference_constants() {
    // High-precision references.
    let b5 = block_bound::<f64>(5);
    assert!((b5 - 5.070_633_878_405_952_424_444_979e-5).abs() <= 1e-14 * b5);
    let p = ProlateParams::new(256, 0.125).unwrap();
    let decay = sv_decay_check(&p, 64, 10).unwrap();
    let b10 = decay.rows[10].bound;
    assert!((b10 - 0.001_618_480_582_428_435_146_223_196).abs() <= 1e-14 * b10);
    let ratio = decay.rows[3].bound / decay.rows[2].bound;
    assert!((ratio - (-PI * PI / (16.0 * 256.0f64 * 256.0).ln()).exp()).abs() <= 1e-14);
    let c = 50.0 * PI;
    let d1 = pswf_delta(c, 2000).unwrap();
    let d2 = pswf_delta(c, 4000).unwrap();
    assert!((d1 - 0.001_314_395_509_347_310_587_823_659).abs() <= 1e-14 * d1);
    assert!((d2 - 0.000_327_585_916_662_329_390_406_764_9).abs() <= 1e-14 * d2);
}

#[test]
fn pswf_headline_bound() {
    let r = pswf_transition(392.699, 1e-3, 8000).unwrap();
    assert_eq!(r.thm3.integer_report, 23);
    assert!(r.inner_width <= r.outer_width);
    assert!(r.inner_width as u64 <= r.thm3.integer_report);
}
