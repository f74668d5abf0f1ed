//! Invariant suites run by `prolate verify` and the acceptance tests.
//!
//! Every check records a measured value and the limit it is held to. The
//! suites are deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    eig_envelope, pswf_eig_envelope, pswf_proxy, pswf_transition, sum_bounds_cor2, width_bound_prior,
    width_bound_thm1, width_bound_thm2, PriorWidth, Side,
};
use crate::chebsinc::{cheb_interpolate, interpolation_error_bound, lowrank_block_approx, sinc_derivative_bound, LowRankOutcome};
use crate::displacement::{
    build_xl, l1_of, loewner_min_eig, mobius_normalize, partition_check, sv_decay_check, zolotarev_bound,
    PartitionOutcome, SetPair, ZolotarevSetPair,
};
use crate::error::{param, Result};
use crate::kernel::{build_prolate_matrix, toeplitz_apply, ProlateParams, SincKernel};
use crate::scalar::compensated_sum;
use crate::spectrum::{dense_spectrum, transition_widths, tridiagonal_spectrum, SpectrumSlice};

/// One verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    /// Passes when `value <= limit`.
    pub fn at_most(id: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { id: id.into(), passed: value <= limit, value, limit }
    }

    /// Passes when `value >= limit`.
    pub fn at_least(id: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { id: id.into(), passed: value >= limit, value, limit }
    }

    /// Passes when `value == limit`.
    pub fn equals(id: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { id: id.into(), passed: value == limit, value, limit }
    }

    /// Counts violations; passes when there are none.
    pub fn violations(id: impl Into<String>, count: usize) -> Self {
        Self::at_most(id, count as f64, 0.0)
    }

    fn failed(id: impl Into<String>, err: impl std::fmt::Display) -> Self {
        let id = id.into();
        Self { id: format!("{id}: {err}"), passed: false, value: f64::NAN, limit: f64::NAN }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Spectrum,
    Bounds,
    Displacement,
    Chebsinc,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "spectrum" => Ok(Self::Spectrum),
            "bounds" => Ok(Self::Bounds),
            "displacement" => Ok(Self::Displacement),
            "chebsinc" => Ok(Self::Chebsinc),
            "all" => Ok(Self::All),
            other => param(format!("unknown suite {other:?}")),
        }
    }
}

/// Outcome of a suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub suite: Suite,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn new(suite: Suite, seed: u64, checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).map(|c| c.id.clone()).collect::<Vec<_>>();
        Self { suite, seed, total: checks.len(), passed: checks.len() - failed.len(), failed, checks }
    }

    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }
}

fn tag(n: usize, w: f64) -> String {
    format!("N={n},W={w}")
}

fn collect(id: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    r.unwrap_or_else(|e| vec![Check::failed(id, e)])
}

/// Ordering defects in a slice. Unsaturated neighbours must be strictly
/// descending. Saturated entries cannot be ordered among themselves, so
/// they only have to sit on the correct side of every unsaturated entry:
/// those near one before it and those near zero after it.
pub fn order_violations(slice: &SpectrumSlice<f64>) -> usize {
    let e = &slice.entries;
    let mut bad = 0;
    let mut last_unsat: Option<usize> = None;
    for (i, x) in e.iter().enumerate() {
        if x.saturated {
            continue;
        }
        if let Some(j) = last_unsat {
            let y = &e[j];
            // Compare on the accurate side of 1/2.
            if !(y.lambda > x.lambda || y.complement < x.complement) {
                bad += 1;
            }
        }
        last_unsat = Some(i);
    }
    let unsat: Vec<usize> = e.iter().enumerate().filter(|(_, x)| !x.saturated).map(|(i, _)| i).collect();
    if let (Some(&first), Some(&last)) = (unsat.first(), unsat.last()) {
        bad += e[..first].iter().filter(|x| x.lambda < 0.5).count();
        bad += e[last + 1..].iter().filter(|x| x.lambda > 0.5).count();
        bad += e[first..=last].iter().filter(|x| x.saturated).count();
    }
    bad
}

/// Trace, ordering, crossing of 1/2, bandwidth symmetry and agreement of
/// the two eigenvalue routes at one `(N, W)`.
pub fn spectrum_checks(n: usize, w: f64) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let t = tag(n, w);
    let trid = tridiagonal_spectrum(&p, 0, n - 1)?;
    let dense = dense_spectrum(&p)?;
    let mut out = Vec::new();

    let trace = compensated_sum(trid.entries.iter().map(|e| e.lambda));
    let want = 2.0 * n as f64 * w;
    out.push(Check::at_most(format!("spectrum.trace[{t}]"), (trace - want).abs() / want, 1e-9));
    out.push(Check::violations(format!("spectrum.descending.tridiagonal[{t}]"), order_violations(&trid)));

    let f = p.floor_2nw();
    let c = p.ceil_2nw();
    if f >= 1 {
        let e = trid.get(f - 1).expect("in range");
        out.push(Check::at_least(format!("spectrum.half_crossing.lower[{t}]"), e.lambda, 0.5 - 1e-10));
    }
    if c < n {
        let e = trid.get(c).expect("in range");
        out.push(Check::at_most(format!("spectrum.half_crossing.upper[{t}]"), e.lambda, 0.5 + 1e-10));
    }

    let q = tridiagonal_spectrum(&p.complement(), 0, n - 1)?;
    let sym = (0..n)
        .map(|k| (trid.entries[k].lambda - q.entries[n - 1 - k].complement).abs())
        .fold(0.0, f64::max);
    out.push(Check::at_most(format!("spectrum.bandwidth_symmetry[{t}]"), sym, 1e-10));

    let agree = trid.entries.iter().zip(&dense.entries).map(|(a, b)| (a.lambda - b.lambda).abs()).fold(0.0, f64::max);
    out.push(Check::at_most(format!("spectrum.route_agreement[{t}]"), agree, 1e-10));
    Ok(out)
}

/// Fast Toeplitz product against the dense product on seeded vectors.
pub fn toeplitz_checks(n: usize, w: f64, draws: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let b = build_prolate_matrix(&p)?;
    let col = p.kernel().first_column(n);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        let fast = toeplitz_apply(&col, &x)?;
        let slow = b.dot(&ndarray::Array1::from(x));
        worst = fast.iter().zip(slow.iter()).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    Ok(vec![Check::at_most(format!("kernel.toeplitz_apply[{}]", tag(n, w)), worst, 1e-12)])
}

/// Eigenvalue envelopes and sum bounds against the computed spectrum.
pub fn envelope_checks(n: usize, w: f64) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let t = tag(n, w);
    let s = tridiagonal_spectrum(&p, 0, n - 1)?;
    let tol = 1e-12;
    let mut outside = 0;
    for e in &s.entries {
        let env = eig_envelope(n, w, e.k)?;
        // Lower bounds near one are compared through the complement.
        let lower_ok = e.complement <= (1.0 - env.lower) + tol;
        let upper_ok = e.lambda <= env.upper + tol;
        if !(lower_ok && upper_ok) {
            outside += 1;
        }
    }
    // Each computed eigenvalue carries an absolute error near 1e-16, so a
    // sum of m terms is only resolved to m * 1e-16.
    let slack = |b: f64, terms: usize| b * 1e-12 + terms as f64 * 1e-16;
    let mut sums = 0;
    let mut tested = 0;
    for kk in 1..=p.floor_2nw().min(n) {
        let b = sum_bounds_cor2(n, w, kk, Side::Head)?;
        let v = s.head_sum(kk)?;
        tested += 1;
        if v > b + slack(b, kk) {
            sums += 1;
        }
    }
    for kk in p.ceil_2nw()..n {
        let b = sum_bounds_cor2(n, w, kk, Side::Tail)?;
        let v = s.tail_sum(kk)?;
        tested += 1;
        if v > b + slack(b, n - kk) {
            sums += 1;
        }
    }
    let mut out = vec![
        Check::violations(format!("bounds.eig_envelope[{t}]"), outside),
        Check::violations(format!("bounds.sum_bounds[{t}]"), sums),
    ];
    if tested == 0 {
        out.pop();
    }
    Ok(out)
}

/// Measured transition widths against both width bounds.
pub fn width_checks(n: usize, w: f64, eps: &[f64]) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let reports = transition_widths(&p, eps)?;
    let mut out = Vec::new();
    for r in reports {
        let id = format!("{},eps={}", tag(n, w), r.eps);
        let thm1 = width_bound_thm1(n, r.eps)?.integer_report as f64;
        let thm2 = width_bound_thm2(n, w, r.eps)?.integer_report as f64;
        out.push(Check::at_most(format!("bounds.width_thm1[{id}]"), r.width as f64, thm1));
        out.push(Check::at_most(format!("bounds.width_thm2[{id}]"), r.width as f64, thm2));
    }
    Ok(out)
}

/// The headline integer values at `N = 1000`, `W = 1/8`, `eps = 1e-3`.
pub fn headline_checks() -> Result<Vec<Check>> {
    let (n, w, eps) = (1000, 0.125, 1e-3);
    Ok(vec![
        Check::equals("bounds.thm1[N=1000,eps=0.001]", width_bound_thm1(n, eps)?.integer_report as f64, 14.0),
        Check::equals("bounds.thm2[N=1000,W=0.125,eps=0.001]", width_bound_thm2(n, w, eps)?.integer_report as f64, 23.0),
        Check::equals(
            "bounds.eq2[N=1000,W=0.125,eps=0.001]",
            width_bound_prior(n, w, eps, PriorWidth::Eq2)?.integer_report as f64,
            1806.0,
        ),
        Check::equals(
            "bounds.eq3[N=1000,W=0.125,eps=0.001]",
            width_bound_prior(n, w, eps, PriorWidth::Eq3)?.integer_report as f64,
            1000.0,
        ),
        Check::equals(
            "bounds.eq6[N=1000,W=0.125,eps=0.001]",
            width_bound_prior(n, w, eps, PriorWidth::Eq6)?.integer_report as f64,
            185.0,
        ),
    ])
}

/// Continuous-case checks through two proxy dimensions `n1 < n2`.
pub fn pswf_checks(c: f64, n1: usize, n2: usize, eps: &[f64]) -> Result<Vec<Check>> {
    let t = format!("c={c},N={n1}/{n2}");
    let kmax = ((2.0 * c / std::f64::consts::PI).ceil() as usize + 60).min(n1 - 1);
    let a = pswf_proxy(c, 0, kmax, n1)?;
    let b = pswf_proxy(c, 0, kmax, n2)?;
    let excess = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x.lambda - y.lambda).abs() - (a.delta + b.delta))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut out = vec![Check::at_most(format!("bounds.pswf_proxy_agreement[{t}]"), excess, 1e-12)];
    let mut outside = 0;
    for proxy in [&a, &b] {
        for e in &proxy.entries {
            let env = pswf_eig_envelope(c, e.k)?.widened(proxy.delta);
            if !env.contains(e.lambda, 1e-12) {
                outside += 1;
            }
        }
    }
    out.push(Check::violations(format!("bounds.pswf_envelope[{t}]"), outside));
    for &e in eps {
        let r = pswf_transition(c, e, n2)?;
        out.push(Check::at_most(
            format!("bounds.pswf_width[c={c},N={n2},eps={e}]"),
            r.inner_width as f64,
            r.thm3.integer_report as f64,
        ));
    }
    Ok(out)
}

/// Displacement equation, norm, singular value decay and the Loewner
/// ordering for `X_L`.
pub fn displacement_checks(n: usize, w: f64, l: usize, k_max: usize) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let t = format!("{},L={l}", tag(n, w));
    let sys = build_xl(&p, l)?;
    let mut out = vec![Check::at_most(
        format!("displacement.residual[{t}]"),
        sys.displacement_residual(),
        1e-13 * (n + l) as f64,
    )];
    let decay = sv_decay_check(&p, l, k_max)?;
    out.push(Check::at_most(format!("displacement.norm[{t}]"), decay.norm, 0.5 + 1e-12));
    for r in &decay.rows {
        out.push(Check::at_most(format!("displacement.sv_decay[{t},k={}]", r.k), r.sigma, r.bound + 1e-12));
    }
    out.push(Check::violations(format!("displacement.sv_monotone[{t}]"), usize::from(!decay.monotone)));
    if n <= 256 {
        out.push(Check::at_least(format!("displacement.loewner[{t}]"), loewner_min_eig(&p, l)?, -1e-10));
    }
    Ok(out)
}

/// Cross-ratio, normalization and invariance checks for set pairs: the
/// window pair of size `n` plus `draws` seeded interval pairs.
pub fn zolotarev_checks(n: usize, draws: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let nf = n as f64;
    let window = ZolotarevSetPair::new(SetPair::Unbounded { c1: -1.0, d1: 0.0, d2: nf - 1.0, c2: nf })?;
    let mut out = vec![
        Check::equals(format!("displacement.gamma_window[N={n}]"), window.gamma, nf * nf),
        Check::at_most(format!("displacement.alpha_le_4gamma[N={n}]"), window.alpha, 4.0 * window.gamma),
        Check::equals("displacement.zolotarev_k0", zolotarev_bound(&window, 0), 4.0),
    ];
    let mut pairs = vec![window];
    for _ in 0..draws {
        let mut xs: Vec<f64> = (0..4).map(|_| rng.gen_range(-100.0..100.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let sets = match rng.gen_range(0..3) {
            0 => SetPair::Intervals { c1: xs[0], c2: xs[1], d1: xs[2], d2: xs[3] },
            1 => SetPair::Unbounded { c1: xs[0], d1: xs[1], d2: xs[2], c2: xs[3] },
            _ => SetPair::Symmetric { a: xs[2].abs() + 0.5, b: xs[2].abs() + 0.5 + xs[3].abs() + 0.5 },
        };
        pairs.push(ZolotarevSetPair::new(sets)?);
    }
    let (mut res, mut trip, mut inv) = (0.0_f64, 0.0_f64, 0.0_f64);
    for pair in &pairs {
        let norm = mobius_normalize(pair)?;
        res = res.max(norm.residual);
        trip = trip.max(norm.round_trip);
        // Bound recomputed from the normalized configuration.
        let mapped = ZolotarevSetPair::new(SetPair::Intervals {
            c1: -norm.alpha,
            c2: -1.0,
            d1: 1.0,
            d2: norm.alpha,
        })?;
        for k in [1, 5, 10] {
            let raw = zolotarev_bound(pair, k);
            let via = match pair.sets {
                SetPair::Symmetric { .. } => zolotarev_bound(
                    &ZolotarevSetPair::new(SetPair::Symmetric { a: 1.0, b: norm.alpha })?,
                    k,
                ),
                _ => zolotarev_bound(&mapped, k),
            };
            inv = inv.max((raw - via).abs() / raw);
        }
    }
    out.push(Check::at_most("displacement.mobius_residual", res, 1e-10));
    out.push(Check::at_most("displacement.mobius_round_trip", trip, 1e-10));
    out.push(Check::at_most("displacement.zolotarev_invariance", inv, 1e-14));
    Ok(out)
}

/// The three-block partition of `X_L` at `L = L1 + extra`.
pub fn partition_checks(n: usize, w: f64, extra: usize, k0_max: usize, k_max: usize) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let l = l1_of(w) + extra;
    let t = format!("{},L={l}", tag(n, w));
    let PartitionOutcome::Checked(r) = partition_check(&p, l, k0_max, k_max)? else {
        return Ok(vec![Check::equals(format!("displacement.partition_not_applicable[{t}]"), 1.0, 1.0)]);
    };
    let mut out = vec![
        Check::at_most(format!("displacement.flip_singular_values[{t}]"), r.flip_mismatch, 1e-10),
        Check::violations(format!("displacement.flip_exact[{t}]"), usize::from(!r.flip_exact)),
    ];
    for &(k0, s, b) in &r.block0 {
        out.push(Check::at_most(format!("displacement.block0[{t},k0={k0}]"), s, b + 1e-12));
    }
    for &(k, s1, s2, b) in &r.block12 {
        out.push(Check::at_most(format!("displacement.block12[{t},k={k}]"), s1.max(s2), b + 1e-12));
    }
    let weyl_bad = r.weyl.iter().filter(|row| !row.holds).count();
    out.push(Check::violations(format!("displacement.weyl[{t}]"), weyl_bad));
    Ok(out)
}

/// Central difference estimate of `g^(k)(t)` with one Richardson step.
pub fn finite_difference_derivative(g: &SincKernel<f64>, k: usize, t: f64) -> f64 {
    let est = |h: f64| -> f64 {
        let f = |x: f64| g.at(t + x * h);
        match k {
            0 => f(0.0),
            1 => (f(1.0) - f(-1.0)) / (2.0 * h),
            2 => (f(1.0) - 2.0 * f(0.0) + f(-1.0)) / (h * h),
            3 => (f(2.0) - 2.0 * f(1.0) + 2.0 * f(-1.0) - f(-2.0)) / (2.0 * h * h * h),
            _ => f64::NAN,
        }
    };
    // Rounding in the quotient grows like eps / h^k, so higher orders use
    // wider steps.
    let base = match k {
        0 | 1 => 1e-4,
        2 => 1e-3,
        _ => 1e-2,
    };
    let h = base * t.abs().max(1.0);
    (4.0 * est(h / 2.0) - est(h)) / 3.0
}

/// Sampled sinc derivatives against their bound.
pub fn derivative_checks(w: f64, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let g = SincKernel::new(w)?;
    let mut out = Vec::new();
    for k in 0..=3 {
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..samples {
            let t: f64 = rng.gen_range(-20.0..20.0);
            let d = finite_difference_derivative(&g, k, t).abs();
            let b = sinc_derivative_bound(w, k, t);
            worst = worst.max(d - (b * (1.0 + 1e-6) + 1e-9));
        }
        out.push(Check::at_most(format!("chebsinc.derivative_bound[W={w},k={k}]"), worst, 0.0));
    }
    Ok(out)
}

/// Interpolation error on a 1000-point grid against the certified bound,
/// on `[-L1, -1]`.
pub fn interpolation_checks(ws: &[f64], shifts: &[i64], ks: std::ops::RangeInclusive<usize>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &w in ws {
        let l1 = l1_of(w);
        if l1 < 2 {
            continue;
        }
        let (a, b) = (-(l1 as f64), -1.0);
        for &n in shifts {
            let mut bad = 0;
            for k in ks.clone() {
                let it = cheb_interpolate(w, n, a, b, k)?;
                let bound = interpolation_error_bound(w, n, a, b, k);
                let worst = (0..1000)
                    .map(|i| a + (b - a) * i as f64 / 999.0)
                    .map(|x| (it.eval(x) - it.target(x)).abs())
                    .fold(0.0, f64::max);
                if worst > bound {
                    bad += 1;
                }
            }
            out.push(Check::violations(format!("chebsinc.interpolation[W={w},n={n}]"), bad));
        }
    }
    Ok(out)
}

/// Rank-`k` approximation of the near-window block for `k` in `ks`.
pub fn lowrank_checks(n: usize, w: f64, ks: std::ops::RangeInclusive<usize>) -> Result<Vec<Check>> {
    let p = ProlateParams::new(n, w)?;
    let t = tag(n, w);
    let mut out = Vec::new();
    for k in ks {
        let LowRankOutcome::Computed(r) = lowrank_block_approx(&p, k)? else {
            return Ok(vec![Check::equals(format!("chebsinc.lowrank_not_applicable[{t}]"), 1.0, 1.0)]);
        };
        out.push(Check::at_most(format!("chebsinc.lowrank_frobenius[{t},k={k}]"), r.frobenius_error, r.bound));
        out.push(Check::at_most(format!("chebsinc.lowrank_entries[{t},k={k}]"), r.max_entry_ratio, 1.0));
        if let Some(a) = r.monomial_agreement {
            out.push(Check::at_most(format!("chebsinc.monomial_agreement[{t},k={k}]"), a, 1e-8));
        }
    }
    Ok(out)
}

const SPECTRUM_GRID_N: [usize; 2] = [64, 128];
const SPECTRUM_GRID_W: [f64; 4] = [0.05, 0.125, 0.25, 0.4];

fn spectrum_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = Vec::new();
    for n in SPECTRUM_GRID_N {
        for w in SPECTRUM_GRID_W {
            out.extend(collect("spectrum", spectrum_checks(n, w)));
        }
    }
    out.extend(collect("kernel.toeplitz_apply", toeplitz_checks(256, 0.125, 4, rng)));
    out
}

fn bounds_suite() -> Vec<Check> {
    let mut out = collect("bounds.headline", headline_checks());
    for n in SPECTRUM_GRID_N {
        for w in SPECTRUM_GRID_W {
            out.extend(collect("bounds.envelope", envelope_checks(n, w)));
            out.extend(collect("bounds.width", width_checks(n, w, &[1e-3, 1e-8])));
        }
    }
    out.extend(collect("bounds.pswf", pswf_checks(10.0 * std::f64::consts::PI, 400, 800, &[1e-2, 1e-3])));
    out
}

fn displacement_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = collect("displacement.system", displacement_checks(128, 0.125, 512, 8));
    out.extend(collect("displacement.zolotarev", zolotarev_checks(128, 16, rng)));
    out.extend(collect("displacement.partition", partition_checks(256, 1.0 / 32.0, 32, 6, 6)));
    out
}

fn chebsinc_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = collect("chebsinc.derivative", derivative_checks(0.1, 200, rng));
    out.extend(collect(
        "chebsinc.interpolation",
        interpolation_checks(&[1.0 / 64.0, 1.0 / 32.0, 1.0 / 16.0], &[0, 3, 50], 1..=8),
    ));
    out.extend(collect("chebsinc.lowrank", lowrank_checks(256, 1.0 / 32.0, 1..=8)));
    out
}

/// Runs a suite with its shipped defaults.
pub fn run_suite(suite: Suite, seed: u64) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match suite {
        Suite::Spectrum => spectrum_suite(&mut rng),
        Suite::Bounds => bounds_suite(),
        Suite::Displacement => displacement_suite(&mut rng),
        Suite::Chebsinc => chebsinc_suite(&mut rng),
        Suite::All => {
            let mut all = spectrum_suite(&mut rng);
            all.extend(bounds_suite());
            all.extend(displacement_suite(&mut rng));
            all.extend(chebsinc_suite(&mut rng));
            all
        }
    };
    Summary::new(suite, seed, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn check_constructors() {
        assert!(Check::at_most("a", 1.0, 1.0).passed);
        assert!(!Check::at_least("a", 0.5, 1.0).passed);
        assert!(!Check::violations("a", 2).passed);
        let s = Summary::new(Suite::Bounds, 0, vec![Check::at_most("x", 2.0, 1.0), Check::equals("y", 1.0, 1.0)]);
        assert_eq!((s.total, s.passed), (2, 1));
        assert_eq!(s.failed, vec!["x".to_string()]);
        assert!(!s.ok());
    }

    #[test]
    fn finite_differences_track_derivatives() {
        let g = SincKernel::new(0.1).unwrap();
        // g''(0) = -(2 pi W)^2 2W / 3 attains the derivative bound.
        let d2 = finite_difference_derivative(&g, 2, 0.0);
        let want = -(0.2 * std::f64::consts::PI).powi(2) * 0.2 / 3.0;
        assert!((d2 - want).abs() <= 1e-7 * want.abs());
        let d1 = finite_difference_derivative(&g, 1, 0.0);
        assert!(d1.abs() <= 1e-10);
    }

    #[test]
    fn each_suite_passes() {
        for suite in [Suite::Spectrum, Suite::Bounds, Suite::Displacement, Suite::Chebsinc] {
            let s = run_suite(suite, 7);
            assert!(s.ok(), "{suite:?}: {:?}", s.failed);
        }
    }
}
