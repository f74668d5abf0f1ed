//! Closed-form bounds on the eigenvalues of the prolate matrix and of the
//! continuous time-frequency limiting operator.
//!
//! Every function here is a pure formula evaluator; no spectrum is computed
//! except by [`pswf_proxy`] and [`pswf_transition`], which use the discrete
//! problem at matched time-bandwidth product as a certified stand-in for the
//! continuous eigenvalues.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{domain, param, Result};
use crate::kernel::{check_bandwidth, ProlateParams};
use crate::scalar::{Real, EULER_GAMMA};
use crate::spectrum::{transition_window, SpectrumEntry, TridiagonalSolver};

/// Decay constant of the exponential prior upper bound.
pub const ETA: f64 = 0.069;

/// A bound on an integer count, as a real value and its floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthBound<T> {
    pub value: T,
    pub integer_report: u64,
}

impl<T: Real> WidthBound<T> {
    fn floor_of(value: T) -> Self {
        Self { value, integer_report: value.floor().to_u64().unwrap_or(u64::MAX) }
    }
}

/// Earlier width bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorWidth {
    /// `((2/pi^2) log(N-1) + (2/pi^2)(2N-1)/(N-1)) / (eps(1-eps))`, `N >= 2`.
    Eq2,
    /// `((1/pi^2) log(2NW) + 0.45 - (2/3)W^2 + sin^2(2 pi NW)/(6 pi^2 N^2)) / (eps(1-eps))`.
    Eq3,
    /// `((8/pi^2) log(8N) + 12) log(15/eps)`.
    Eq6,
}

/// Earlier per-index upper bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorUpper {
    /// `2 exp(-0.069 (k - 2NW) / (log(pi NW) + 5))`.
    Eq4,
    /// `2 exp(-(2k+1) log((2k+2)/(e pi NW)))`.
    Eq5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Head,
    Tail,
}

/// Two-sided bound on a single eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope<T> {
    pub lower: T,
    pub upper: T,
    /// The raw lower bound was negative and has been raised to zero.
    pub lower_clamped: bool,
    /// The raw upper bound exceeded one and has been lowered to one.
    pub upper_clamped: bool,
}

impl<T: Real> Envelope<T> {
    pub fn uninformative(&self) -> bool {
        self.lower_clamped || self.upper_clamped
    }

    pub fn contains(&self, x: T, tol: T) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }

    /// The envelope widened by `delta` on both sides.
    pub fn widened(&self, delta: T) -> Self {
        Self { lower: self.lower - delta, upper: self.upper + delta, ..*self }
    }
}

/// Value of the logistic approximation with a flag when it falls outside
/// the range `(0.2, 0.8)` where it is expected to be meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlepianApprox<T> {
    pub value: T,
    pub advisory: bool,
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if !(eps > T::zero() && eps < T::lit(0.5)) {
        return param(format!("eps must lie in (0, 1/2), got {eps}"));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return param("N must be at least 1");
    }
    Ok(())
}

fn check_c<T: Real>(c: T) -> Result<()> {
    if !(c > T::zero() && c.is_finite()) {
        return param(format!("c must be positive and finite, got {c}"));
    }
    Ok(())
}

fn two_over_pi2<T: Real>() -> T {
    T::lit(2.0) / (T::PI() * T::PI())
}

/// `log(100 NW + 25)`, also used with `c / pi` in place of `NW`.
fn log_tb<T: Real>(nw: T) -> T {
    (T::lit(100.0) * nw + T::lit(25.0)).ln()
}

/// `2 ceil((1/pi^2) log(4N) log(4/(eps(1-eps))))`.
pub fn width_bound_thm1<T: Real>(n: usize, eps: T) -> Result<WidthBound<T>> {
    check_n(n)?;
    check_eps(eps)?;
    let inner = (T::lit(4.0) * T::of_usize(n)).ln() * (T::lit(4.0) / (eps * (T::one() - eps))).ln()
        / (T::PI() * T::PI());
    let value = T::lit(2.0) * inner.ceil();
    Ok(WidthBound::floor_of(value))
}

/// `(2/pi^2) log(100NW + 25) log(5/(eps(1-eps))) + 7`.
pub fn width_bound_thm2<T: Real>(n: usize, w: T, eps: T) -> Result<WidthBound<T>> {
    check_n(n)?;
    check_bandwidth(w)?;
    check_eps(eps)?;
    Ok(WidthBound::floor_of(tb_width(T::of_usize(n) * w, eps)))
}

fn tb_width<T: Real>(nw: T, eps: T) -> T {
    two_over_pi2::<T>() * log_tb(nw) * (T::lit(5.0) / (eps * (T::one() - eps))).ln() + T::lit(7.0)
}

/// Earlier width bounds, evaluated as printed.
pub fn width_bound_prior<T: Real>(n: usize, w: T, eps: T, which: PriorWidth) -> Result<WidthBound<T>> {
    check_n(n)?;
    check_bandwidth(w)?;
    check_eps(eps)?;
    let pi2 = T::PI() * T::PI();
    let nf = T::of_usize(n);
    let denom = eps * (T::one() - eps);
    let value = match which {
        PriorWidth::Eq2 => {
            if n < 2 {
                return domain("this bound requires N >= 2");
            }
            let m = nf - T::one();
            (two_over_pi2::<T>() * m.ln() + two_over_pi2::<T>() * (T::lit(2.0) * nf - T::one()) / m) / denom
        }
        PriorWidth::Eq3 => {
            let s = (T::lit(2.0) * T::PI() * nf * w).sin();
            ((T::lit(2.0) * nf * w).ln() / pi2 + T::lit(0.45) - T::lit(2.0 / 3.0) * w * w
                + s * s / (T::lit(6.0) * pi2 * nf * nf))
                / denom
        }
        PriorWidth::Eq6 => {
            (T::lit(8.0) / pi2 * (T::lit(8.0) * nf).ln() + T::lit(12.0)) * (T::lit(15.0) / eps).ln()
        }
    };
    Ok(WidthBound::floor_of(value))
}

fn clamp_envelope<T: Real>(raw_lower: T, raw_upper: T) -> Envelope<T> {
    Envelope {
        lower: raw_lower.max(T::zero()),
        upper: raw_upper.min(T::one()),
        lower_clamped: raw_lower < T::zero(),
        upper_clamped: raw_upper > T::one(),
    }
}

/// Two-sided envelope for `lambda_k(N, W)`.
///
/// Below `floor(2NW)` only the lower side is nontrivial, above
/// `ceil(2NW) - 1` only the upper side. Because `lambda_{floor(2NW)-1} >= 1/2`
/// and `lambda_{ceil(2NW)} <= 1/2` and the eigenvalues are decreasing, the
/// lower side is at least `1/2` on the left and the upper side at most `1/2`
/// on the right. An index strictly between the two gets `[0, 1]` with both
/// flags set.
pub fn eig_envelope<T: Real>(n: usize, w: T, k: usize) -> Result<Envelope<T>> {
    let p = ProlateParams::new(n, w)?;
    if k >= n {
        return param(format!("k = {k} out of range for N = {n}"));
    }
    let f = p.floor_2nw();
    let c = p.ceil_2nw();
    let a1 = two_over_pi2::<T>() * (T::lit(4.0) * T::of_usize(n)).ln();
    let a2 = two_over_pi2::<T>() * log_tb(p.nw());
    let half = T::lit(0.5);
    if k + 1 <= f {
        let gap = T::of_usize(f) - T::of_usize(k);
        let t1 = T::lit(8.0) * (-(gap - T::lit(2.0)) / a1).exp();
        let t2 = T::lit(10.0) * (-(gap - T::lit(7.0)) / a2).exp();
        let mut env = clamp_envelope(T::one() - t1.min(t2), T::one());
        env.lower = env.lower.max(half);
        Ok(env)
    } else if k >= c {
        let gap = T::of_usize(k) - T::of_usize(c);
        let t1 = T::lit(8.0) * (-(gap - T::one()) / a1).exp();
        let t2 = T::lit(10.0) * (-(gap - T::lit(6.0)) / a2).exp();
        let mut env = clamp_envelope(T::zero(), t1.min(t2));
        env.upper = env.upper.min(half);
        Ok(env)
    } else {
        Ok(Envelope { lower: T::zero(), upper: T::one(), lower_clamped: true, upper_clamped: true })
    }
}

/// Earlier per-index upper bounds; `None` outside their stated range of
/// validity.
pub fn eig_upper_prior<T: Real>(n: usize, w: T, k: usize, which: PriorUpper) -> Result<Option<T>> {
    let p = ProlateParams::new(n, w)?;
    let nw = p.nw();
    let kf = T::of_usize(k);
    let pi_nw = T::PI() * nw;
    match which {
        PriorUpper::Eq4 => {
            let lo = T::lit(2.0) * nw + pi_nw.ln() + T::lit(6.0);
            if kf < lo || kf > pi_nw {
                return Ok(None);
            }
            let rate = T::lit(ETA) / (pi_nw.ln() + T::lit(5.0));
            Ok(Some(T::lit(2.0) * (-rate * (kf - T::lit(2.0) * nw)).exp()))
        }
        PriorUpper::Eq5 => {
            let e_half = T::lit(std::f64::consts::E) * T::PI() * nw * T::lit(0.5);
            if e_half < T::lit(2.0) || kf < e_half || k > n - 1 {
                return Ok(None);
            }
            let ratio = (T::lit(2.0) * kf + T::lit(2.0)) / (T::lit(std::f64::consts::E) * pi_nw);
            Ok(Some(T::lit(2.0) * (-(T::lit(2.0) * kf + T::one()) * ratio.ln()).exp()))
        }
    }
}

/// Bounds on `sum_{k<K} (1 - lambda_k)` (head) and `sum_{k>=K} lambda_k`
/// (tail).
pub fn sum_bounds_cor2<T: Real>(n: usize, w: T, kk: usize, side: Side) -> Result<T> {
    let p = ProlateParams::new(n, w)?;
    let f = p.floor_2nw();
    let c = p.ceil_2nw();
    let gap = match side {
        Side::Head => {
            if kk < 1 || kk > f {
                return domain(format!("head sums need 1 <= K <= {f}, got {kk}"));
            }
            T::of_usize(f) - T::of_usize(kk)
        }
        Side::Tail => {
            if kk < c || kk > n - 1 {
                return domain(format!("tail sums need {c} <= K <= {}, got {kk}", n - 1));
            }
            T::of_usize(kk) - T::of_usize(c)
        }
    };
    let pi2 = T::PI() * T::PI();
    let l1 = (T::lit(4.0) * T::of_usize(n)).ln();
    let l2 = log_tb(p.nw());
    let b1 = T::lit(16.0) / pi2 * l1 * (-(gap - T::lit(2.0)) / (two_over_pi2::<T>() * l1)).exp();
    let b2 = T::lit(20.0) / pi2 * l2 * (-(gap - T::lit(7.0)) / (two_over_pi2::<T>() * l2)).exp();
    Ok(b1.min(b2))
}

/// `[1 + exp(-pi^2 (2NW - k - 1/2) / (log(8N sin 2 pi W) + gamma))]^{-1}`.
///
/// `k` is real so the formula can be probed between integers.
pub fn slepian_approx<T: Real>(n: usize, w: T, k: T) -> Result<SlepianApprox<T>> {
    let p = ProlateParams::new(n, w)?;
    let denom = (T::lit(8.0) * T::of_usize(n) * (T::lit(2.0) * T::PI() * w).sin()).ln() + T::lit(EULER_GAMMA);
    if !(denom > T::zero()) {
        return domain("8 N sin(2 pi W) e^gamma must exceed 1");
    }
    let x = T::PI() * T::PI() * (p.time_bandwidth() - k - T::lit(0.5)) / denom;
    let value = T::one() / (T::one() + (-x).exp());
    let advisory = !(value > T::lit(0.2) && value < T::lit(0.8));
    Ok(SlepianApprox { value, advisory })
}

/// Width bound for the continuous operator with time-bandwidth parameter `c`.
pub fn pswf_width_bound<T: Real>(c: T, eps: T) -> Result<WidthBound<T>> {
    check_c(c)?;
    check_eps(eps)?;
    Ok(WidthBound::floor_of(tb_width(c / T::PI(), eps)))
}

fn floor_ceil_2c<T: Real>(c: T) -> (usize, usize) {
    let x = T::lit(2.0) * c / T::PI();
    (x.floor().to_usize().unwrap_or(usize::MAX), x.ceil().to_usize().unwrap_or(usize::MAX))
}

/// Two-sided envelope for the `k`-th continuous eigenvalue.
pub fn pswf_eig_envelope<T: Real>(c: T, k: usize) -> Result<Envelope<T>> {
    check_c(c)?;
    let (f, cc) = floor_ceil_2c(c);
    let a2 = two_over_pi2::<T>() * log_tb(c / T::PI());
    let half = T::lit(0.5);
    if k + 1 <= f {
        let gap = T::of_usize(f) - T::of_usize(k);
        let t = T::lit(10.0) * (-(gap - T::lit(7.0)) / a2).exp();
        let mut env = clamp_envelope(T::one() - t, T::one());
        env.lower = env.lower.max(half);
        Ok(env)
    } else if k >= cc {
        let gap = T::of_usize(k) - T::of_usize(cc);
        let t = T::lit(10.0) * (-(gap - T::lit(6.0)) / a2).exp();
        let mut env = clamp_envelope(T::zero(), t);
        env.upper = env.upper.min(half);
        Ok(env)
    } else {
        Ok(Envelope { lower: T::zero(), upper: T::one(), lower_clamped: true, upper_clamped: true })
    }
}

/// Head and tail sum bounds for the continuous eigenvalues.
pub fn pswf_sum_bounds<T: Real>(c: T, kk: usize, side: Side) -> Result<T> {
    check_c(c)?;
    let (f, cc) = floor_ceil_2c(c);
    let gap = match side {
        Side::Head => {
            if kk < 1 || kk > f {
                return domain(format!("head sums need 1 <= K <= {f}, got {kk}"));
            }
            T::of_usize(f) - T::of_usize(kk)
        }
        Side::Tail => {
            if kk < cc {
                return domain(format!("tail sums need K >= {cc}, got {kk}"));
            }
            T::of_usize(kk) - T::of_usize(cc)
        }
    };
    let l2 = log_tb(c / T::PI());
    Ok(T::lit(20.0) / (T::PI() * T::PI()) * l2 * (-(gap - T::lit(7.0)) / (two_over_pi2::<T>() * l2)).exp())
}

/// `delta_{c,N} = 4c^3 / (3 pi N^3 sin(2c/N))`, the distance between the
/// discrete eigenvalues at `W = c/(pi N)` and the continuous ones.
pub fn pswf_delta<T: Real>(c: T, n: usize) -> Result<T> {
    check_c(c)?;
    let nf = T::of_usize(n);
    if !(nf > T::lit(2.0) * c / T::PI()) {
        return domain(format!("proxy dimension N = {n} must exceed 2c/pi"));
    }
    let four = T::lit(4.0);
    Ok(four * c * c * c / (T::lit(3.0) * T::PI() * nf * nf * nf * (T::lit(2.0) * c / nf).sin()))
}

fn proxy_params<T: Real>(c: T, n: usize) -> Result<(ProlateParams<T>, T)> {
    let delta = pswf_delta(c, n)?;
    let p = ProlateParams::new(n, c / (T::PI() * T::of_usize(n)))?;
    Ok((p, delta))
}

/// Discrete eigenvalues standing in for the continuous ones, each within
/// `delta` of the true value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PSWFProxy<T> {
    pub c: T,
    pub n: usize,
    pub delta: T,
    pub entries: Vec<SpectrumEntry<T>>,
}

impl<T: Real> PSWFProxy<T> {
    pub fn get(&self, k: usize) -> Option<&SpectrumEntry<T>> {
        self.entries.iter().find(|e| e.k == k)
    }
}

/// Proxy eigenvalues `lambda_k(N, c/(pi N))` for `kmin..=kmax`.
pub fn pswf_proxy<T: Real>(c: T, kmin: usize, kmax: usize, n: usize) -> Result<PSWFProxy<T>> {
    let (p, delta) = proxy_params(c, n)?;
    let entries = TridiagonalSolver::new(&p)?.entries(kmin, kmax)?;
    Ok(PSWFProxy { c, n, delta, entries })
}

/// Transition count of the continuous problem bracketed through the proxy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PswfWidthReport<T> {
    pub c: T,
    pub eps: T,
    pub n: usize,
    pub delta: T,
    pub thm3: WidthBound<T>,
    /// `#{eps + delta < lambda < 1 - eps - delta}`: a lower bound on the
    /// continuous count.
    pub inner_width: usize,
    /// `#{eps - delta < lambda < 1 - eps + delta}`: an upper bound on the
    /// continuous count.
    pub outer_width: usize,
}

/// Brackets `#{k : eps < lambda~_k(c) < 1 - eps}` between two proxy counts.
pub fn pswf_transition<T: Real>(c: T, eps: T, n: usize) -> Result<PswfWidthReport<T>> {
    let thm3 = pswf_width_bound(c, eps)?;
    let (p, delta) = proxy_params(c, n)?;
    let outer_eps = eps - delta;
    if !(outer_eps > T::zero()) {
        return domain(format!("delta = {delta} is not below eps = {eps}; raise N"));
    }
    let slice = transition_window(&p, outer_eps)?;
    let count = |t: T| slice.entries.iter().filter(|e| e.lambda > t && e.complement > t).count();
    Ok(PswfWidthReport {
        c,
        eps,
        n,
        delta,
        thm3,
        inner_width: count(eps + delta),
        outer_width: count(outer_eps),
    })
}

/// Identifier of each bound in a [`BoundSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Thm1,
    Thm2,
    Eq2Zhuwakin,
    Eq3Boulsane,
    Eq6Fst,
    SlepianApprox,
    Cor1Lower,
    Cor1Upper,
    Eq4Boulsane1,
    Eq5Boulsane2,
    Cor2Head,
    Cor2Tail,
    Thm3Pswf,
    Cor3Lower,
    Cor3Upper,
    Cor4Head,
    Cor4Tail,
}

impl BoundId {
    pub const ALL: [BoundId; 17] = [
        BoundId::Thm1,
        BoundId::Thm2,
        BoundId::Eq2Zhuwakin,
        BoundId::Eq3Boulsane,
        BoundId::Eq6Fst,
        BoundId::SlepianApprox,
        BoundId::Cor1Lower,
        BoundId::Cor1Upper,
        BoundId::Eq4Boulsane1,
        BoundId::Eq5Boulsane2,
        BoundId::Cor2Head,
        BoundId::Cor2Tail,
        BoundId::Thm3Pswf,
        BoundId::Cor3Lower,
        BoundId::Cor3Upper,
        BoundId::Cor4Head,
        BoundId::Cor4Tail,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::Thm1 => "thm1",
            BoundId::Thm2 => "thm2",
            BoundId::Eq2Zhuwakin => "eq2_zhuwakin",
            BoundId::Eq3Boulsane => "eq3_boulsane",
            BoundId::Eq6Fst => "eq6_fst",
            BoundId::SlepianApprox => "slepian_approx",
            BoundId::Cor1Lower => "cor1_lower",
            BoundId::Cor1Upper => "cor1_upper",
            BoundId::Eq4Boulsane1 => "eq4_boulsane1",
            BoundId::Eq5Boulsane2 => "eq5_boulsane2",
            BoundId::Cor2Head => "cor2_head",
            BoundId::Cor2Tail => "cor2_tail",
            BoundId::Thm3Pswf => "thm3_pswf",
            BoundId::Cor3Lower => "cor3_lower",
            BoundId::Cor3Upper => "cor3_upper",
            BoundId::Cor4Head => "cor4_head",
            BoundId::Cor4Tail => "cor4_tail",
        }
    }
}

/// One evaluated bound. `value` is `None` where the bound does not apply
/// to the requested indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue<T> {
    pub value: Option<T>,
    pub integer_report: Option<u64>,
    /// Clamping fired (envelopes) or the approximation is outside its
    /// meaningful range.
    pub flagged: bool,
}

impl<T: Real> BoundValue<T> {
    fn real(value: T) -> Self {
        Self { value: Some(value), integer_report: None, flagged: false }
    }

    fn width(b: WidthBound<T>) -> Self {
        Self { value: Some(b.value), integer_report: Some(b.integer_report), flagged: false }
    }

    fn missing() -> Self {
        Self { value: None, integer_report: None, flagged: false }
    }
}

/// Every bound evaluated at one `(N, W, eps, k, K)`, with `c = pi N W` for
/// the continuous bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSet<T> {
    pub params: ProlateParams<T>,
    pub eps: Option<T>,
    pub k: usize,
    pub head_k: usize,
    pub tail_k: usize,
    pub values: BTreeMap<BoundId, BoundValue<T>>,
}

impl<T: Real> BoundSet<T> {
    /// Evaluates every bound. `k` defaults to `ceil(2NW)` (clamped to
    /// `N - 1`), head sums use `K = floor(2NW)` and tail sums
    /// `K = ceil(2NW)` unless overridden.
    pub fn evaluate(
        p: &ProlateParams<T>,
        eps: Option<T>,
        k: Option<usize>,
        head_k: Option<usize>,
        tail_k: Option<usize>,
    ) -> Result<Self> {
        let (n, w) = (p.n(), p.w());
        let k = k.unwrap_or(p.ceil_2nw().min(n - 1));
        if k >= n {
            return param(format!("k = {k} out of range for N = {n}"));
        }
        let head_k = head_k.unwrap_or(p.floor_2nw());
        let tail_k = tail_k.unwrap_or(p.ceil_2nw());
        let c = T::PI() * p.nw();
        let mut values = BTreeMap::new();
        let or_missing = |r: Result<T>| r.map(BoundValue::real).unwrap_or_else(|_| BoundValue::missing());
        if let Some(eps) = eps {
            values.insert(BoundId::Thm1, BoundValue::width(width_bound_thm1(n, eps)?));
            values.insert(BoundId::Thm2, BoundValue::width(width_bound_thm2(n, w, eps)?));
            let eq2 = width_bound_prior(n, w, eps, PriorWidth::Eq2).map(BoundValue::width);
            values.insert(BoundId::Eq2Zhuwakin, eq2.unwrap_or_else(|_| BoundValue::missing()));
            values.insert(BoundId::Eq3Boulsane, BoundValue::width(width_bound_prior(n, w, eps, PriorWidth::Eq3)?));
            values.insert(BoundId::Eq6Fst, BoundValue::width(width_bound_prior(n, w, eps, PriorWidth::Eq6)?));
            values.insert(BoundId::Thm3Pswf, BoundValue::width(pswf_width_bound(c, eps)?));
        }
        let slep = slepian_approx(n, w, T::of_usize(k))
            .map(|s| BoundValue { value: Some(s.value), integer_report: None, flagged: s.advisory })
            .unwrap_or_else(|_| BoundValue::missing());
        values.insert(BoundId::SlepianApprox, slep);
        let env = eig_envelope(n, w, k)?;
        values.insert(BoundId::Cor1Lower, BoundValue { value: Some(env.lower), integer_report: None, flagged: env.lower_clamped });
        values.insert(BoundId::Cor1Upper, BoundValue { value: Some(env.upper), integer_report: None, flagged: env.upper_clamped });
        let prior = |which| match eig_upper_prior(n, w, k, which) {
            Ok(Some(v)) => BoundValue::real(v),
            _ => BoundValue::missing(),
        };
        values.insert(BoundId::Eq4Boulsane1, prior(PriorUpper::Eq4));
        values.insert(BoundId::Eq5Boulsane2, prior(PriorUpper::Eq5));
        values.insert(BoundId::Cor2Head, or_missing(sum_bounds_cor2(n, w, head_k, Side::Head)));
        values.insert(BoundId::Cor2Tail, or_missing(sum_bounds_cor2(n, w, tail_k, Side::Tail)));
        let penv = pswf_eig_envelope(c, k)?;
        values.insert(BoundId::Cor3Lower, BoundValue { value: Some(penv.lower), integer_report: None, flagged: penv.lower_clamped });
        values.insert(BoundId::Cor3Upper, BoundValue { value: Some(penv.upper), integer_report: None, flagged: penv.upper_clamped });
        values.insert(BoundId::Cor4Head, or_missing(pswf_sum_bounds(c, head_k, Side::Head)));
        values.insert(BoundId::Cor4Tail, or_missing(pswf_sum_bounds(c, tail_k, Side::Tail)));
        Ok(Self { params: *p, eps, k, head_k, tail_k, values })
    }

    pub fn get(&self, id: BoundId) -> Option<&BoundValue<T>> {
        self.values.get(&id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn headline_width_bounds() {
        assert_eq!(width_bound_thm1(1000, 1e-3).unwrap().integer_report, 14);
        let t2 = width_bound_thm2(1000, 0.125, 1e-3).unwrap();
        assert_eq!(t2.integer_report, 23);
        assert!(close(t2.value, 23.287_028_203_765_015_536_917_98, 1e-13));
    }

    #[test]
    fn thm1_small_cases() {
        assert_eq!(width_bound_thm1(1, 0.25).unwrap().value, 2.0);
        assert_eq!(width_bound_thm1(1, 0.4999).unwrap().value, 2.0);
        assert!(width_bound_thm1(0, 0.1).is_err());
        assert!(width_bound_thm1(10, 0.5).is_err());
    }

    #[test]
    fn prior_width_values() {
        let get = |w| width_bound_prior(1000, 0.125, 1e-3, w).unwrap().integer_report;
        assert_eq!(get(PriorWidth::Eq2), 1806);
        assert_eq!(get(PriorWidth::Eq3), 1000);
        assert_eq!(get(PriorWidth::Eq6), 185);
        assert!(matches!(
            width_bound_prior(1, 0.1, 1e-3, PriorWidth::Eq2),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn envelope_values() {
        let e = eig_envelope(1000, 0.125, 300).unwrap();
        assert!(close(e.upper, 1.744_367_753_400_904_324_356_88e-12, 1e-10));
        assert_eq!(e.lower, 0.0);
        let e = eig_envelope(1000, 0.125, 200).unwrap();
        assert!(close(1.0 - e.lower, 3.162_532_723_561_478_315_469_341e-12, 1e-4));
        let e = eig_envelope(1000, 0.125, 250).unwrap();
        assert_eq!(e.upper, 0.5);
        assert!(e.upper_clamped);
        let e = eig_envelope(1000, 0.125, 249).unwrap();
        assert_eq!(e.lower, 0.5);
        assert!(eig_envelope(1000, 0.125, 1000).is_err());
    }

    #[test]
    fn envelope_middle_index_when_2nw_not_integer() {
        // 2NW = 2.5, so k = 2 sits strictly between floor and ceil.
        let e = eig_envelope(10, 0.125, 2).unwrap();
        assert_eq!((e.lower, e.upper), (0.0, 1.0));
        assert!(e.uninformative());
    }

    #[test]
    fn prior_upper_values() {
        let v = eig_upper_prior(10_000, 0.1, 2100, PriorUpper::Eq4).unwrap().unwrap();
        assert!(close(v, 1.178_817_972_841_867_774_016_99, 1e-13));
        let v = eig_upper_prior(100, 0.1, 50, PriorUpper::Eq5).unwrap().unwrap();
        assert!(close(v, 3.223_238_649_925_787_913_916_497e-8, 1e-12));
        assert_eq!(eig_upper_prior(100, 0.1, 5, PriorUpper::Eq4).unwrap(), None);
        assert_eq!(eig_upper_prior(100, 0.1, 20, PriorUpper::Eq5).unwrap(), None);
    }

    #[test]
    fn sum_bound_values() {
        let h = sum_bounds_cor2(1000, 0.125, 200, Side::Head).unwrap();
        assert!(close(h, 5.315_350_510_861_570_731_773_82e-12, 1e-10));
        let t = sum_bounds_cor2(1000, 0.125, 300, Side::Tail).unwrap();
        assert!(close(t, 5.315_350_510_861_570_731_773_82e-12, 1e-10));
        assert!(sum_bounds_cor2(1000, 0.125_f64, 250, Side::Tail).unwrap().is_finite());
        assert!(sum_bounds_cor2(1000, 0.125, 251, Side::Head).is_err());
        assert!(sum_bounds_cor2(1000, 0.125, 0, Side::Head).is_err());
        assert!(sum_bounds_cor2(1000, 0.125, 249, Side::Tail).is_err());
    }

    #[test]
    fn slepian_formula() {
        let s = slepian_approx(1000, 0.125, 250.0).unwrap();
        assert!(close(s.value, 0.369_269_139_949_771_477_446_811_3, 1e-13));
        assert!(!s.advisory);
        let mid = slepian_approx(1000, 0.125, 249.5).unwrap();
        assert_eq!(mid.value, 0.5);
        let far = slepian_approx(1000, 0.125, 400.0).unwrap();
        assert!(far.advisory && far.value < s.value);
    }

    #[test]
    fn continuous_bounds() {
        let c = std::f64::consts::PI * 50.0;
        let v = pswf_width_bound(c, 1e-3).unwrap();
        assert!(close(v.value, 21.710_536_148_978_872_489_636_81, 1e-13));
        let a = pswf_width_bound(std::f64::consts::PI * 125.0, 1e-3).unwrap();
        let b = width_bound_thm2(1000, 0.125, 1e-3).unwrap();
        assert!(close(a.value, b.value, 1e-15));
        assert!(pswf_width_bound(-1.0, 1e-3).is_err());
    }

    #[test]
    fn delta_values() {
        let c = std::f64::consts::PI * 50.0;
        let want = [
            (2000, 0.001_314_395_509_347_310_587_823_659),
            (3000, 0.000_582_841_094_691_522_227_784_822),
            (4000, 0.000_327_585_916_662_329_390_406_764_9),
        ];
        for (n, d) in want {
            assert!(close(pswf_delta(c, n).unwrap(), d, 1e-12));
        }
        assert!(pswf_delta(c, 100).is_err());
    }

    #[test]
    fn continuous_envelope_matches_discrete_second_term() {
        let c = std::f64::consts::PI * 125.0;
        let pe = pswf_eig_envelope(c, 300).unwrap();
        let a2 = 2.0 / std::f64::consts::PI.powi(2) * (100.0 * 125.0 + 25.0_f64).ln();
        let want = 10.0 * (-(300.0 - 250.0 - 6.0) / a2).exp();
        assert!(close(pe.upper, want, 1e-12));
        let small = pswf_eig_envelope(1.0, 1).unwrap();
        assert!(small.upper_clamped);
    }

    #[test]
    fn bound_set_is_complete() {
        let p = ProlateParams::new(1000, 0.125).unwrap();
        let set = BoundSet::evaluate(&p, Some(1e-3), None, None, None).unwrap();
        assert_eq!(set.values.len(), BoundId::ALL.len());
        assert_eq!(set.get(BoundId::Thm1).unwrap().integer_report, Some(14));
        assert_eq!(set.get(BoundId::Eq6Fst).unwrap().integer_report, Some(185));
        let small = BoundSet::evaluate(&ProlateParams::new(2, 0.25_f64).unwrap(), Some(0.25), None, None, None).unwrap();
        for v in small.values.values() {
            if let Some(x) = v.value {
                assert!(x.is_finite());
            }
        }
    }
}
