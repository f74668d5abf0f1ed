//! Low-rank displacement structure of the boundary matrix `X_L`.
//!
//! `X_L` holds the sinc kernel between the out-of-window rows
//! `I_L = {-L..-1} ∪ {N..N+L-1}` and the columns `0..N-1`. It satisfies
//! `C X - X D = U V^T` with diagonal `C`, `D` and rank-2 right-hand side,
//! which together with Zolotarev bounds forces rapid singular value decay.

use ndarray::{s, Array2, Axis};
use serde::Serialize;

use crate::error::{domain, param, Error, Result};
use crate::kernel::{build_prolate_matrix, dense_cap, sin_cos_two_pi, ProlateParams};
use crate::linalg::{singular_values, symmetric_eigenvalues};
use crate::scalar::Real;

/// Number of sample points per set in [`mobius_normalize`].
pub const MOBIUS_SAMPLES: usize = 100;

/// Pair of disjoint sets on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SetPair<T> {
    /// `[-b, -a]` and `[a, b]` with `0 < a < b`.
    Symmetric { a: T, b: T },
    /// `[c1, c2]` and `[d1, d2]`, nonoverlapping.
    Intervals { c1: T, c2: T, d1: T, d2: T },
    /// `[-inf, c1] ∪ [c2, inf]` and `[d1, d2]` with `c1 < d1 < d2 < c2`.
    Unbounded { c1: T, d1: T, d2: T, c2: T },
}

/// A validated set pair with its cross-ratio `gamma` and the half-width
/// `alpha` of the symmetric normal form `[-alpha, -1] ∪ [1, alpha]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZolotarevSetPair<T> {
    pub sets: SetPair<T>,
    pub gamma: T,
    pub alpha: T,
}

fn alpha_of_gamma<T: Real>(gamma: T) -> T {
    T::lit(2.0) * gamma - T::one() + T::lit(2.0) * (gamma * gamma - gamma).sqrt()
}

fn interval_gamma<T: Real>(c1: T, c2: T, d1: T, d2: T) -> T {
    (d1 - c1) * (d2 - c2) / ((d2 - c1) * (d1 - c2))
}

fn unbounded_gamma<T: Real>(c1: T, d1: T, d2: T, c2: T) -> T {
    (c2 - d1) * (d2 - c1) / ((c2 - d2) * (d1 - c1))
}

impl<T: Real> ZolotarevSetPair<T> {
    pub fn new(sets: SetPair<T>) -> Result<Self> {
        let finite = |xs: &[T]| xs.iter().all(|x| x.is_finite());
        let (gamma, alpha) = match sets {
            SetPair::Symmetric { a, b } => {
                if !finite(&[a, b]) || !(a > T::zero() && b > a) {
                    return domain("symmetric sets need 0 < a < b");
                }
                let alpha = b / a;
                ((alpha + T::one()) * (alpha + T::one()) / (T::lit(4.0) * alpha), alpha)
            }
            SetPair::Intervals { c1, c2, d1, d2 } => {
                if !finite(&[c1, c2, d1, d2]) || !(c1 < c2 && d1 < d2) || !(c2 < d1 || d2 < c1) {
                    return domain("intervals must be proper and nonoverlapping");
                }
                let g = interval_gamma(c1, c2, d1, d2);
                (g, alpha_of_gamma(g))
            }
            SetPair::Unbounded { c1, d1, d2, c2 } => {
                if !finite(&[c1, d1, d2, c2]) || !(c1 < d1 && d1 < d2 && d2 < c2) {
                    return domain("unbounded pair needs c1 < d1 < d2 < c2");
                }
                let g = unbounded_gamma(c1, d1, d2, c2);
                (g, alpha_of_gamma(g))
            }
        };
        if !(gamma > T::one()) {
            return domain(format!("cross-ratio {gamma} must exceed 1"));
        }
        Ok(Self { sets, gamma, alpha })
    }
}

/// Upper bound on the Zolotarev number `Z_k` of the pair.
///
/// Symmetric pairs use `4 exp(-pi^2 k / log(4b/a))`; the others use
/// `4 exp(-pi^2 k / log(16 gamma))`.
pub fn zolotarev_bound<T: Real>(pair: &ZolotarevSetPair<T>, k: usize) -> T {
    let pk = T::PI() * T::PI() * T::of_usize(k);
    let denom = match pair.sets {
        SetPair::Symmetric { a, b } => (T::lit(4.0) * b / a).ln(),
        _ => (T::lit(16.0) * pair.gamma).ln(),
    };
    T::lit(4.0) * (-pk / denom).exp()
}

/// Fractional linear map `z -> (b1 z + b2) / (b3 z + b4)` on the extended
/// real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mobius<T> {
    pub coeffs: [T; 4],
}

impl<T: Real> Mobius<T> {
    pub fn new(coeffs: [T; 4]) -> Result<Self> {
        let [b1, b2, b3, b4] = coeffs;
        if b1 * b4 == b2 * b3 {
            return domain("degenerate Mobius map");
        }
        Ok(Self { coeffs })
    }

    /// Image of `z`; infinite inputs map to `b1 / b3`, poles to infinity.
    pub fn apply(&self, z: T) -> T {
        let [b1, b2, b3, b4] = self.coeffs;
        if z.is_infinite() {
            return if b3 == T::zero() { T::infinity() } else { b1 / b3 };
        }
        let den = b3 * z + b4;
        if den == T::zero() {
            return T::infinity();
        }
        (b1 * z + b2) / den
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        let [a1, a2, a3, a4] = self.coeffs;
        let [b1, b2, b3, b4] = inner.coeffs;
        Self { coeffs: [a1 * b1 + a2 * b3, a1 * b2 + a2 * b4, a3 * b1 + a4 * b3, a3 * b2 + a4 * b4] }
    }

    pub fn inverse(&self) -> Self {
        let [b1, b2, b3, b4] = self.coeffs;
        Self { coeffs: [b4, -b2, -b3, b1] }
    }
}

/// Map sending a set pair onto `[-alpha, -1]` and `[1, alpha]`, with the
/// sampled verification results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MobiusNormalization<T> {
    pub map: Mobius<T>,
    pub alpha: T,
    /// Largest relative distance of a mapped sample from its target interval.
    pub residual: T,
    /// Largest relative error of `map^-1(map(z))` over the samples.
    pub round_trip: T,
    /// Images of the four finite endpoints, in the order of the set pair's
    /// fields.
    pub endpoint_images: [T; 4],
    /// `gamma` recomputed from the mapped endpoints.
    pub mapped_gamma: T,
}

fn geometric_samples<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    // Offsets from lo spaced logarithmically in (0, hi - lo], plus lo itself.
    let span = hi - lo;
    let mut out = vec![lo];
    let m = count - 1;
    for j in 0..m {
        let t = T::lit(10.0).powf(T::lit(-6.0) * T::of_usize(m - 1 - j) / T::of_usize((m - 1).max(1)));
        out.push(lo + span * t);
    }
    out[count - 1] = hi;
    out
}

fn unbounded_samples<T: Real>(c1: T, c2: T, count: usize) -> Vec<T> {
    let scale = (c2 - c1).abs().max(T::one());
    let half = count / 2;
    let mut out = Vec::with_capacity(count);
    for j in 0..half {
        let t = T::lit(10.0).powf(T::lit(6.0) * T::of_usize(j) / T::of_usize((half - 1).max(1)) - T::lit(3.0));
        let off = if j == 0 { T::zero() } else { scale * t };
        out.push(c1 - off);
        out.push(c2 + off);
    }
    out
}

fn distance_to<T: Real>(v: T, lo: T, hi: T) -> T {
    let d = if v < lo {
        lo - v
    } else if v > hi {
        v - hi
    } else {
        T::zero()
    };
    if v.is_finite() {
        d / v.abs().max(T::one())
    } else {
        T::infinity()
    }
}

/// Builds `phi = phi2^-1 ∘ phi1` sending the pair onto the symmetric
/// normal form and verifies it on [`MOBIUS_SAMPLES`] points per set.
pub fn mobius_normalize<T: Real>(pair: &ZolotarevSetPair<T>) -> Result<MobiusNormalization<T>> {
    let alpha = pair.alpha;
    let one = T::one();
    let phi2_inv = Mobius::new([alpha + one, alpha - one, alpha + one, -(alpha - one)])?;
    let (map, first, second, ends) = match pair.sets {
        SetPair::Symmetric { a, b } => {
            let map = Mobius::new([one, T::zero(), T::zero(), a])?;
            let first: Vec<T> = geometric_samples(a, b, MOBIUS_SAMPLES).into_iter().map(|x| -x).collect();
            (map, first, geometric_samples(a, b, MOBIUS_SAMPLES), [a, b, a, b])
        }
        SetPair::Intervals { c1, c2, d1, d2 } => {
            let phi1 = Mobius::new([d2 - d1, -(d2 - d1) * c2, d2 - c2, -(d2 - c2) * d1])?;
            let map = phi2_inv.compose(&phi1);
            (
                map,
                geometric_samples(c1, c2, MOBIUS_SAMPLES),
                geometric_samples(d1, d2, MOBIUS_SAMPLES),
                [c1, c2, d1, d2],
            )
        }
        SetPair::Unbounded { c1, d1, d2, c2 } => {
            let phi1 = Mobius::new([d2 - d1, -(d2 - d1) * c1, d2 - c1, -(d2 - c1) * d1])?;
            let map = phi2_inv.compose(&phi1);
            let mut first = unbounded_samples(c1, c2, MOBIUS_SAMPLES);
            first.push(T::infinity());
            (map, first, geometric_samples(d1, d2, MOBIUS_SAMPLES), [c1, d1, d2, c2])
        }
    };
    let mut residual = T::zero();
    for &z in &first {
        residual = residual.max(distance_to(map.apply(z), -alpha, -one));
    }
    for &z in &second {
        residual = residual.max(distance_to(map.apply(z), one, alpha));
    }
    let inv = map.inverse();
    let mut round_trip = T::zero();
    for &z in first.iter().chain(&second).filter(|z| z.is_finite()) {
        let back = inv.apply(map.apply(z));
        round_trip = round_trip.max((back - z).abs() / z.abs().max(one));
    }
    let endpoint_images = match pair.sets {
        SetPair::Symmetric { a, b } => [-b / a, -one, one, b / a],
        _ => ends.map(|z| map.apply(z)),
    };
    let mapped_gamma = match pair.sets {
        SetPair::Symmetric { .. } | SetPair::Intervals { .. } => {
            let [c1, c2, d1, d2] = endpoint_images;
            let (lo1, hi1) = (c1.min(c2), c1.max(c2));
            let (lo2, hi2) = (d1.min(d2), d1.max(d2));
            interval_gamma(lo1, hi1, lo2, hi2)
        }
        SetPair::Unbounded { .. } => {
            // [c1, d1, d2, c2] map to [-1, 1, alpha, -alpha].
            let [c1, d1, d2, c2] = endpoint_images;
            interval_gamma(c2, c1, d1, d2)
        }
    };
    Ok(MobiusNormalization { map, alpha, residual, round_trip, endpoint_images, mapped_gamma })
}

/// The matrices of `C X - X D = U V^T` for the boundary block `X_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementSystem<T> {
    pub x: Array2<T>,
    pub c: Vec<T>,
    pub d: Vec<T>,
    pub u: Array2<T>,
    pub v: Array2<T>,
    pub rows: Vec<i64>,
}

impl<T: Real> DisplacementSystem<T> {
    /// `max |C X - X D - U V^T|`.
    pub fn displacement_residual(&self) -> T {
        let (m, n) = self.x.dim();
        let mut worst = T::zero();
        for i in 0..m {
            for j in 0..n {
                let lhs = self.c[i] * self.x[[i, j]] - self.x[[i, j]] * self.d[j];
                let rhs = self.u[[i, 0]] * self.v[[j, 0]] + self.u[[i, 1]] * self.v[[j, 1]];
                worst = worst.max((lhs - rhs).abs());
            }
        }
        worst
    }

    pub fn singular_values(&self) -> Vec<T> {
        singular_values(&self.x)
    }

    /// `X^T X`.
    pub fn gram(&self) -> Array2<T> {
        self.x.t().dot(&self.x)
    }

    /// Rows whose index lies in `set`, as a new matrix.
    pub fn select_rows(&self, keep: impl Fn(i64) -> bool) -> Array2<T> {
        let idx: Vec<usize> = (0..self.rows.len()).filter(|&i| keep(self.rows[i])).collect();
        self.x.select(Axis(0), &idx)
    }
}

/// Row index set `{-L..-1} ∪ {N..N+L-1}`.
pub fn boundary_rows(n: usize, l: usize) -> Vec<i64> {
    let (n, l) = (n as i64, l as i64);
    (-l..0).chain(n..n + l).collect()
}

/// Builds `X_L` with its displacement factors.
pub fn build_xl<T: Real>(p: &ProlateParams<T>, l: usize) -> Result<DisplacementSystem<T>> {
    if l == 0 {
        return param("L must be at least 1");
    }
    let n = p.n();
    let cap = dense_cap();
    if 2 * l > 4 * cap || n > cap {
        return Err(Error::Capacity { requested: (2 * l).max(n), cap });
    }
    let g = p.kernel();
    let w = p.w();
    let rows = boundary_rows(n, l);
    let col = |d: i64| g.value(d);
    let x = Array2::from_shape_fn((rows.len(), n), |(i, j)| col(rows[i] - j as i64));
    let inv_sqrt_pi = T::one() / T::PI().sqrt();
    let u = Array2::from_shape_fn((rows.len(), 2), |(i, q)| {
        let (s, c) = sin_cos_two_pi(w, rows[i]);
        inv_sqrt_pi * if q == 0 { s } else { c }
    });
    let v = Array2::from_shape_fn((n, 2), |(j, q)| {
        let (s, c) = sin_cos_two_pi(w, j as i64);
        inv_sqrt_pi * if q == 0 { c } else { -s }
    });
    Ok(DisplacementSystem {
        x,
        c: rows.iter().map(|&r| T::of_i64(r)).collect(),
        d: (0..n).map(T::of_usize).collect(),
        u,
        v,
        rows,
    })
}

/// `||(B - B^2) - X_L^T X_L||_F`.
pub fn gram_defect<T: Real>(p: &ProlateParams<T>, l: usize) -> Result<T> {
    let b = build_prolate_matrix(p)?;
    let diff = &b - &b.dot(&b) - build_xl(p, l)?.gram();
    Ok(diff.iter().map(|&v| v * v).sum::<T>().sqrt())
}

/// Smallest eigenvalue of `(B - B^2) - X_L^T X_L`, nonnegative up to
/// rounding because `X_L^T X_L` is a compression of `B - B^2`.
pub fn loewner_min_eig<T: Real>(p: &ProlateParams<T>, l: usize) -> Result<T> {
    let b = build_prolate_matrix(p)?;
    let mut diff = &b - &b.dot(&b) - build_xl(p, l)?.gram();
    let n = diff.nrows();
    for i in 0..n {
        for j in 0..i {
            let s = (diff[[i, j]] + diff[[j, i]]) * T::lit(0.5);
            diff[[i, j]] = s;
            diff[[j, i]] = s;
        }
    }
    let eigs = symmetric_eigenvalues(&diff)?;
    Ok(*eigs.last().expect("non-empty"))
}

/// `sigma_{2k+1}(X_L)` against `2 exp(-pi^2 k / log(16 N^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRow<T> {
    pub k: usize,
    pub sigma: T,
    pub bound: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvDecayReport<T> {
    pub n: usize,
    pub l: usize,
    pub norm: T,
    pub rows: Vec<DecayRow<T>>,
    pub monotone: bool,
}

impl<T: Real> SvDecayReport<T> {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `sigma_j` with the convention that it vanishes past the rank.
fn sigma_at<T: Real>(s: &[T], j: usize) -> T {
    if j == 0 {
        return T::infinity();
    }
    s.get(j - 1).copied().unwrap_or(T::zero())
}

/// Singular value decay of `X_L` against the bound for `gamma = N^2`.
pub fn sv_decay_check<T: Real>(p: &ProlateParams<T>, l: usize, k_max: usize) -> Result<SvDecayReport<T>> {
    let sys = build_xl(p, l)?;
    let s = sys.singular_values();
    let nf = T::of_usize(p.n());
    let denom = (T::lit(16.0) * nf * nf).ln();
    let tol = T::lit(1e-12);
    let rows = (0..=k_max)
        .map(|k| {
            let sigma = sigma_at(&s, 2 * k + 1);
            let bound = T::lit(2.0) * (-T::PI() * T::PI() * T::of_usize(k) / denom).exp();
            DecayRow { k, sigma, bound, holds: sigma <= bound + tol }
        })
        .collect::<Vec<_>>();
    let monotone = rows.windows(2).all(|w| w[1].sigma <= w[0].sigma);
    Ok(SvDecayReport { n: p.n(), l, norm: s.first().copied().unwrap_or(T::zero()), rows, monotone })
}

/// One `(k0, k)` combination of the three-block singular value argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylRow<T> {
    pub k0: usize,
    pub k: usize,
    /// `sigma_{2k0+2k+1}(X_L)^2`.
    pub lhs: T,
    /// `sigma_{2k0+1}(X0)^2 + sigma_{k+1}(X1)^2 + sigma_{k+1}(X2)^2`.
    pub measured_rhs: T,
    /// The same sum with each term replaced by its analytic bound.
    pub bound_rhs: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport<T> {
    pub n: usize,
    pub w: T,
    pub l: usize,
    pub l1: usize,
    /// `(k0, sigma_{2k0+1}(X0), 2 exp(-pi^2 k0 / (2 log(16NW+4))))`.
    pub block0: Vec<(usize, T, T)>,
    /// `(k, sigma_{k+1}(X1), sigma_{k+1}(X2), sqrt(5600/pi) (pi/48)^k)`.
    pub block12: Vec<(usize, T, T, T)>,
    /// Largest difference between the singular values of X1 and X2,
    /// relative to the leading one.
    pub flip_mismatch: T,
    /// X2 equals X1 with rows and columns reversed, entry for entry.
    pub flip_exact: bool,
    pub weyl: Vec<WeylRow<T>>,
}

impl<T: Real> PartitionReport<T> {
    pub fn block0_holds(&self) -> bool {
        self.block0.iter().all(|&(_, s, b)| s <= b + T::lit(1e-12))
    }

    pub fn block12_holds(&self) -> bool {
        self.block12.iter().all(|&(_, s1, s2, b)| s1 <= b + T::lit(1e-12) && s2 <= b + T::lit(1e-12))
    }

    pub fn flip_holds(&self) -> bool {
        self.flip_exact && self.flip_mismatch <= T::lit(1e-10)
    }

    pub fn weyl_holds(&self) -> bool {
        self.weyl.iter().all(|r| r.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.block0_holds() && self.block12_holds() && self.flip_holds() && self.weyl_holds()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PartitionOutcome<T> {
    /// `W >= 1/4`: the width-free bound already applies and no partition is
    /// used.
    NotApplicable,
    Checked(PartitionReport<T>),
}

/// `sqrt(5600/pi) (pi/48)^k`.
pub fn block_bound<T: Real>(k: usize) -> T {
    (T::lit(5600.0) / T::PI()).sqrt() * (T::PI() / T::lit(48.0)).powi(k as i32)
}

/// `floor(1 / (4W))`.
pub fn l1_of<T: Real>(w: T) -> usize {
    (T::one() / (T::lit(4.0) * w)).floor().to_usize().unwrap_or(usize::MAX)
}

/// Splits `X_L` into the far block and the two blocks adjacent to the
/// window and checks each block bound and their Weyl combination.
pub fn partition_check<T: Real>(
    p: &ProlateParams<T>,
    l: usize,
    k0_max: usize,
    k_max: usize,
) -> Result<PartitionOutcome<T>> {
    if p.w() >= T::lit(0.25) {
        return Ok(PartitionOutcome::NotApplicable);
    }
    let n = p.n();
    let l1 = l1_of(p.w());
    if l < l1 + 1 {
        return param(format!("L = {l} must be at least L1 + 1 = {}", l1 + 1));
    }
    let sys = build_xl(p, l)?;
    let (ni, l1i) = (n as i64, l1 as i64);
    let x0 = sys.select_rows(|r| r < -l1i || r >= ni + l1i);
    let x1 = sys.select_rows(|r| (-l1i..0).contains(&r));
    let x2 = sys.select_rows(|r| (ni..ni + l1i).contains(&r));
    let s_all = sys.singular_values();
    let s0 = singular_values(&x0);
    let s1 = singular_values(&x1);
    let s2 = singular_values(&x2);

    let denom0 = T::lit(2.0) * (T::lit(16.0) * p.nw() + T::lit(4.0)).ln();
    let bound0 = |k0: usize| T::lit(2.0) * (-T::PI() * T::PI() * T::of_usize(k0) / denom0).exp();
    let block0 = (0..=k0_max).map(|k0| (k0, sigma_at(&s0, 2 * k0 + 1), bound0(k0))).collect();
    let block12 = (0..=k_max)
        .map(|k| (k, sigma_at(&s1, k + 1), sigma_at(&s2, k + 1), block_bound::<T>(k)))
        .collect();

    let scale = s1.first().copied().unwrap_or(T::one()).max(T::min_positive_value());
    let flip_mismatch = s1.iter().zip(&s2).map(|(&a, &b)| (a - b).abs() / scale).fold(T::zero(), T::max);
    let flip_exact = flip_block(&x1) == x2;

    let mut weyl = Vec::new();
    for k0 in 0..=k0_max {
        for k in 0..=k_max {
            let lhs = sigma_at(&s_all, 2 * k0 + 2 * k + 1).powi(2);
            let measured_rhs =
                sigma_at(&s0, 2 * k0 + 1).powi(2) + sigma_at(&s1, k + 1).powi(2) + sigma_at(&s2, k + 1).powi(2);
            let bound_rhs = bound0(k0).powi(2) + T::lit(2.0) * block_bound::<T>(k).powi(2);
            let slack = T::lit(1e-12) * (T::one() + measured_rhs);
            let holds = lhs <= measured_rhs + slack && lhs <= bound_rhs + slack;
            weyl.push(WeylRow { k0, k, lhs, measured_rhs, bound_rhs, holds });
        }
    }
    Ok(PartitionOutcome::Checked(PartitionReport {
        n,
        w: p.w(),
        l,
        l1,
        block0,
        block12,
        flip_mismatch,
        flip_exact,
        weyl,
    }))
}

/// Copy of `x` with rows and columns reversed. Applied to X1 this gives X2.
pub fn flip_block<T: Real>(x: &Array2<T>) -> Array2<T> {
    x.slice(s![..;-1, ..;-1]).to_owned()
}
