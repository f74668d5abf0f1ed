//! Eigenvalues of the prolate matrix.
//!
//! Two routes are provided. The dense route materializes the matrix and runs
//! a symmetric eigensolver; it serves as the oracle for moderate `N`. The
//! tridiagonal route uses the symmetric tridiagonal matrix that commutes
//! with the prolate matrix, so only eigenvectors are computed there and the
//! eigenvalues follow from Rayleigh quotients taken with a fast Toeplitz
//! product. Values close to one are recovered from the complementary
//! bandwidth `1/2 - W` so that `1 - lambda` keeps its relative accuracy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Result};
use crate::kernel::{build_prolate_matrix, ProlateParams, SymmetricToeplitz};
use crate::linalg::{symmetric_eigenvalues, SymTridiagonal};
use crate::scalar::{compensated_dot, compensated_sum, Real};

/// Values of `lambda` or `1 - lambda` below this are reported as saturated.
pub const RESOLUTION_FLOOR: f64 = 1e-15;

/// Width counts at thresholds at or below this carry an advisory flag.
pub const ADVISORY_EPS: f64 = 1e-13;

const INITIAL_HALF_WINDOW: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Tridiagonal,
}

/// One eigenvalue `lambda_k` with its complement `1 - lambda_k`, each
/// carried at full relative precision where the route allows it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry<T> {
    pub k: usize,
    pub lambda: T,
    pub complement: T,
    pub saturated: bool,
}

impl<T: Real> SpectrumEntry<T> {
    fn from_lambda(k: usize, raw: T) -> Self {
        Self::from_pair(k, raw, T::one() - raw)
    }

    fn from_pair(k: usize, lambda: T, complement: T) -> Self {
        let floor = T::lit(RESOLUTION_FLOOR);
        let saturated = lambda < floor || complement < floor;
        let lambda = lambda.max(T::zero()).min(T::one());
        let complement = complement.max(T::zero()).min(T::one());
        Self { k, lambda, complement, saturated }
    }

    /// `eps < lambda < 1 - eps`, evaluated on whichever side is accurate.
    pub fn in_transition(&self, eps: T) -> bool {
        self.lambda > eps && self.complement > eps
    }
}

/// A contiguous run `kmin..=kmax` of eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSlice<T> {
    pub params: ProlateParams<T>,
    pub method: Method,
    pub kmin: usize,
    pub kmax: usize,
    pub entries: Vec<SpectrumEntry<T>>,
}

impl<T: Real> SpectrumSlice<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&SpectrumEntry<T>> {
        if k < self.kmin || k > self.kmax {
            return None;
        }
        self.entries.get(k - self.kmin)
    }

    pub fn lambdas(&self) -> Vec<T> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    /// Whether the slice covers the full index range `0..N`.
    pub fn is_full(&self) -> bool {
        self.kmin == 0 && self.kmax + 1 == self.params.n()
    }

    /// Number of entries with `eps < lambda < 1 - eps`.
    pub fn count_transition(&self, eps: T) -> usize {
        self.entries.iter().filter(|e| e.in_transition(eps)).count()
    }

    /// `sum_{k < K} (1 - lambda_k)`; requires a full slice.
    pub fn head_sum(&self, kk: usize) -> Result<T> {
        self.require_full()?;
        if kk > self.params.n() {
            return param(format!("K = {kk} exceeds N = {}", self.params.n()));
        }
        Ok(compensated_sum(self.entries[..kk].iter().map(|e| e.complement)))
    }

    /// `sum_{k >= K} lambda_k`; requires a full slice.
    pub fn tail_sum(&self, kk: usize) -> Result<T> {
        self.require_full()?;
        if kk > self.params.n() {
            return param(format!("K = {kk} exceeds N = {}", self.params.n()));
        }
        Ok(compensated_sum(self.entries[kk..].iter().map(|e| e.lambda)))
    }

    fn require_full(&self) -> Result<()> {
        if !self.is_full() {
            return param("sums need the full spectrum");
        }
        Ok(())
    }
}

/// Result of counting eigenvalues inside `(eps, 1 - eps)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionReport<T> {
    pub params: ProlateParams<T>,
    pub eps: T,
    pub width: usize,
    pub k_first: Option<usize>,
    pub k_last: Option<usize>,
    /// The count may be off by one because some value sits at the
    /// resolution floor or within `1e-14` of the threshold.
    pub advisory: bool,
}

/// Full spectrum from the dense eigensolver.
pub fn dense_spectrum<T: Real>(p: &ProlateParams<T>) -> Result<SpectrumSlice<T>> {
    let b = build_prolate_matrix(p)?;
    let values = symmetric_eigenvalues(&b)?;
    Ok(SpectrumSlice {
        params: *p,
        method: Method::Dense,
        kmin: 0,
        kmax: p.n() - 1,
        entries: values.into_iter().enumerate().map(|(k, v)| SpectrumEntry::from_lambda(k, v)).collect(),
    })
}

/// Reusable state for the tridiagonal route at fixed `(N, W)`.
pub struct TridiagonalSolver<T: Real> {
    params: ProlateParams<T>,
    commuting: SymTridiagonal<T>,
    op: SymmetricToeplitz<T>,
    op_complement: SymmetricToeplitz<T>,
}

impl<T: Real> TridiagonalSolver<T> {
    pub fn new(p: &ProlateParams<T>) -> Result<Self> {
        let n = p.n();
        let half = T::lit(0.5) * T::of_usize(n - 1);
        let cw = (T::lit(2.0) * T::PI() * p.w()).cos();
        let diag = (0..n)
            .map(|i| {
                let x = half - T::of_usize(i);
                x * x * cw
            })
            .collect();
        let off = (0..n - 1).map(|i| T::of_usize(i + 1) * T::of_usize(n - 1 - i) * T::lit(0.5)).collect();
        let commuting = SymTridiagonal::new(diag, off)?;
        let op = SymmetricToeplitz::new(&p.kernel().first_column(n))?;
        let op_complement = SymmetricToeplitz::new(&p.complement().kernel().first_column(n))?;
        Ok(Self { params: *p, commuting, op, op_complement })
    }

    pub fn params(&self) -> &ProlateParams<T> {
        &self.params
    }

    /// The commuting tridiagonal matrix.
    pub fn commuting(&self) -> &SymTridiagonal<T> {
        &self.commuting
    }

    /// Entries for `kmin..=kmax`.
    pub fn entries(&self, kmin: usize, kmax: usize) -> Result<Vec<SpectrumEntry<T>>> {
        let n = self.params.n();
        if kmin > kmax || kmax >= n {
            return param(format!("index range {kmin}..={kmax} invalid for N = {n}"));
        }
        if n == 1 {
            return Ok(vec![SpectrumEntry::from_lambda(0, self.params.time_bandwidth())]);
        }
        let pairs = self.commuting.eigenvectors_descending(kmin, kmax)?;
        pairs
            .par_iter()
            .enumerate()
            .map(|(j, (_, s))| self.rayleigh(kmin + j, s))
            .collect()
    }

    fn rayleigh(&self, k: usize, s: &[T]) -> Result<SpectrumEntry<T>> {
        let bs = self.op.apply(s)?;
        let lambda = compensated_dot(s, &bs);
        if lambda <= T::lit(0.5) {
            return Ok(SpectrumEntry::from_lambda(k, lambda));
        }
        // With D = diag((-1)^n), D s is an eigenvector of the complementary
        // prolate matrix with eigenvalue 1 - lambda.
        let ds: Vec<T> = s.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v } else { -v }).collect();
        let bds = self.op_complement.apply(&ds)?;
        let mu = compensated_dot(&ds, &bds);
        Ok(SpectrumEntry::from_pair(k, T::one() - mu, mu))
    }
}

/// Eigenvalues `kmin..=kmax` by the commuting tridiagonal route.
pub fn tridiagonal_spectrum<T: Real>(p: &ProlateParams<T>, kmin: usize, kmax: usize) -> Result<SpectrumSlice<T>> {
    let solver = TridiagonalSolver::new(p)?;
    Ok(SpectrumSlice {
        params: *p,
        method: Method::Tridiagonal,
        kmin,
        kmax,
        entries: solver.entries(kmin, kmax)?,
    })
}

/// Full spectrum by the requested route.
pub fn full_spectrum<T: Real>(p: &ProlateParams<T>, method: Method) -> Result<SpectrumSlice<T>> {
    match method {
        Method::Dense => dense_spectrum(p),
        Method::Tridiagonal => tridiagonal_spectrum(p, 0, p.n() - 1),
    }
}

fn check_eps<T: Real>(eps: T) -> Result<()> {
    if !(eps > T::zero() && eps < T::lit(0.5)) {
        return param(format!("eps must lie in (0, 1/2), got {eps}"));
    }
    Ok(())
}

/// Slice of the spectrum around `2NW` wide enough that every index outside
/// it is known to lie outside `(eps, 1 - eps)`.
pub fn transition_window<T: Real>(p: &ProlateParams<T>, eps: T) -> Result<SpectrumSlice<T>> {
    check_eps(eps)?;
    let solver = TridiagonalSolver::new(p)?;
    let n = p.n();
    let center = p.floor_2nw().min(n - 1);
    let mut half = INITIAL_HALF_WINDOW;
    let mut lo = center.saturating_sub(half);
    let mut hi = (center + half).min(n - 1);
    let mut entries = solver.entries(lo, hi)?;
    loop {
        let low_done = lo == 0 || entries[0].complement <= eps;
        let high_done = hi == n - 1 || entries[entries.len() - 1].lambda <= eps;
        if low_done && high_done {
            break;
        }
        half *= 2;
        if !low_done {
            let new_lo = center.saturating_sub(half);
            let mut head = solver.entries(new_lo, lo - 1)?;
            head.extend(entries);
            entries = head;
            lo = new_lo;
        }
        if !high_done {
            let new_hi = (center + half).min(n - 1);
            entries.extend(solver.entries(hi + 1, new_hi)?);
            hi = new_hi;
        }
    }
    Ok(SpectrumSlice { params: *p, method: Method::Tridiagonal, kmin: lo, kmax: hi, entries })
}

/// Transition report for one threshold computed from an existing slice.
///
/// The slice must extend past the transition region on both sides (or
/// reach the ends of the spectrum), as produced by [`transition_window`].
pub fn transition_report<T: Real>(slice: &SpectrumSlice<T>, eps: T) -> Result<TransitionReport<T>> {
    check_eps(eps)?;
    let inside: Vec<usize> = slice.entries.iter().filter(|e| e.in_transition(eps)).map(|e| e.k).collect();
    let near = T::lit(1e-14);
    let advisory = eps <= T::lit(ADVISORY_EPS) * T::lit(1.0 + 1e-9)
        || slice.entries.iter().any(|e| (e.lambda - eps).abs() <= near || (e.complement - eps).abs() <= near);
    Ok(TransitionReport {
        params: slice.params,
        eps,
        width: inside.len(),
        k_first: inside.first().copied(),
        k_last: inside.last().copied(),
        advisory,
    })
}

/// `#{k : eps < lambda_k < 1 - eps}` by the tridiagonal route.
pub fn transition_width<T: Real>(p: &ProlateParams<T>, eps: T) -> Result<TransitionReport<T>> {
    transition_report(&transition_window(p, eps)?, eps)
}

/// Transition reports for several thresholds sharing one spectrum slice.
pub fn transition_widths<T: Real>(p: &ProlateParams<T>, eps: &[T]) -> Result<Vec<TransitionReport<T>>> {
    let Some(smallest) = eps.iter().copied().reduce(T::min) else {
        return Ok(Vec::new());
    };
    for &e in eps {
        check_eps(e)?;
    }
    let slice = transition_window(p, smallest)?;
    eps.iter().map(|&e| transition_report(&slice, e)).collect()
}

/// `sum_{k < K} (1 - lambda_k)` for `0 <= K <= N`.
pub fn eigensum_head<T: Real>(p: &ProlateParams<T>, kk: usize) -> Result<T> {
    if kk > p.n() {
        return param(format!("K = {kk} exceeds N = {}", p.n()));
    }
    if kk == 0 {
        return Ok(T::zero());
    }
    let s = tridiagonal_spectrum(p, 0, kk - 1)?;
    Ok(compensated_sum(s.entries.iter().map(|e| e.complement)))
}

/// `sum_{k >= K} lambda_k` for `0 <= K <= N`.
pub fn eigensum_tail<T: Real>(p: &ProlateParams<T>, kk: usize) -> Result<T> {
    let n = p.n();
    if kk > n {
        return param(format!("K = {kk} exceeds N = {n}"));
    }
    if kk == n {
        return Ok(T::zero());
    }
    let s = tridiagonal_spectrum(p, kk, n - 1)?;
    Ok(compensated_sum(s.entries.iter().map(|e| e.lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, w: f64) -> ProlateParams<f64> {
        ProlateParams::new(n, w).unwrap()
    }

    // Eigenvalues of the 16 x 16 matrix at W = 0.1, evaluated at 60 digits.
    const N16_W01: [f64; 16] = [
        0.99946020823820496,
        0.98190239490492859902,
        0.80891351522738977318,
        0.34994948247221840546,
        0.055735832718323913131,
        0.0038757204135448147995,
        0.00015842784405863427177,
        4.3338771054385673046e-6,
        8.3151177019336711413e-8,
        1.1416915167375955675e-9,
        1.1277229864919803063e-11,
        7.9482090088683222602e-14,
        3.8991098383060261685e-16,
        1.2646282715076318968e-18,
        2.4371175610127345737e-21,
        2.1125844601004548887e-24,
    ];

    // 1 - lambda_k for k = 0..11 at N = 24, W = 0.3, evaluated at 60 digits.
    const N24_W03_COMPLEMENT: [f64; 12] = [
        1.8964086830155688964e-22,
        7.9730020073075283993e-20,
        1.5633952746528196264e-17,
        1.8983411090002601311e-15,
        1.5980970477999617465e-13,
        9.8942382854897493102e-12,
        4.6626559266763435271e-10,
        1.7070283186127176242e-8,
        4.9095996287898137954e-7,
        0.000011133093458062950478,
        0.00019816673544926472334,
        0.0027197222081777431422,
    ];

    #[test]
    fn one_by_one() {
        let s = dense_spectrum(&params(1, 0.1)).unwrap();
        assert_eq!(s.entries[0].lambda, 0.2);
        let t = tridiagonal_spectrum(&params(1, 0.1), 0, 0).unwrap();
        assert_eq!(t.entries[0].lambda, 0.2);
        let r = transition_width(&params(1, 0.1), 0.05).unwrap();
        assert_eq!(r.width, 1);
        assert_eq!((r.k_first, r.k_last), (Some(0), Some(0)));
    }

    #[test]
    fn tridiagonal_matches_high_precision_values() {
        let s = tridiagonal_spectrum(&params(16, 0.1), 0, 15).unwrap();
        for (e, &want) in s.entries.iter().zip(&N16_W01) {
            if want > 1e-15 {
                let err = (e.lambda - want).abs();
                assert!(err <= 1e-16 + 1e-12 * want, "k={} {} vs {}", e.k, e.lambda, want);
            } else {
                assert!(e.saturated);
            }
        }
    }

    #[test]
    fn complement_route_keeps_relative_accuracy() {
        let s = tridiagonal_spectrum(&params(24, 0.3), 0, 11).unwrap();
        for (e, &want) in s.entries.iter().zip(&N24_W03_COMPLEMENT) {
            if want > 1e-15 {
                let err = (e.complement - want).abs();
                assert!(err <= 1e-16 + 1e-12 * want, "k={} {:e} vs {:e}", e.k, e.complement, want);
            }
        }
    }

    #[test]
    fn dense_matches_high_precision_values() {
        let s = dense_spectrum(&params(16, 0.1)).unwrap();
        for (e, &want) in s.entries.iter().zip(&N16_W01) {
            assert!((e.lambda - want).abs() < 1e-14);
        }
    }

    #[test]
    fn routes_agree() {
        let p = params(256, 0.1);
        let d = dense_spectrum(&p).unwrap();
        let t = tridiagonal_spectrum(&p, 0, 255).unwrap();
        for (a, b) in d.entries.iter().zip(&t.entries) {
            assert!((a.lambda - b.lambda).abs() <= 1e-10);
        }
    }

    #[test]
    fn width_matches_dense_count() {
        let p = params(64, 0.25);
        let d = dense_spectrum(&p).unwrap();
        let r = transition_width(&p, 1e-3).unwrap();
        assert_eq!(r.width, d.count_transition(1e-3));
        assert_eq!(r.width, r.k_last.unwrap() - r.k_first.unwrap() + 1);
    }

    #[test]
    fn multi_threshold_matches_single() {
        let p = params(300, 0.2);
        let many = transition_widths(&p, &[1e-2, 1e-5, 1e-9]).unwrap();
        for r in many {
            assert_eq!(r.width, transition_width(&p, r.eps).unwrap().width);
        }
        assert!(transition_widths(&p, &[0.6]).is_err());
    }

    #[test]
    fn eps_out_of_range() {
        assert!(transition_width(&params(10, 0.1), 0.0).is_err());
        assert!(transition_width(&params(10, 0.1), 0.5).is_err());
    }

    #[test]
    fn sums() {
        let p = params(1000, 0.125);
        assert_eq!(eigensum_head(&p, 0).unwrap(), 0.0);
        assert!((eigensum_tail(&p, 0).unwrap() - 250.0).abs() < 1e-9 * 250.0);
        assert!(eigensum_head(&p, 1001).is_err());
        let small = params(40, 0.1);
        let full = tridiagonal_spectrum(&small, 0, 39).unwrap();
        assert!((full.head_sum(5).unwrap() - eigensum_head(&small, 5).unwrap()).abs() < 1e-14);
        assert!((full.tail_sum(9).unwrap() - eigensum_tail(&small, 9).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn range_validation() {
        assert!(tridiagonal_spectrum(&params(10, 0.1), 3, 2).is_err());
        assert!(tridiagonal_spectrum(&params(10, 0.1), 0, 10).is_err());
    }

    #[test]
    fn single_precision_route_runs() {
        let p = ProlateParams::new(64, 0.125_f32).unwrap();
        let s = tridiagonal_spectrum(&p, 0, 63).unwrap();
        let tr: f32 = s.entries.iter().map(|e| e.lambda).sum();
        assert!((tr - 16.0).abs() < 1e-3);
    }
}
