//! Sinc kernel, prolate matrix construction, and fast symmetric Toeplitz
//! products.

use std::sync::Arc;

use ndarray::Array2;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// Default cap on `N` for anything materialized as a dense `N x N` matrix.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Environment variable overriding [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "PROLATE_DENSE_CAP";

/// Current dense materialization cap, honoring `PROLATE_DENSE_CAP`.
pub fn dense_cap() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_DENSE_CAP)
}

/// A discrete problem instance: `N` samples, bandwidth `W` in `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProlateParams<T> {
    n: usize,
    w: T,
}

impl<T: Real> ProlateParams<T> {
    pub fn new(n: usize, w: T) -> Result<Self> {
        if n == 0 {
            return param("N must be at least 1");
        }
        check_bandwidth(w)?;
        Ok(Self { n, w })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self) -> T {
        self.w
    }

    /// `N * W`.
    pub fn nw(&self) -> T {
        T::of_usize(self.n) * self.w
    }

    /// The time-bandwidth product `2NW`, where the eigenvalues plunge.
    pub fn time_bandwidth(&self) -> T {
        T::lit(2.0) * self.nw()
    }

    /// `floor(2NW)` as an integer.
    pub fn floor_2nw(&self) -> usize {
        self.time_bandwidth().floor().to_usize().unwrap_or(0)
    }

    /// `ceil(2NW)` as an integer.
    pub fn ceil_2nw(&self) -> usize {
        self.time_bandwidth().ceil().to_usize().unwrap_or(0)
    }

    /// The instance with bandwidth `1/2 - W`.
    pub fn complement(&self) -> Self {
        Self { n: self.n, w: T::lit(0.5) - self.w }
    }

    pub fn kernel(&self) -> SincKernel<T> {
        SincKernel { w: self.w }
    }
}

pub(crate) fn check_bandwidth<T: Real>(w: T) -> Result<()> {
    if !(w > T::zero() && w < T::lit(0.5)) {
        return param(format!("W must lie in (0, 1/2), got {w}"));
    }
    Ok(())
}

/// `g(t) = sin(2 pi W t) / (pi t)` with careful evaluation at integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SincKernel<T> {
    w: T,
}

impl<T: Real> SincKernel<T> {
    pub fn new(w: T) -> Result<Self> {
        check_bandwidth(w)?;
        Ok(Self { w })
    }

    pub fn w(&self) -> T {
        self.w
    }

    /// Value at an integer offset. Exactly `2W` at zero and bit-identical
    /// for `d` and `-d`.
    pub fn value(&self, d: i64) -> T {
        if d == 0 {
            return T::lit(2.0) * self.w;
        }
        let m = d.unsigned_abs();
        sin_two_pi_frac(self.w, m) / (T::PI() * T::from_u64(m).expect("offset fits"))
    }

    /// Value at a real argument, used for interpolation off the integer grid.
    pub fn at(&self, t: T) -> T {
        let x = T::lit(2.0) * T::PI() * self.w * t;
        if x.abs() < T::lit(1e-4) {
            // sin(x)/x series; the truncation error is below x^6/5040.
            let x2 = x * x;
            T::lit(2.0) * self.w * (T::one() - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0))
        } else {
            x.sin() / (T::PI() * t)
        }
    }

    /// First `n` entries `g(0), g(1), ..., g(n-1)`: the first column of the
    /// `n x n` prolate matrix.
    pub fn first_column(&self, n: usize) -> Vec<T> {
        (0..n as i64).map(|d| self.value(d)).collect()
    }
}

/// `frac(W m)` reduced to `[-1/2, 1/2]`, with the product `W m` formed
/// exactly as an unevaluated sum of two floats.
fn turns<T: Real>(w: T, m: u64) -> T {
    let mf = T::from_u64(m).expect("offset fits");
    let hi = w * mf;
    let lo = w.mul_add(mf, -hi);
    let mut r = (hi - hi.round()) + lo;
    let half = T::lit(0.5);
    if r > half {
        r = r - T::one();
    } else if r < -half {
        r = r + T::one();
    }
    r
}

/// `sin(2 pi W m)` for `m >= 0`.
fn sin_two_pi_frac<T: Real>(w: T, m: u64) -> T {
    let mut r = turns(w, m);
    // Fold into [-1/4, 1/4] so that exact zeros of sine stay exact.
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    if r > quarter {
        r = half - r;
    } else if r < -quarter {
        r = -half - r;
    }
    (T::lit(2.0) * T::PI() * r).sin()
}

/// `(sin 2 pi W m, cos 2 pi W m)` with the same argument reduction as
/// [`SincKernel::value`].
pub fn sin_cos_two_pi<T: Real>(w: T, m: i64) -> (T, T) {
    let s = sin_two_pi_frac(w, m.unsigned_abs());
    let c = (T::lit(2.0) * T::PI() * turns(w, m.unsigned_abs())).cos();
    if m < 0 {
        (-s, c)
    } else {
        (s, c)
    }
}

/// Single sinc entry `sin(2 pi W d) / (pi d)`, `2W` at `d = 0`.
pub fn sinc_entry<T: Real>(w: T, d: i64) -> Result<T> {
    Ok(SincKernel::new(w)?.value(d))
}

/// Dense `N x N` prolate matrix, using the cap from [`dense_cap`].
pub fn build_prolate_matrix<T: Real>(p: &ProlateParams<T>) -> Result<Array2<T>> {
    build_prolate_matrix_with_cap(p, dense_cap())
}

pub fn build_prolate_matrix_with_cap<T: Real>(p: &ProlateParams<T>, cap: usize) -> Result<Array2<T>> {
    let n = p.n();
    if n > cap {
        return Err(Error::Capacity { requested: n, cap });
    }
    let col = p.kernel().first_column(n);
    Ok(Array2::from_shape_fn((n, n), |(i, j)| col[i.abs_diff(j)]))
}

/// Symmetric Toeplitz operator applied through circulant embedding.
///
/// The embedding length is the next power of two at least `2N - 1`. The
/// transformed first column is cached so repeated products cost two FFTs.
pub struct SymmetricToeplitz<T: Real> {
    n: usize,
    spectrum: Vec<Complex<T>>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> SymmetricToeplitz<T> {
    pub fn new(first_column: &[T]) -> Result<Self> {
        let n = first_column.len();
        if n == 0 {
            return param("Toeplitz first column must be non-empty");
        }
        let m = (2 * n - 1).next_power_of_two();
        let mut planner = FftPlanner::<T>::new();
        let forward = planner.plan_fft_forward(m);
        let inverse = planner.plan_fft_inverse(m);
        let mut spectrum = vec![Complex::new(T::zero(), T::zero()); m];
        for (d, &c) in first_column.iter().enumerate() {
            spectrum[d].re = c;
            if d > 0 {
                spectrum[m - d].re = c;
            }
        }
        forward.process(&mut spectrum);
        Ok(Self { n, spectrum, forward, inverse })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return param(format!("vector length {} does not match Toeplitz order {}", x.len(), self.n));
        }
        let m = self.spectrum.len();
        let mut buf = vec![Complex::new(T::zero(), T::zero()); m];
        for (b, &v) in buf.iter_mut().zip(x) {
            b.re = v;
        }
        self.forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b = *b * *s;
        }
        self.inverse.process(&mut buf);
        let scale = T::one() / T::of_usize(m);
        Ok(buf[..self.n].iter().map(|c| c.re * scale).collect())
    }
}

/// `B x` for the symmetric Toeplitz `B` with the given first column.
pub fn toeplitz_apply<T: Real>(first_column: &[T], x: &[T]) -> Result<Vec<T>> {
    if first_column.len() != x.len() {
        return param(format!(
            "first column length {} does not match vector length {}",
            first_column.len(),
            x.len()
        ));
    }
    SymmetricToeplitz::new(first_column)?.apply(x)
}

/// `|sum_{l=-L}^{L} g(l-m) g(l-n) - g(m-n)|`, the truncation error of the
/// sinc reproducing identity.
pub fn sinc_identity_residual<T: Real>(w: T, m: i64, n: i64, l: i64) -> Result<T> {
    if l < 1 {
        return param("L must be at least 1");
    }
    let g = SincKernel::new(w)?;
    let mut acc = CompensatedSum::new();
    for ell in -l..=l {
        acc.add(g.value(ell - m) * g.value(ell - n));
    }
    acc.add(-g.value(m - n));
    Ok(acc.value().abs())
}
