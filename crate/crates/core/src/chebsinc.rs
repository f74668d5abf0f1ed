//! Sinc derivative bounds, Chebyshev interpolation of shifted sincs and the
//! rank-`k` approximation of the near-window block `X1`.

use ndarray::Array2;
use serde::Serialize;

use crate::displacement::{block_bound, l1_of};
use crate::error::{param, Error, Result};
use crate::kernel::{dense_cap, ProlateParams, SincKernel};
use crate::scalar::Real;

/// Largest `k` for which the monomial factorization is materialized.
pub const MONOMIAL_MAX_K: usize = 8;

/// `(2 pi W)^k min{2W/(k+1), 2/(pi |t|)}`, a bound on `|g^(k)(t)|` for
/// `g(t) = sin(2 pi W t) / (pi t)`.
pub fn sinc_derivative_bound<T: Real>(w: T, k: usize, t: T) -> T {
    let two = T::lit(2.0);
    let first = two * w / T::of_usize(k + 1);
    let second = if t == T::zero() { T::infinity() } else { two / (T::PI() * t.abs()) };
    (two * T::PI() * w).powi(k as i32) * first.min(second)
}

/// `prod_{j=1..k} j`, as a float.
pub fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * T::of_usize(j))
}

/// Chebyshev nodes of the first kind on `[a, b]`, in the order `m = 1..k`.
pub fn chebyshev_nodes<T: Real>(a: T, b: T, k: usize) -> Vec<T> {
    let mid = (b + a) / T::lit(2.0);
    let half = (b - a) / T::lit(2.0);
    (1..=k)
        .map(|m| {
            let theta = T::of_usize(2 * m - 1) * T::PI() / T::of_usize(2 * k);
            mid + half * theta.cos()
        })
        .collect()
}

/// Degree `k-1` interpolant of `g_n(t) = g(t - n)` at the Chebyshev nodes
/// of `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebInterpolant<T> {
    pub a: T,
    pub b: T,
    pub w: T,
    pub shift: i64,
    pub nodes: Vec<T>,
    pub values: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> ChebInterpolant<T> {
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// The interpolated function `g_n`.
    pub fn target(&self, t: T) -> T {
        SincKernel::new(self.w).expect("validated bandwidth").at(t - T::of_i64(self.shift))
    }

    /// Barycentric evaluation of the interpolant.
    pub fn eval(&self, t: T) -> T {
        let mut num = T::zero();
        let mut den = T::zero();
        for ((&x, &f), &wt) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let d = t - x;
            if d == T::zero() {
                return f;
            }
            let c = wt / d;
            num = num + c * f;
            den = den + c;
        }
        num / den
    }

    /// Values of the Lagrange basis polynomials at `t`.
    pub fn lagrange_basis(&self, t: T) -> Vec<T> {
        let k = self.nodes.len();
        (0..k)
            .map(|m| {
                (0..k)
                    .filter(|&j| j != m)
                    .fold(T::one(), |acc, j| acc * (t - self.nodes[j]) / (self.nodes[m] - self.nodes[j]))
            })
            .collect()
    }

    /// Coefficients `c_j` with `P(t) = sum_j c_j s^j`, `s = (2t - a - b)/(b - a)`.
    pub fn monomial_coefficients(&self) -> Vec<T> {
        let k = self.nodes.len();
        let mut v = Array2::zeros((k, k));
        for (i, &x) in self.nodes.iter().enumerate() {
            let s = self.scaled(x);
            let mut p = T::one();
            for j in 0..k {
                v[[i, j]] = p;
                p = p * s;
            }
        }
        solve_dense(v, self.values.clone())
    }

    /// Affine map of `[a, b]` onto `[-1, 1]`.
    pub fn scaled(&self, t: T) -> T {
        (T::lit(2.0) * t - self.a - self.b) / (self.b - self.a)
    }
}

fn solve_dense<T: Real>(mut a: Array2<T>, mut rhs: Vec<T>) -> Vec<T> {
    let k = rhs.len();
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&i, &j| a[[i, col]].abs().partial_cmp(&a[[j, col]].abs()).expect("finite"))
            .expect("non-empty");
        if piv != col {
            for j in 0..k {
                a.swap([piv, j], [col, j]);
            }
            rhs.swap(piv, col);
        }
        for i in col + 1..k {
            let f = a[[i, col]] / a[[col, col]];
            for j in col..k {
                a[[i, j]] = a[[i, j]] - f * a[[col, j]];
            }
            rhs[i] = rhs[i] - f * rhs[col];
        }
    }
    for i in (0..k).rev() {
        let s = (i + 1..k).fold(rhs[i], |acc, j| acc - a[[i, j]] * rhs[j]);
        rhs[i] = s / a[[i, i]];
    }
    rhs
}

/// Interpolates `g_n` at `k` Chebyshev nodes of `[a, b]`.
pub fn cheb_interpolate<T: Real>(w: T, n: i64, a: T, b: T, k: usize) -> Result<ChebInterpolant<T>> {
    let kernel = SincKernel::new(w)?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return param("interpolation interval needs a < b");
    }
    if k == 0 {
        return param("k must be at least 1");
    }
    let nodes = chebyshev_nodes(a, b, k);
    let values = nodes.iter().map(|&t| kernel.at(t - T::of_i64(n))).collect();
    // Closed-form barycentric weights for first-kind Chebyshev nodes.
    let weights = (1..=k)
        .map(|m| {
            let theta = T::of_usize(2 * m - 1) * T::PI() / T::of_usize(2 * k);
            let s = theta.sin();
            if m % 2 == 0 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(ChebInterpolant { a, b, w, shift: n, nodes, values, weights })
}

/// `(b-a)^k / (2^(2k-1) k!) max_{t in [a,b]} |g_n^(k)(t)|`, with the
/// derivative maximum replaced by [`sinc_derivative_bound`] at the point of
/// `[a, b]` nearest to `n`.
pub fn interpolation_error_bound<T: Real>(w: T, n: i64, a: T, b: T, k: usize) -> T {
    let nf = T::of_i64(n);
    let dist = if nf < a {
        a - nf
    } else if nf > b {
        nf - b
    } else {
        T::zero()
    };
    let lead = (b - a).powi(k as i32) / (T::lit(2.0).powi(2 * k as i32 - 1) * factorial::<T>(k));
    lead * sinc_derivative_bound(w, k, dist)
}

/// `4 (pi W (L1-1)/2)^k / k! min{W/(k+1), 1/(pi(n+1))}`.
pub fn entry_error_bound<T: Real>(w: T, l1: usize, k: usize, n: usize) -> T {
    let base = T::PI() * w * T::of_usize(l1.saturating_sub(1)) / T::lit(2.0);
    let lead = T::lit(4.0) * base.powi(k as i32) / factorial::<T>(k);
    lead * (w / T::of_usize(k + 1)).min(T::one() / (T::PI() * T::of_usize(n + 1)))
}

/// Rank-`k` approximation of `X1` (rows `-L1..-1`, columns `0..N-1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowRankApprox<T> {
    pub n: usize,
    pub w: T,
    pub k: usize,
    pub l1: usize,
    /// Barycentric interpolant values, `L1 x N`.
    #[serde(skip)]
    pub approx: Array2<T>,
    /// `W[l, j] = s(l)^j` with `s` the affine map of `[-L1, -1]` onto
    /// `[-1, 1]`; present for `2 <= L1` and `k <= MONOMIAL_MAX_K`.
    #[serde(skip)]
    pub monomial: Option<Array2<T>>,
    /// Matching coefficient factor `P`, `k x N`.
    #[serde(skip)]
    pub coefficients: Option<Array2<T>>,
    /// `max |W P - approx|`.
    pub monomial_agreement: Option<T>,
    pub frobenius_error: T,
    /// `sqrt(5600/pi) (pi/48)^k`.
    pub bound: T,
    /// Largest ratio of an entry error to its per-entry bound.
    pub max_entry_ratio: T,
}

impl<T: Real> LowRankApprox<T> {
    pub fn within_bound(&self) -> bool {
        self.frobenius_error <= self.bound
    }

    pub fn entries_within_bound(&self) -> bool {
        self.max_entry_ratio <= T::one()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LowRankOutcome<T> {
    /// `W >= 1/4`.
    NotApplicable,
    Computed(Box<LowRankApprox<T>>),
}

/// Builds the per-column Chebyshev approximation of `X1` on `[-L1, -1]`.
pub fn lowrank_block_approx<T: Real>(p: &ProlateParams<T>, k: usize) -> Result<LowRankOutcome<T>> {
    if p.w() >= T::lit(0.25) {
        return Ok(LowRankOutcome::NotApplicable);
    }
    if k == 0 {
        return param("k must be at least 1");
    }
    let n = p.n();
    let w = p.w();
    let l1 = l1_of(w);
    let cap = dense_cap();
    if l1 > cap || n > cap {
        return Err(Error::Capacity { requested: l1.max(n), cap });
    }
    let kernel = p.kernel();
    let rows: Vec<i64> = (-(l1 as i64)..0).collect();
    let exact = Array2::from_shape_fn((l1, n), |(i, j)| kernel.value(rows[i] - j as i64));

    // A single row is interpolated exactly by the constant term.
    if l1 == 1 {
        let factor = Array2::from_elem((1, 1), T::one());
        let coeffs = exact.clone();
        return Ok(LowRankOutcome::Computed(Box::new(LowRankApprox {
            n,
            w,
            k,
            l1,
            approx: exact,
            monomial: Some(factor),
            coefficients: Some(coeffs),
            monomial_agreement: Some(T::zero()),
            frobenius_error: T::zero(),
            bound: block_bound(k),
            max_entry_ratio: T::zero(),
        })));
    }

    let a = -T::of_usize(l1);
    let b = -T::one();
    let interps = (0..n)
        .map(|j| cheb_interpolate(w, j as i64, a, b, k))
        .collect::<Result<Vec<_>>>()?;
    let approx = Array2::from_shape_fn((l1, n), |(i, j)| interps[j].eval(T::of_i64(rows[i])));

    let mut frob = T::zero();
    let mut max_ratio = T::zero();
    for j in 0..n {
        let eb = entry_error_bound(w, l1, k, j);
        for i in 0..l1 {
            let e = (exact[[i, j]] - approx[[i, j]]).abs();
            frob = frob + e * e;
            let ratio = if eb > T::zero() {
                e / eb
            } else if e > T::zero() {
                T::infinity()
            } else {
                T::zero()
            };
            max_ratio = max_ratio.max(ratio);
        }
    }

    let (monomial, coefficients, monomial_agreement) = if k <= MONOMIAL_MAX_K {
        let factor = Array2::from_shape_fn((l1, k), |(i, m)| interps[0].scaled(T::of_i64(rows[i])).powi(m as i32));
        let mut coeffs = Array2::zeros((k, n));
        for (j, it) in interps.iter().enumerate() {
            for (m, c) in it.monomial_coefficients().into_iter().enumerate() {
                coeffs[[m, j]] = c;
            }
        }
        let product = factor.dot(&coeffs);
        let agree = product.iter().zip(approx.iter()).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max);
        (Some(factor), Some(coeffs), Some(agree))
    } else {
        (None, None, None)
    };

    Ok(LowRankOutcome::Computed(Box::new(LowRankApprox {
        n,
        w,
        k,
        l1,
        approx,
        monomial,
        coefficients,
        monomial_agreement,
        frobenius_error: frob.sqrt(),
        bound: block_bound(k),
        max_entry_ratio: max_ratio,
    })))
}
