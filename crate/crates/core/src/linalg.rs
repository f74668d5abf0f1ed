//! Dense and tridiagonal symmetric eigensolvers and a Jacobi SVD.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{compensated_dot, Real};

const QL_MAX_ITER: usize = 200;
const JACOBI_MAX_SWEEPS: usize = 80;
const INVERSE_MAX_ITER: usize = 8;
const INVERSE_MAX_RESTARTS: usize = 5;

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    /// `off.len()` must be `diag.len() - 1` (or zero for an empty matrix).
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Parameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r = r + self.off[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Max-abs row sum, a cheap bound on the 2-norm.
    pub fn norm_bound(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly less than `x` (Sturm sequence count).
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value() / T::epsilon();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q == T::zero() {
            q = -tiny;
        }
        if q < T::zero() {
            count += 1;
        }
        for i in 1..self.len() {
            let e = self.off[i - 1];
            q = (self.diag[i] - x) - e * e / q;
            if q == T::zero() {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The eigenvalue with ascending index `i` by bisection to full precision.
    pub fn eigenvalue_ascending(&self, i: usize) -> T {
        let (mut lo, mut hi) = self.gershgorin();
        let pad = T::epsilon() * (lo.abs().max(hi.abs()) + T::one());
        lo = lo - pad;
        hi = hi + pad;
        for _ in 0..256 {
            let mid = lo + (hi - lo) * T::lit(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + (hi - lo) * T::lit(0.5)
    }

    /// The `k`-th largest eigenvalue (`k = 0` is the largest).
    pub fn eigenvalue_descending(&self, k: usize) -> T {
        self.eigenvalue_ascending(self.len() - 1 - k)
    }

    /// `y = T x`.
    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v = v + self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v = v + self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// All eigenvalues in descending order by implicit QL.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(T::zero());
        ql_implicit(&mut d, &mut e)?;
        d.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Ok(d)
    }

    /// Unit eigenvectors for the eigenvalues with descending indices
    /// `kmin..=kmax`, computed by inverse iteration.
    ///
    /// Indices whose eigenvalues are closer than a relative `1e-10` are
    /// handled together with reorthogonalization. Results do not depend on
    /// how work is scheduled across threads.
    pub fn eigenvectors_descending(&self, kmin: usize, kmax: usize) -> Result<Vec<(T, Vec<T>)>> {
        let n = self.len();
        if kmin > kmax || kmax >= n {
            return Err(Error::Parameter(format!("index range {kmin}..={kmax} invalid for order {n}")));
        }
        let values: Vec<T> = (kmin..=kmax).into_par_iter().map(|k| self.eigenvalue_descending(k)).collect();
        let scale = self.norm_bound().max(T::min_positive_value());
        let cluster_tol = T::lit(1e-10) * scale;
        let mut groups: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for j in 1..=values.len() {
            if j == values.len() || (values[j - 1] - values[j]).abs() > cluster_tol {
                groups.push((start, j));
                start = j;
            }
        }
        let solved: Vec<Result<Vec<(T, Vec<T>)>>> = groups
            .par_iter()
            .map(|&(a, b)| {
                let mut found: Vec<Vec<T>> = Vec::with_capacity(b - a);
                let mut out = Vec::with_capacity(b - a);
                for j in a..b {
                    let v = self.inverse_iteration(kmin + j, values[j], &found, scale)?;
                    found.push(v.clone());
                    out.push((values[j], v));
                }
                if b - a > 1 {
                    rayleigh_ritz(self, &mut out);
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::with_capacity(values.len());
        for g in solved {
            all.extend(g?);
        }
        Ok(all)
    }

    fn inverse_iteration(&self, index: usize, lambda: T, against: &[Vec<T>], scale: T) -> Result<Vec<T>> {
        let n = self.len();
        if n == 1 {
            return Ok(vec![T::one()]);
        }
        let tol = T::lit(8.0) * T::of_usize(n) * T::epsilon() * scale;
        for attempt in 0..=INVERSE_MAX_RESTARTS {
            let shift = if attempt == 0 {
                lambda
            } else {
                lambda + T::of_usize(attempt) * T::lit(16.0) * T::epsilon() * scale
            };
            let lu = TridiagonalLu::factor(self, shift, scale);
            let mut rng = ChaCha8Rng::seed_from_u64((index as u64) << 8 | attempt as u64);
            let mut x: Vec<T> = (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect();
            orthogonalize(&mut x, against);
            if !normalize(&mut x) {
                continue;
            }
            let mut converged = false;
            for it in 0..INVERSE_MAX_ITER {
                lu.solve(&mut x);
                orthogonalize(&mut x, against);
                if !normalize(&mut x) {
                    break;
                }
                if it == 0 {
                    continue;
                }
                let tx = self.matvec(&x);
                let theta = compensated_dot(&x, &tx);
                let r2: T = tx.iter().zip(&x).map(|(&a, &b)| (a - theta * b) * (a - theta * b)).sum();
                if r2.sqrt() <= tol {
                    if converged {
                        break;
                    }
                    // One more step to polish.
                    converged = true;
                }
            }
            if converged {
                return Ok(x);
            }
        }
        Err(Error::Numerical {
            index,
            detail: format!("inverse iteration did not converge after {INVERSE_MAX_RESTARTS} restarts"),
        })
    }
}

fn orthogonalize<T: Real>(x: &mut [T], against: &[Vec<T>]) {
    for _ in 0..2 {
        for v in against {
            let c = compensated_dot(x, v);
            for (xi, &vi) in x.iter_mut().zip(v) {
                *xi = *xi - c * vi;
            }
        }
    }
}

fn normalize<T: Real>(x: &mut [T]) -> bool {
    let amax = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if !(amax > T::zero()) || !amax.is_finite() {
        return false;
    }
    for v in x.iter_mut() {
        *v = *v / amax;
    }
    let nrm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
    for v in x.iter_mut() {
        *v = *v / nrm;
    }
    true
}

/// Rotates an orthonormal cluster basis onto the eigenbasis of the projected
/// matrix.
fn rayleigh_ritz<T: Real>(t: &SymTridiagonal<T>, pairs: &mut [(T, Vec<T>)]) {
    let m = pairs.len();
    let tv: Vec<Vec<T>> = pairs.iter().map(|(_, v)| t.matvec(v)).collect();
    let mut h = vec![T::zero(); m * m];
    for i in 0..m {
        for j in 0..m {
            h[i * m + j] = compensated_dot(&pairs[i].1, &tv[j]);
        }
    }
    for i in 0..m {
        for j in 0..i {
            let s = (h[i * m + j] + h[j * m + i]) * T::lit(0.5);
            h[i * m + j] = s;
            h[j * m + i] = s;
        }
    }
    let (vals, vecs) = jacobi_eigen(&mut h, m);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).expect("finite"));
    let n = t.len();
    let old: Vec<Vec<T>> = pairs.iter().map(|(_, v)| v.clone()).collect();
    for (slot, &c) in order.iter().enumerate() {
        let mut v = vec![T::zero(); n];
        for (j, o) in old.iter().enumerate() {
            let w = vecs[j * m + c];
            for (vi, &oi) in v.iter_mut().zip(o) {
                *vi = *vi + w * oi;
            }
        }
        normalize(&mut v);
        pairs[slot] = (vals[c], v);
    }
}

/// Cyclic Jacobi eigen-decomposition of a small dense symmetric matrix.
/// Returns eigenvalues and column eigenvectors (row-major `m x m`).
fn jacobi_eigen<T: Real>(a: &mut [T], m: usize) -> (Vec<T>, Vec<T>) {
    let mut v = vec![T::zero(); m * m];
    for i in 0..m {
        v[i * m + i] = T::one();
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..m {
            for q in p + 1..m {
                off = off + a[p * m + q] * a[p * m + q];
            }
        }
        if off.sqrt() <= T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                for k in 0..m {
                    let vkp = v[k * m + p];
                    let vkq = v[k * m + q];
                    v[k * m + p] = c * vkp - s * vkq;
                    v[k * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..m).map(|i| a[i * m + i]).collect(), v)
}

/// LU factorization of `T - shift I` with partial pivoting.
struct TridiagonalLu<T> {
    dl: Vec<T>,
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> TridiagonalLu<T> {
    fn factor(t: &SymTridiagonal<T>, shift: T, scale: T) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut d: Vec<T> = t.diag.iter().map(|&v| v - shift).collect();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != T::zero() {
                    let f = dl[i] / d[i];
                    dl[i] = f;
                    d[i + 1] = d[i + 1] - f * du[i];
                } else {
                    dl[i] = T::zero();
                }
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        let floor = T::epsilon() * scale;
        for v in d.iter_mut() {
            if v.abs() < floor {
                *v = if *v < T::zero() { -floor } else { floor };
            }
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [T]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - self.dl[i] * b[i];
            } else {
                b[i + 1] = b[i + 1] - self.dl[i] * b[i];
            }
        }
        b[n - 1] = b[n - 1] / self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Implicit QL on a symmetric tridiagonal matrix. `e[i]` couples `i` and
/// `i + 1`; `e[n - 1]` is scratch. Eigenvalues are left in `d`, unsorted.
fn ql_implicit<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    let two = T::lit(2.0);
    let anorm = d.iter().zip(e.iter()).fold(T::zero(), |m, (&a, &b)| m.max(a.abs() + b.abs()));
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                // Couplings below eps * ||T|| are negligible at the
                // absolute accuracy of the dense route.
                let dd = d[m].abs() + d[m + 1].abs() + anorm;
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::Numerical { index: l, detail: "QL iteration did not converge".into() });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form.
pub fn tridiagonalize<T: Real>(a: &Array2<T>) -> Result<SymTridiagonal<T>> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::Parameter("expected a non-empty square matrix".into()));
    }
    let mut m: Vec<T> = a.iter().copied().collect();
    let mut off = vec![T::zero(); n - 1];
    for k in 0..n.saturating_sub(2) {
        let sub = n - k - 1;
        let mut v: Vec<T> = (k + 1..n).map(|i| m[i * n + k]).collect();
        let scale = v.iter().fold(T::zero(), |s, x| s.max(x.abs()));
        if scale == T::zero() {
            off[k] = T::zero();
            continue;
        }
        let norm = scale * v.iter().map(|&x| (x / scale) * (x / scale)).sum::<T>().sqrt();
        let alpha = if v[0] > T::zero() { -norm } else { norm };
        v[0] = v[0] - alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        off[k] = alpha;
        if vnorm2 == T::zero() {
            continue;
        }
        let beta = T::lit(2.0) / vnorm2;
        let base = k + 1;
        let mut p: Vec<T> = (0..sub)
            .into_par_iter()
            .map(|i| {
                let row = &m[(base + i) * n + base..(base + i) * n + n];
                beta * row.iter().zip(&v).map(|(&x, &y)| x * y).sum::<T>()
            })
            .collect();
        let kcoef = beta * T::lit(0.5) * p.iter().zip(&v).map(|(&x, &y)| x * y).sum::<T>();
        for (pi, &vi) in p.iter_mut().zip(&v) {
            *pi = *pi - kcoef * vi;
        }
        m.par_chunks_mut(n).skip(base).enumerate().for_each(|(i, row)| {
            let (vi, wi) = (v[i], p[i]);
            for j in 0..sub {
                row[base + j] = row[base + j] - vi * p[j] - wi * v[j];
            }
        });
    }
    if n >= 2 {
        off[n - 2] = m[(n - 1) * n + n - 2];
    }
    let diag = (0..n).map(|i| m[i * n + i]).collect();
    SymTridiagonal::new(diag, off)
}

/// All eigenvalues of a dense symmetric matrix, descending.
pub fn symmetric_eigenvalues<T: Real>(a: &Array2<T>) -> Result<Vec<T>> {
    tridiagonalize(a)?.eigenvalues()
}

/// Singular values of a dense matrix, descending.
///
/// Householder QR reduces the matrix to a square triangular factor, which is
/// then diagonalized by one-sided Jacobi rotations.
pub fn singular_values<T: Real>(a: &Array2<T>) -> Vec<T> {
    let (rows, cols) = a.dim();
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    // Work on the tall orientation, stored column-major.
    let (m, n, mut cm): (usize, usize, Vec<T>) = if rows >= cols {
        (rows, cols, a.t().iter().copied().collect())
    } else {
        (cols, rows, a.iter().copied().collect())
    };
    householder_r(&mut cm, m, n);
    let mut r: Vec<Vec<T>> = (0..n).map(|j| (0..n).map(|i| if i <= j { cm[j * m + i] } else { T::zero() }).collect()).collect();
    one_sided_jacobi(&mut r);
    let mut s: Vec<T> = r.iter().map(|c| c.iter().map(|&x| x * x).sum::<T>().sqrt()).collect();
    s.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    s
}

/// In-place Householder QR of a column-major `m x n` matrix (`m >= n`),
/// leaving `R` in the upper triangle.
fn householder_r<T: Real>(a: &mut [T], m: usize, n: usize) {
    for k in 0..n {
        let col = &a[k * m + k..(k + 1) * m];
        let scale = col.iter().fold(T::zero(), |s, x| s.max(x.abs()));
        if scale == T::zero() {
            continue;
        }
        let norm = scale * col.iter().map(|&x| (x / scale) * (x / scale)).sum::<T>().sqrt();
        let alpha = if col[0] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = col.to_vec();
        v[0] = v[0] - alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        let beta = T::lit(2.0) / vnorm2;
        a[k * m + k] = alpha;
        for x in &mut a[k * m + k + 1..(k + 1) * m] {
            *x = T::zero();
        }
        let (_, rest) = a.split_at_mut((k + 1) * m);
        rest.par_chunks_mut(m).for_each(|c| {
            let seg = &mut c[k..];
            let dot: T = seg.iter().zip(&v).map(|(&x, &y)| x * y).sum();
            let f = beta * dot;
            for (x, &y) in seg.iter_mut().zip(&v) {
                *x = *x - f * y;
            }
        });
    }
}

/// Orthogonalizes the columns in place by cyclic Jacobi rotations.
fn one_sided_jacobi<T: Real>(cols: &mut [Vec<T>]) {
    let n = cols.len();
    let tol = T::epsilon() * T::of_usize(n.max(1)).sqrt();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                let alpha: T = cp.iter().map(|&x| x * x).sum();
                let beta: T = cq.iter().map(|&x| x * x).sum();
                let gamma: T = cp.iter().zip(cq.iter()).map(|(&x, &y)| x * y).sum();
                if gamma == T::zero() || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = c * a - s * b;
                    *y = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn laplacian(n: usize) -> SymTridiagonal<f64> {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    fn laplacian_eigs(n: usize) -> Vec<f64> {
        let mut v: Vec<f64> = (1..=n)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    #[test]
    fn ql_matches_closed_form() {
        let got = laplacian(50).eigenvalues().unwrap();
        for (a, b) in got.iter().zip(laplacian_eigs(50)) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn bisection_matches_closed_form() {
        let t = laplacian(40);
        let exact = laplacian_eigs(40);
        for k in [0, 7, 39] {
            assert!((t.eigenvalue_descending(k) - exact[k]).abs() < 1e-14);
        }
        assert_eq!(t.count_below(-1.0), 0);
        assert_eq!(t.count_below(5.0), 40);
    }

    #[test]
    fn inverse_iteration_vectors_are_eigenvectors() {
        let t = laplacian(30);
        for (lam, v) in t.eigenvectors_descending(0, 29).unwrap() {
            let tv = t.matvec(&v);
            let res: f64 = tv.iter().zip(&v).map(|(a, b)| (a - lam * b).abs()).fold(0.0, f64::max);
            assert!(res < 1e-12);
        }
    }

    #[test]
    fn clustered_spectrum_gets_orthogonal_vectors() {
        // Two decoupled identical blocks produce exactly repeated eigenvalues.
        let t = SymTridiagonal::new(vec![2.0, 2.0, 2.0, 2.0], vec![1.0, 0.0, 1.0]).unwrap();
        let pairs = t.eigenvectors_descending(0, 3).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let d: f64 = compensated_dot(&pairs[i].1, &pairs[j].1);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12, "{i} {j} {d}");
            }
        }
    }

    #[test]
    fn dense_eigenvalues_small_matrix() {
        let a = array![[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]];
        let got = symmetric_eigenvalues(&a).unwrap();
        let s = 2f64.sqrt();
        let want = [2.0 + s, 2.0, 2.0 - s];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_values_of_known_matrices() {
        let a: Array2<f64> = array![[3.0, 0.0], [0.0, -4.0], [0.0, 0.0]];
        let s = singular_values(&a);
        assert!((s[0] - 4.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
        let wide = a.t().to_owned();
        assert_eq!(singular_values(&wide).len(), 2);
        let rank1 = Array2::from_shape_fn((5, 4), |(i, j)| (i + 1) as f64 * (j + 1) as f64);
        let s = singular_values(&rank1);
        assert!((s[0] - (55.0f64 * 30.0).sqrt()).abs() < 1e-12);
        assert!(s[1].abs() < 1e-12);
    }
}
