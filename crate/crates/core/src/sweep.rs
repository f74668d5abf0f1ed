//! Parameter sweeps comparing measured transition widths with the width
//! bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{width_bound_thm1, width_bound_thm2};
use crate::error::{param, Result};
use crate::kernel::ProlateParams;
use crate::scalar::Real;
use crate::spectrum::transition_widths;

/// Thresholds used by the figure sweeps.
pub const FIGURE_EPS: [f64; 3] = [1e-3, 1e-8, 1e-13];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Figure1,
    Figure2,
    Figure3,
    Custom,
}

/// Grid of `(N, W, eps)` tuples to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig<T> {
    pub mode: SweepMode,
    pub n_values: Vec<usize>,
    pub w_values: Vec<T>,
    pub eps: Vec<T>,
}

/// `count` values `2^lo .. 2^hi`, equally spaced in the exponent.
pub fn log2_spaced<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![lo.exp2()],
        _ => (0..count)
            .map(|i| (lo + (hi - lo) * T::of_usize(i) / T::of_usize(count - 1)).exp2())
            .collect(),
    }
}

/// Powers of two `2^lo ..= 2^hi`; empty when `lo > hi`.
pub fn powers_of_two(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|e| 1usize << e).collect()
}

fn figure_eps<T: Real>() -> Vec<T> {
    FIGURE_EPS.iter().map(|&e| T::lit(e)).collect()
}

impl<T: Real> SweepConfig<T> {
    /// The single instance `N = 1000`, `W = 1/8` at `eps = 1e-3`.
    pub fn figure1() -> Self {
        Self { mode: SweepMode::Figure1, n_values: vec![1000], w_values: vec![T::lit(0.125)], eps: vec![T::lit(1e-3)] }
    }

    /// `W = 1/4`, `N = 2^lo ..= 2^hi`.
    pub fn figure2(lo: u32, hi: u32) -> Self {
        Self { mode: SweepMode::Figure2, n_values: powers_of_two(lo, hi), w_values: vec![T::lit(0.25)], eps: figure_eps() }
    }

    /// Fixed `N`, `count` values of `W` log-spaced in `[2^w_lo, 2^w_hi]`.
    pub fn figure3(n: usize, count: usize, w_lo: T, w_hi: T) -> Self {
        Self { mode: SweepMode::Figure3, n_values: vec![n], w_values: log2_spaced(w_lo, w_hi, count), eps: figure_eps() }
    }

    pub fn custom(n_values: Vec<usize>, w_values: Vec<T>, eps: Vec<T>) -> Self {
        Self { mode: SweepMode::Custom, n_values, w_values, eps }
    }

    pub fn validate(&self) -> Result<()> {
        for &n in &self.n_values {
            if n == 0 {
                return param("N must be positive");
            }
        }
        for &w in &self.w_values {
            if !(w > T::zero() && w < T::lit(0.5)) {
                return param(format!("W must lie in (0, 1/2), got {w}"));
            }
        }
        for &e in &self.eps {
            if !(e > T::zero() && e < T::lit(0.5)) {
                return param(format!("eps must lie in (0, 1/2), got {e}"));
            }
        }
        match self.mode {
            SweepMode::Figure2 if self.w_values.iter().any(|&w| w != T::lit(0.25)) => {
                param("figure2 sweeps fix W = 1/4")
            }
            SweepMode::Figure3 if self.n_values.len() > 1 => param("figure3 sweeps fix a single N"),
            _ => Ok(()),
        }
    }

    /// Number of rows the sweep produces.
    pub fn len(&self) -> usize {
        self.n_values.len() * self.w_values.len() * self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One `(N, W, eps)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow<T> {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "W")]
    pub w: T,
    pub eps: T,
    pub width: usize,
    pub bound_thm1: u64,
    pub bound_thm2: u64,
    /// `bound_thm1 - width`.
    pub gap: i64,
    pub advisory: bool,
}

impl<T: Real> SweepRow<T> {
    pub fn within_thm1(&self) -> bool {
        self.width as u64 <= self.bound_thm1
    }

    pub fn within_thm2(&self) -> bool {
        self.width as u64 <= self.bound_thm2
    }
}

fn evaluate_pair<T: Real>(n: usize, w: T, eps: &[T]) -> Result<Vec<SweepRow<T>>> {
    let p = ProlateParams::new(n, w)?;
    let reports = transition_widths(&p, eps)?;
    reports
        .into_iter()
        .map(|r| {
            let thm1 = width_bound_thm1(n, r.eps)?.integer_report;
            let thm2 = width_bound_thm2(n, w, r.eps)?.integer_report;
            Ok(SweepRow {
                n,
                w,
                eps: r.eps,
                width: r.width,
                bound_thm1: thm1,
                bound_thm2: thm2,
                gap: thm1 as i64 - r.width as i64,
                advisory: r.advisory,
            })
        })
        .collect()
}

/// Evaluates every row of the sweep. Pairs `(N, W)` run in parallel on the
/// current rayon pool; rows come back ordered by `N`, then `W`, then `eps`
/// as listed in the config.
pub fn run_sweep<T: Real>(config: &SweepConfig<T>) -> Result<Vec<SweepRow<T>>> {
    config.validate()?;
    let pairs: Vec<(usize, T)> =
        config.n_values.iter().flat_map(|&n| config.w_values.iter().map(move |&w| (n, w))).collect();
    if config.eps.is_empty() {
        return Ok(Vec::new());
    }
    let blocks = pairs
        .par_iter()
        .map(|&(n, w)| evaluate_pair(n, w, &config.eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_grids() {
        let c = SweepConfig::<f64>::figure2(4, 12);
        assert_eq!(c.n_values.first(), Some(&16));
        assert_eq!(c.n_values.last(), Some(&4096));
        assert_eq!(c.len(), 27);
        let c = SweepConfig::<f64>::figure3(4096, 101, -10.0, -2.0);
        assert_eq!(c.w_values.len(), 101);
        assert_eq!(c.w_values[0], 2f64.powi(-10));
        assert_eq!(c.w_values[100], 0.25);
        assert_eq!(c.w_values[50], 2f64.powi(-6));
    }

    #[test]
    fn empty_range_gives_no_rows() {
        let c = SweepConfig::<f64>::figure2(5, 4);
        assert!(c.is_empty());
        assert!(run_sweep(&c).unwrap().is_empty());
    }

    #[test]
    fn figure1_row() {
        let rows = run_sweep(&SweepConfig::<f64>::figure1()).unwrap();
        assert_eq!(rows.len(), 1);
        let r = rows[0];
        assert_eq!((r.width, r.bound_thm1, r.bound_thm2, r.gap), (12, 14, 23, 2));
        assert!(!r.advisory);
    }

    #[test]
    fn rows_ordered() {
        let c = SweepConfig::custom(vec![64, 32], vec![0.1, 0.3], vec![1e-3, 1e-6]);
        let rows = run_sweep(&c).unwrap();
        let keys: Vec<(usize, f64, f64)> = rows.iter().map(|r| (r.n, r.w, r.eps)).collect();
        assert_eq!(
            keys,
            vec![
                (64, 0.1, 1e-3),
                (64, 0.1, 1e-6),
                (64, 0.3, 1e-3),
                (64, 0.3, 1e-6),
                (32, 0.1, 1e-3),
                (32, 0.1, 1e-6),
                (32, 0.3, 1e-3),
                (32, 0.3, 1e-6),
            ]
        );
        assert!(rows.iter().all(|r| r.within_thm1() && r.within_thm2()));
    }

    #[test]
    fn invalid_configs() {
        assert!(SweepConfig::custom(vec![0], vec![0.1], vec![1e-3]).validate().is_err());
        assert!(SweepConfig::custom(vec![8], vec![0.5], vec![1e-3]).validate().is_err());
        assert!(SweepConfig::custom(vec![8], vec![0.1], vec![0.0]).validate().is_err());
        let mut c = SweepConfig::<f64>::figure2(4, 5);
        c.w_values = vec![0.2];
        assert!(c.validate().is_err());
    }
}
