//! Sweep specification from flags or a TOML file.

use std::path::{Path, PathBuf};

use prolate::sweep::{log2_spaced, powers_of_two, SweepMode, FIGURE_EPS};
use prolate::SweepConfig;
use serde::Deserialize;

use crate::output::Format;
use crate::CliError;

/// Keys accepted in a sweep file. Every key is optional; flags given on the
/// command line take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub mode: Option<SweepMode>,
    /// Explicit list of `N`.
    pub n: Option<Vec<usize>>,
    /// `N = 2^n_min_exp ..= 2^n_max_exp`.
    pub n_min_exp: Option<u32>,
    pub n_max_exp: Option<u32>,
    /// Explicit list of `W`.
    pub w: Option<Vec<f64>>,
    /// `w_count` values log-spaced in `[2^w_min_exp, 2^w_max_exp]`.
    pub w_count: Option<usize>,
    pub w_min_exp: Option<f64>,
    pub w_max_exp: Option<f64>,
    pub eps: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl SweepFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Params(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: SweepFile) -> SweepFile {
        SweepFile {
            mode: over.mode.or(self.mode),
            n: over.n.or(self.n),
            n_min_exp: over.n_min_exp.or(self.n_min_exp),
            n_max_exp: over.n_max_exp.or(self.n_max_exp),
            w: over.w.or(self.w),
            w_count: over.w_count.or(self.w_count),
            w_min_exp: over.w_min_exp.or(self.w_min_exp),
            w_max_exp: over.w_max_exp.or(self.w_max_exp),
            eps: over.eps.or(self.eps),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
        }
    }

    /// Resolves the grid with the desk-scale defaults of each mode.
    pub fn resolve(&self) -> Result<SweepConfig, CliError> {
        let mode = self.mode.unwrap_or(SweepMode::Figure2);
        let eps = self.eps.clone().unwrap_or_else(|| FIGURE_EPS.to_vec());
        let n_range = || match (&self.n, self.n_min_exp, self.n_max_exp) {
            (Some(list), _, _) => list.clone(),
            (None, lo, hi) => powers_of_two(lo.unwrap_or(4), hi.unwrap_or(12)),
        };
        let w_range = |lo: f64, hi: f64, count: usize| match &self.w {
            Some(list) => list.clone(),
            None => log2_spaced(
                self.w_min_exp.unwrap_or(lo),
                self.w_max_exp.unwrap_or(hi),
                self.w_count.unwrap_or(count),
            ),
        };
        let config = match mode {
            SweepMode::Figure1 => {
                let mut c = SweepConfig::figure1();
                if let Some(e) = &self.eps {
                    c.eps = e.clone();
                }
                c
            }
            SweepMode::Figure2 => {
                if self.w.as_ref().is_some_and(|w| w.iter().any(|&x| x != 0.25)) {
                    return Err(CliError::Params("figure2 sweeps fix W = 1/4".into()));
                }
                let mut c = SweepConfig::figure2(0, 0);
                c.n_values = n_range();
                c.eps = eps;
                c
            }
            SweepMode::Figure3 => {
                let n = match &self.n {
                    None => 4096,
                    Some(list) if list.len() == 1 => list[0],
                    Some(_) => return Err(CliError::Params("figure3 sweeps fix a single N".into())),
                };
                let mut c = SweepConfig::figure3(n, 0, -10.0, -2.0);
                c.w_values = w_range(-10.0, -2.0, 101);
                c.eps = eps;
                c
            }
            SweepMode::Custom => SweepConfig::custom(n_range(), w_range(-10.0, -2.0, 101), eps),
        };
        config.validate().map_err(CliError::from)?;
        Ok(config)
    }
}
