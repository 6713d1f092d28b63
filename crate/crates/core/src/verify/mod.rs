//! Empirical verification on sampled points of the unit disc.
//!
//! Every check reduces per-point margins to a [`VerificationReport`]. Margins
//! are computed in parallel but reduced in grid order (radius-major, then
//! angle), so reports are identical run to run.

mod checks;
mod generate;
mod grid;
mod probe;
mod report;
mod scan;

pub use checks::{
    growth_bound_check, growth_bound_check_with, injectivity_sample_check,
    injectivity_sample_check_with, margin_table, re_condition_margin, re_condition_margin_with,
    sense_preserving_margin, sense_preserving_margin_with, GrowthReport,
};
pub use generate::{random_class_params, RandomHarmonic, TFormGenerator};
pub use grid::{DiskGrid, GridPoint, DEFAULT_ANGLES, DEFAULT_RADII};
pub use probe::{axis_expression, default_r_sequence, necessity_probe, NecessityReport};
pub use report::{MarginTable, VerificationReport};
pub use scan::{
    counterexample_scan, counterexample_scan_with, proof_step, ScanConfig, ScanFlag, ScanGenerator,
    ScanReport, StepCheck,
};

use crate::salagean::TransformVariant;

/// Default absolute tolerance on margins.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Fixed slack added when the decay of the omitted tail is unknown.
pub const UNKNOWN_TAIL_SLACK: f64 = 1e-9;

/// What is known about the coefficients beyond the truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TailModel {
    /// The stored polynomial is the whole function.
    #[default]
    Exact,
    /// `|a_u|, |b_u| <= scale * ratio^u` for every `u` past the truncation.
    Geometric { scale: f64, ratio: f64 },
    /// Nothing is known; a fixed slack is added and the report carries a caveat.
    Unknown,
}

impl TailModel {
    /// Bound on `sum_{u>N} weight(u) * |c_u| * r^(u - shift)` for one part.
    pub(crate) fn allowance(
        &self,
        r: f64,
        trunc: usize,
        shift: i32,
        weight: impl Fn(usize) -> f64,
    ) -> f64 {
        match *self {
            TailModel::Exact => 0.0,
            TailModel::Unknown => UNKNOWN_TAIL_SLACK,
            TailModel::Geometric { scale, ratio } => {
                let mut sum = 0.0;
                for u in trunc + 1..trunc + 100_000 {
                    let term = weight(u) * scale * (ratio * r).powi(u as i32) * r.powi(-shift);
                    sum += term;
                    if term <= 1e-20 * sum.max(f64::MIN_POSITIVE) {
                        break;
                    }
                }
                sum
            }
        }
    }

    pub(crate) fn caveat(&self) -> Option<String> {
        match self {
            TailModel::Unknown => Some(format!(
                "coefficient decay beyond the truncation is unknown; a fixed slack of {UNKNOWN_TAIL_SLACK:e} was added"
            )),
            _ => None,
        }
    }
}

/// Knobs shared by the disc checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub tolerance: f64,
    pub tail: TailModel,
    pub variant: TransformVariant,
    /// Seed for the pair selection of the injectivity probe.
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            tail: TailModel::Exact,
            variant: TransformVariant::Literal,
            seed: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_tail_matches_closed_form() {
        // sum_{u>N} s (rho r)^u = s (rho r)^(N+1) / (1 - rho r)
        let tail = TailModel::Geometric {
            scale: 2.0,
            ratio: 0.25,
        };
        let (r, n) = (0.9, 10usize);
        let got = tail.allowance(r, n, 0, |_| 1.0);
        let x: f64 = 0.25 * r;
        let want = 2.0 * x.powi(n as i32 + 1) / (1.0 - x);
        assert!((got - want).abs() <= 1e-15 * want);
        assert_eq!(TailModel::Exact.allowance(r, n, 0, |_| 1.0), 0.0);
        assert_eq!(
            TailModel::Unknown.allowance(r, n, 0, |_| 1.0),
            UNKNOWN_TAIL_SLACK
        );
        assert!(TailModel::Unknown.caveat().is_some());
    }
}
