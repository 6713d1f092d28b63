//! Randomized probe of the gap between the coefficient condition and the
//! sampled class properties, plus a map of where the comparison
//! `u (1 - alpha) <= [u]_q^m` holds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::checks::{
    injectivity_sample_check_with, re_condition_margin_with, sense_preserving_margin_with,
};
use super::generate::RandomHarmonic;
use super::{CheckConfig, DiskGrid};
use crate::classes::{coeff_functional, ClassParams};
use crate::series::{HarmonicFunction, SeriesJson, DEFAULT_TRUNC};

/// One instance of the comparison `u (1 - alpha)` vs `[u]_q^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepCheck {
    pub u: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates `u (1 - alpha) <= [u]_q^m` directly.
pub fn proof_step(u: usize, p: &ClassParams) -> StepCheck {
    let lhs = u as f64 * (1.0 - p.alpha());
    let rhs = p.weight(u);
    StepCheck {
        u,
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanGenerator {
    Random,
    /// Every trial uses `f(z) = z`.
    Identity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub trials: usize,
    pub seed: u64,
    pub generator: ScanGenerator,
    pub functions: RandomHarmonic,
    /// Functionals are drawn uniformly from `(low, high]`.
    pub target_range: (f64, f64),
    pub grid: DiskGrid,
    pub pair_budget: usize,
    /// Step comparisons are evaluated for `u = 2..=step_range`.
    pub step_range: usize,
    pub checks: CheckConfig,
}

impl ScanConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            generator: ScanGenerator::Random,
            functions: RandomHarmonic::default(),
            target_range: (1.0, 1.5),
            grid: DiskGrid::new(vec![0.1, 0.3, 0.5, 0.7, 0.9, 0.99], 64, true).expect("valid grid"),
            pair_budget: 512,
            step_range: DEFAULT_TRUNC,
            checks: CheckConfig {
                seed,
                ..CheckConfig::default()
            },
        }
    }
}

/// A non-T-form function that violates the coefficient condition yet passes
/// every sampled check.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanFlag {
    pub trial: usize,
    pub functional: f64,
    pub re_margin: f64,
    pub sense_margin: f64,
    pub injectivity_margin: f64,
    pub function: HarmonicFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub seed: u64,
    pub trials: usize,
    /// Every `u` in range where `u (1 - alpha) > [u]_q^m`.
    pub step_failures: Vec<StepCheck>,
    pub flagged: Vec<ScanFlag>,
}

impl ScanReport {
    pub fn flagged_trials(&self) -> Vec<usize> {
        self.flagged.iter().map(|f| f.trial).collect()
    }
}

#[derive(Serialize)]
struct FlagJson {
    trial: usize,
    functional: f64,
    re_margin: f64,
    sense_margin: f64,
    injectivity_margin: f64,
    function: SeriesJson,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    seed: u64,
    trials: usize,
    step_failures: &'a [StepCheck],
    flagged: Vec<FlagJson>,
}

impl Serialize for ScanReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            seed: self.seed,
            trials: self.trials,
            step_failures: &self.step_failures,
            flagged: self
                .flagged
                .iter()
                .map(|f| FlagJson {
                    trial: f.trial,
                    functional: f.functional,
                    re_margin: f.re_margin,
                    sense_margin: f.sense_margin,
                    injectivity_margin: f.injectivity_margin,
                    function: SeriesJson::from(&f.function),
                })
                .collect(),
        }
        .serialize(s)
    }
}

pub fn counterexample_scan(p: &ClassParams, trials: usize, seed: u64) -> ScanReport {
    counterexample_scan_with(p, &ScanConfig::new(trials, seed))
}

/// Each trial draws from its own ChaCha stream `(seed, trial)`, so the flag
/// list does not depend on scheduling.
pub fn counterexample_scan_with(p: &ClassParams, cfg: &ScanConfig) -> ScanReport {
    let step_failures = (2..=cfg.step_range.max(2))
        .map(|u| proof_step(u, p))
        .filter(|s| !s.holds)
        .collect();
    let flagged = (0..cfg.trials.max(1))
        .into_par_iter()
        .filter_map(|trial| run_trial(p, cfg, trial))
        .collect();
    ScanReport {
        seed: cfg.seed,
        trials: cfg.trials.max(1),
        step_failures,
        flagged,
    }
}

fn run_trial(p: &ClassParams, cfg: &ScanConfig, trial: usize) -> Option<ScanFlag> {
    let f = match cfg.generator {
        ScanGenerator::Identity => HarmonicFunction::identity(cfg.functions.trunc.max(2)),
        ScanGenerator::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial as u64);
            let (lo, hi) = cfg.target_range;
            // (lo, hi]
            let target = hi - rng.gen::<f64>() * (hi - lo);
            cfg.functions.sample(&mut rng, p, target)
        }
    };
    if f.t_form() {
        return None;
    }
    let functional = coeff_functional(&f, p);
    if functional <= 1.0 {
        return None;
    }
    let re = re_condition_margin_with(&f, p, &cfg.grid, &cfg.checks);
    if !re.passed {
        return None;
    }
    let sense = sense_preserving_margin_with(&f, &cfg.grid, &cfg.checks);
    if !sense.passed {
        return None;
    }
    let inj = injectivity_sample_check_with(&f, &cfg.grid, cfg.pair_budget, &cfg.checks);
    if !inj.passed {
        return None;
    }
    Some(ScanFlag {
        trial,
        functional,
        re_margin: re.min_margin,
        sense_margin: sense.min_margin,
        injectivity_margin: inj.min_margin,
        function: f,
    })
}
