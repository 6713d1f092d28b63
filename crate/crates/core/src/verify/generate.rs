//! Seeded random functions with a prescribed coefficient functional.
//!
//! Shares are drawn uniformly, damped by `decay^u` and normalized to sum to
//! one, then each share is converted to a coefficient magnitude
//! `target (1 - alpha) share / [u]_q^m`. The functional of the result equals
//! `target` up to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::classes::ClassParams;
use crate::qcore::QParam;
use crate::series::{AnalyticSeries, HarmonicFunction, DEFAULT_TRUNC};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Support {
    Both,
    AnalyticOnly,
    CoanalyticOnly,
}

/// Shares for `a_2..a_N` and `b_1..b_N`.
fn draw_shares<R: Rng + ?Sized>(
    rng: &mut R,
    trunc: usize,
    decay: f64,
    support: Support,
) -> (Vec<f64>, Vec<f64>) {
    let mut draw = |u: usize, on: bool| {
        if on {
            // (0, 1], never exactly zero
            (1.0 - rng.gen::<f64>()) * decay.powi(u as i32)
        } else {
            0.0
        }
    };
    let a: Vec<f64> = (2..=trunc)
        .map(|u| draw(u, support != Support::CoanalyticOnly))
        .collect();
    let b: Vec<f64> = (1..=trunc)
        .map(|u| draw(u, support != Support::AnalyticOnly))
        .collect();
    let total: f64 = a.iter().chain(&b).sum();
    (
        a.iter().map(|x| x / total).collect(),
        b.iter().map(|x| x / total).collect(),
    )
}

fn pick_support<R: Rng + ?Sized>(rng: &mut R, trunc: usize) -> Support {
    if trunc < 2 {
        return Support::CoanalyticOnly;
    }
    match rng.gen_range(0..3) {
        0 => Support::Both,
        1 => Support::AnalyticOnly,
        _ => Support::CoanalyticOnly,
    }
}

const MAX_REDRAWS: usize = 64;

/// Random negative-coefficient functions `h = z - sum |a_u| z^u`, `g = sum |b_u| z^u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TFormGenerator {
    pub trunc: usize,
    /// Geometric damping of the shares; `0.25` keeps coefficients below a
    /// constant times `4^-u`.
    pub decay: f64,
}

impl Default for TFormGenerator {
    fn default() -> Self {
        Self {
            trunc: DEFAULT_TRUNC,
            decay: 0.25,
        }
    }
}

impl TFormGenerator {
    /// A T-form function whose coefficient functional is `target`. Draws with
    /// `|b_1| >= 1` are redrawn; `target = 0` gives the identity.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        p: &ClassParams,
        target: f64,
    ) -> HarmonicFunction {
        let trunc = self.trunc.max(2);
        if target <= 0.0 {
            return HarmonicFunction::identity(trunc);
        }
        let scale = target * (1.0 - p.alpha());
        let mut support = pick_support(rng, trunc);
        for attempt in 0.. {
            if attempt == MAX_REDRAWS {
                support = Support::AnalyticOnly;
            }
            let (a, b) = draw_shares(rng, trunc, self.decay, support);
            let a: Vec<f64> = a
                .iter()
                .enumerate()
                .map(|(k, s)| -(scale * s / p.weight(k + 2)))
                .collect();
            let b: Vec<f64> = b
                .iter()
                .enumerate()
                .map(|(k, s)| scale * s / p.weight(k + 1))
                .collect();
            if b[0] < 1.0 {
                return HarmonicFunction::from_real(&a, &b, trunc)
                    .expect("generated coefficients are normalized and finite");
            }
        }
        unreachable!()
    }
}

/// Random functions with complex coefficients of arbitrary phase; almost
/// surely not in T-form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomHarmonic {
    pub trunc: usize,
    pub decay: f64,
}

impl Default for RandomHarmonic {
    fn default() -> Self {
        Self {
            trunc: 6,
            decay: 0.5,
        }
    }
}

impl RandomHarmonic {
    pub fn sample<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        p: &ClassParams,
        target: f64,
    ) -> HarmonicFunction {
        let trunc = self.trunc.max(2);
        let scale = target * (1.0 - p.alpha());
        let mut support = pick_support(rng, trunc);
        for attempt in 0.. {
            if attempt == MAX_REDRAWS {
                support = Support::AnalyticOnly;
            }
            let (a, b) = draw_shares(rng, trunc, self.decay, support);
            let mut phase = || Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
            let mut h = vec![Complex64::new(1.0, 0.0)];
            h.extend(
                a.iter()
                    .enumerate()
                    .map(|(k, s)| phase() * (scale * s / p.weight(k + 2))),
            );
            let g: Vec<Complex64> = b
                .iter()
                .enumerate()
                .map(|(k, s)| phase() * (scale * s / p.weight(k + 1)))
                .collect();
            if g[0].norm() < 1.0 {
                let h = AnalyticSeries::new(h).expect("finite");
                let g = AnalyticSeries::new(g).expect("finite");
                return HarmonicFunction::new(h, g).expect("normalized");
            }
        }
        unreachable!()
    }
}

/// `m` in `0..=max_m`, `alpha` in `[0, 0.9)`, `q` in `[0.05, 0.95)`.
pub fn random_class_params<R: Rng + ?Sized>(rng: &mut R, max_m: u32) -> ClassParams {
    let m = rng.gen_range(0..=max_m);
    let alpha = rng.gen_range(0.0..0.9);
    let q = QParam::new(rng.gen_range(0.05..0.95)).expect("in range");
    ClassParams::new(m, alpha, q).expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::coeff_functional;
    use crate::series::is_t_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hits_target_functional() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let gen = TFormGenerator::default();
        for i in 0..200 {
            let p = random_class_params(&mut rng, 5);
            let target = 0.2 + (i as f64) * 0.005;
            let f = gen.sample(&mut rng, &p, target);
            assert!(is_t_form(&f));
            assert!(f.b1_magnitude() < 1.0);
            assert!((coeff_functional(&f, &p) - target).abs() <= 1e-13);
        }
    }

    #[test]
    fn complex_generator_hits_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let gen = RandomHarmonic::default();
        let p = random_class_params(&mut rng, 3);
        for _ in 0..50 {
            let f = gen.sample(&mut rng, &p, 1.3);
            assert!(!f.t_form());
            assert!((coeff_functional(&f, &p) - 1.3).abs() <= 1e-13);
        }
    }

    #[test]
    fn same_seed_same_function() {
        let p = ClassParams::new(2, 0.1, QParam::new(0.5).unwrap()).unwrap();
        let gen = TFormGenerator::default();
        let a = gen.sample(&mut ChaCha8Rng::seed_from_u64(9), &p, 0.8);
        let b = gen.sample(&mut ChaCha8Rng::seed_from_u64(9), &p, 0.8);
        assert_eq!(a, b);
    }
}
