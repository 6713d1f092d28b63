use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CheckConfig, DiskGrid, GridPoint, MarginTable, VerificationReport};
use crate::classes::{growth_bounds, member_t_iff, ClassParams};
use crate::error::{Error, Result};
use crate::salagean::{class_transform, d_q_m_harmonic, TransformVariant};
use crate::series::{classical_derivative, HarmonicFunction};

pub(crate) const RE_CONDITION: &str = "re_condition";
pub(crate) const SENSE_PRESERVING: &str = "sense_preserving";
pub(crate) const INJECTIVITY: &str = "injectivity";
pub(crate) const GROWTH_UPPER: &str = "growth_upper";
pub(crate) const GROWTH_LOWER: &str = "growth_lower";

/// Minimum over samples, NaN counting as the worst value; the first
/// occurrence wins ties, which is the lexicographic (radius, angle) order.
fn argmin(margins: &[f64]) -> usize {
    let mut best = 0;
    for (i, &m) in margins.iter().enumerate().skip(1) {
        let cur = margins[best];
        if cur.is_nan() {
            break;
        }
        if m.is_nan() || m < cur {
            best = i;
        }
    }
    best
}

fn reduce(
    check: &str,
    points: &[GridPoint],
    margins: &[f64],
    tolerance: f64,
    caveat: Option<String>,
) -> VerificationReport {
    let i = argmin(margins);
    let min_margin = margins[i];
    VerificationReport {
        check: check.to_string(),
        min_margin,
        argmin: points[i].z,
        passed: !min_margin.is_nan() && min_margin >= -tolerance,
        samples: margins.len(),
        tolerance,
        caveat,
    }
}

fn re_margins(
    f: &HarmonicFunction,
    p: &ClassParams,
    points: &[GridPoint],
    variant: TransformVariant,
) -> Vec<f64> {
    let op = p.operator();
    let alpha = p.alpha();
    match variant {
        TransformVariant::Literal => {
            let t = class_transform(f, &op);
            points
                .par_iter()
                .map(|pt| t.eval(pt.z).re - alpha)
                .collect()
        }
        TransformVariant::HarmonicSigned => {
            let img = d_q_m_harmonic(f, &op);
            points
                .par_iter()
                .map(|pt| (img.eval(pt.z) / pt.z).re - alpha)
                .collect()
        }
    }
}

fn sense_margins(f: &HarmonicFunction, points: &[GridPoint]) -> Vec<f64> {
    let hp = classical_derivative(f.h());
    let gp = classical_derivative(f.g());
    points
        .par_iter()
        .map(|pt| hp.eval(pt.z).norm() - gp.eval(pt.z).norm())
        .collect()
}

fn growth_margins(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
    points: &[GridPoint],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let b1 = f.b1_magnitude();
    let bounds = grid
        .radii()
        .iter()
        .map(|&r| growth_bounds(b1, r, p))
        .collect::<Result<Vec<_>>>()?;
    let (upper, lower) = points
        .par_iter()
        .map(|pt| {
            let v = f.eval(pt.z).norm();
            let b = &bounds[pt.radius_index];
            (b.upper - v, v - b.lower)
        })
        .unzip();
    Ok((upper, lower))
}

/// `Re{(D_q^m h + D_q^m g)(z)/z} - alpha` over the grid.
pub fn re_condition_margin(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
) -> VerificationReport {
    re_condition_margin_with(f, p, grid, &CheckConfig::default())
}

pub fn re_condition_margin_with(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
    cfg: &CheckConfig,
) -> VerificationReport {
    let points = grid.points();
    let margins = re_margins(f, p, &points, cfg.variant);
    let allowance = cfg
        .tail
        .allowance(grid.max_radius(), f.trunc(), 1, |u| 2.0 * p.weight(u));
    reduce(
        RE_CONDITION,
        &points,
        &margins,
        cfg.tolerance + allowance,
        cfg.tail.caveat(),
    )
}

/// `|h'(z)| - |g'(z)|` over the grid.
pub fn sense_preserving_margin(f: &HarmonicFunction, grid: &DiskGrid) -> VerificationReport {
    sense_preserving_margin_with(f, grid, &CheckConfig::default())
}

pub fn sense_preserving_margin_with(
    f: &HarmonicFunction,
    grid: &DiskGrid,
    cfg: &CheckConfig,
) -> VerificationReport {
    let points = grid.points();
    let margins = sense_margins(f, &points);
    let allowance = cfg
        .tail
        .allowance(grid.max_radius(), f.trunc(), 1, |u| 2.0 * u as f64);
    reduce(
        SENSE_PRESERVING,
        &points,
        &margins,
        cfg.tolerance + allowance,
        cfg.tail.caveat(),
    )
}

/// Seeded pair selection: even draws pair a point with a grid neighbour,
/// odd draws pick two points uniformly.
fn select_pairs(grid: &DiskGrid, budget: usize, seed: u64) -> Vec<(usize, usize)> {
    let n_ang = grid.angular_count();
    let n_rad = grid.radii().len();
    let total = grid.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(budget);
    for draw in 0..budget {
        let i = rng.gen_range(0..total);
        let (ri, k) = (i / n_ang, i % n_ang);
        let j = if draw % 2 == 0 {
            if n_rad > 1 && rng.gen_bool(0.5) {
                let rj = if ri + 1 < n_rad { ri + 1 } else { ri - 1 };
                rj * n_ang + k
            } else {
                ri * n_ang + (k + 1) % n_ang
            }
        } else {
            let j = rng.gen_range(0..total - 1);
            if j >= i {
                j + 1
            } else {
                j
            }
        };
        pairs.push((i, j));
    }
    pairs
}

/// Minimum of `|f(z1) - f(z2)| / |z1 - z2|` over seeded pairs of distinct
/// grid points; passes when that minimum exceeds the tolerance.
pub fn injectivity_sample_check(
    f: &HarmonicFunction,
    grid: &DiskGrid,
    pair_budget: usize,
) -> VerificationReport {
    injectivity_sample_check_with(f, grid, pair_budget, &CheckConfig::default())
}

pub fn injectivity_sample_check_with(
    f: &HarmonicFunction,
    grid: &DiskGrid,
    pair_budget: usize,
    cfg: &CheckConfig,
) -> VerificationReport {
    let budget = pair_budget.max(1);
    let points = grid.points();
    let values: Vec<Complex64> = points.par_iter().map(|pt| f.eval(pt.z)).collect();
    let pairs = select_pairs(grid, budget, cfg.seed);
    let ratios: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| (values[i] - values[j]).norm() / (points[i].z - points[j].z).norm())
        .collect();
    let k = argmin(&ratios);
    let allowance = cfg
        .tail
        .allowance(grid.max_radius(), f.trunc(), 1, |u| 2.0 * u as f64);
    let tolerance = cfg.tolerance + allowance;
    VerificationReport {
        check: INJECTIVITY.to_string(),
        min_margin: ratios[k],
        argmin: points[pairs[k].0].z,
        passed: ratios[k] > tolerance,
        samples: budget,
        tolerance,
        caveat: cfg.tail.caveat(),
    }
}

/// Upper and lower sides of the growth-bound check.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// margin `upper(r) - |f(z)|`
    pub upper: VerificationReport,
    /// margin `|f(z)| - lower(r)`
    pub lower: VerificationReport,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.upper.passed && self.lower.passed
    }
}

/// Requires a T-form member of the class.
pub fn growth_bound_check(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
) -> Result<GrowthReport> {
    growth_bound_check_with(f, p, grid, &CheckConfig::default())
}

pub fn growth_bound_check_with(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
    cfg: &CheckConfig,
) -> Result<GrowthReport> {
    if !member_t_iff(f, p)? {
        return Err(Error::Domain(
            "growth bounds apply only to members of the T-form class".into(),
        ));
    }
    let points = grid.points();
    let (upper, lower) = growth_margins(f, p, grid, &points)?;
    let allowance = cfg.tail.allowance(grid.max_radius(), f.trunc(), 0, |_| 2.0);
    let tol = cfg.tolerance + allowance;
    Ok(GrowthReport {
        upper: reduce(GROWTH_UPPER, &points, &upper, tol, cfg.tail.caveat()),
        lower: reduce(GROWTH_LOWER, &points, &lower, tol, cfg.tail.caveat()),
    })
}

/// Per-point margins of the pointwise checks, for CSV export. Growth columns
/// are included only for T-form members.
pub fn margin_table(
    f: &HarmonicFunction,
    p: &ClassParams,
    grid: &DiskGrid,
    cfg: &CheckConfig,
) -> MarginTable {
    let points = grid.points();
    let mut columns = vec![
        (
            RE_CONDITION.to_string(),
            re_margins(f, p, &points, cfg.variant),
        ),
        (SENSE_PRESERVING.to_string(), sense_margins(f, &points)),
    ];
    if member_t_iff(f, p) == Ok(true) {
        if let Ok((upper, lower)) = growth_margins(f, p, grid, &points) {
            columns.push((GROWTH_UPPER.to_string(), upper));
            columns.push((GROWTH_LOWER.to_string(), lower));
        }
    }
    MarginTable {
        points: points.iter().map(|pt| pt.z).collect(),
        columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{extreme_point, growth_witness, ExtremeKind, GrowthWitness};
    use crate::qcore::QParam;
    use crate::series::AnalyticSeries;
    use crate::verify::TailModel;

    fn params(m: u32, alpha: f64, q: f64) -> ClassParams {
        ClassParams::new(m, alpha, QParam::new(q).unwrap()).unwrap()
    }

    fn small_grid() -> DiskGrid {
        DiskGrid::new(vec![0.25, 0.5, 0.75, 0.9, 0.99], 64, true).unwrap()
    }

    #[test]
    fn identity_re_condition() {
        let p = params(2, 0.9, 0.5);
        let rep = re_condition_margin(&HarmonicFunction::identity(8), &p, &DiskGrid::default());
        assert!((rep.min_margin - 0.1).abs() < 1e-15);
        assert!(rep.passed);
        assert_eq!(rep.samples, 11 * 256);
    }

    #[test]
    fn extreme_point_re_condition_minimum_on_axis() {
        let p = params(0, 0.0, 0.5);
        let h2 = extreme_point(2, ExtremeKind::Analytic, &p).unwrap();
        let grid = DiskGrid::new(vec![0.5, 0.9, 0.99], 128, true).unwrap();
        let rep = re_condition_margin(&h2, &p, &grid);
        assert!((rep.min_margin - 0.01).abs() < 1e-14);
        assert_eq!(rep.argmin, Complex64::new(0.99, 0.0));
        assert!(rep.passed);
    }

    #[test]
    fn violating_t_form_fails_re_condition() {
        // functional 1.5 with m = 0, alpha = 0
        let p = params(0, 0.0, 0.5);
        let f = HarmonicFunction::from_real(&[-1.0, -0.5], &[], 3).unwrap();
        let rep = re_condition_margin(&f, &p, &DiskGrid::default());
        assert!(!rep.passed);
        assert_eq!(rep.argmin, Complex64::new(0.999, 0.0));
    }

    #[test]
    fn sense_preserving_examples() {
        let rep = sense_preserving_margin(&HarmonicFunction::identity(4), &small_grid());
        assert_eq!(rep.min_margin, 1.0);
        assert!(rep.passed);

        let f = HarmonicFunction::new(
            AnalyticSeries::identity(2),
            AnalyticSeries::from_real(&[0.99, 0.02]).unwrap(),
        )
        .unwrap();
        let hp = classical_derivative(f.h())
            .eval(Complex64::new(0.0, 0.0))
            .norm();
        let gp = classical_derivative(f.g())
            .eval(Complex64::new(0.0, 0.0))
            .norm();
        assert!((hp - gp - 0.01).abs() < 1e-15);
        let rep = sense_preserving_margin(&f, &small_grid());
        assert!(rep.min_margin < 0.01);
    }

    #[test]
    fn identity_is_isometric() {
        let rep =
            injectivity_sample_check(&HarmonicFunction::identity(6), &DiskGrid::default(), 500);
        assert_eq!(rep.min_margin, 1.0);
        assert!(rep.passed);
        assert_eq!(rep.samples, 500);
    }

    #[test]
    fn pair_selection_is_seeded() {
        let g = small_grid();
        assert_eq!(select_pairs(&g, 100, 7), select_pairs(&g, 100, 7));
        assert_ne!(select_pairs(&g, 100, 7), select_pairs(&g, 100, 8));
        assert!(select_pairs(&g, 1000, 3).iter().all(|(i, j)| i != j));
    }

    #[test]
    fn growth_examples() {
        let p = params(1, 0.2, 0.6);
        let grid = small_grid();
        let rep = growth_bound_check(&HarmonicFunction::identity(4), &p, &grid).unwrap();
        assert!(rep.passed());
        assert!(rep.upper.min_margin > 0.0 && rep.lower.min_margin > 0.0);

        let up = growth_witness(GrowthWitness::Upper, 0.3, &p, 4).unwrap();
        let rep = growth_bound_check(&up, &p, &grid).unwrap();
        assert!(rep.passed());
        assert!(rep.upper.min_margin.abs() <= 1e-12);
        assert_eq!(rep.upper.argmin.im, 0.0);

        let h2 = extreme_point(2, ExtremeKind::Analytic, &p).unwrap();
        let rep = growth_bound_check(&h2, &p, &grid).unwrap();
        assert!(rep.lower.min_margin.abs() <= 1e-12);

        let bad = HarmonicFunction::from_real(&[-0.9], &[], 2).unwrap();
        assert!(growth_bound_check(&bad, &p, &grid).is_err());
        let not_t = HarmonicFunction::from_real(&[0.01], &[], 2).unwrap();
        assert_eq!(growth_bound_check(&not_t, &p, &grid), Err(Error::NotTForm));
    }

    #[test]
    fn unknown_tail_widens_tolerance() {
        let cfg = CheckConfig {
            tail: TailModel::Unknown,
            ..CheckConfig::default()
        };
        let p = params(0, 0.0, 0.5);
        let rep = re_condition_margin_with(&HarmonicFunction::identity(2), &p, &small_grid(), &cfg);
        assert_eq!(rep.tolerance, 2e-9);
        assert!(rep.caveat.is_some());
    }

    #[test]
    fn csv_table_layout() {
        let p = params(1, 0.0, 0.5);
        let grid = DiskGrid::new(vec![0.5], 4, true).unwrap();
        let t = margin_table(
            &HarmonicFunction::identity(2),
            &p,
            &grid,
            &CheckConfig::default(),
        );
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "re,im,re_condition_margin,sense_preserving_margin,growth_upper_margin,growth_lower_margin"
        );
        assert_eq!(lines.count(), 4);
    }
}
