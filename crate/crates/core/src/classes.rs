//! Membership criteria and distinguished functions for the class of
//! harmonic maps with `Re{(D_q^m h + D_q^m g)/z} > alpha`, and for its
//! negative-coefficient (T-form) subclass.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::QParam;
use crate::salagean::OperatorParams;
use crate::series::{AnalyticSeries, HarmonicFunction, DEFAULT_TRUNC};

/// Slack on the coefficient functional so that boundary functions, which
/// sit at exactly 1 up to rounding, classify as members.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Class parameters `(m, alpha, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    m: u32,
    alpha: f64,
    q: QParam,
}

impl ClassParams {
    pub fn new(m: u32, alpha: f64, q: QParam) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { m, alpha, q })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn operator(&self) -> OperatorParams {
        OperatorParams::new(self.m, self.q)
    }

    /// `[u]_q^m`.
    pub fn weight(&self, u: usize) -> f64 {
        self.operator().weight(u)
    }

    /// `(1 - alpha) / [u]_q^m`, the extreme coefficient at power `u`.
    pub fn extreme_coefficient(&self, u: usize) -> f64 {
        (1.0 - self.alpha) / self.weight(u)
    }
}

/// `sum_{u>=2} w_u |a_u| / (1-alpha) + sum_{u>=1} w_u |b_u| / (1-alpha)`.
pub fn coeff_functional(f: &HarmonicFunction, p: &ClassParams) -> f64 {
    let op = p.operator();
    let a: f64 = f
        .h()
        .terms()
        .skip(1)
        .map(|(u, c)| op.weight(u) * c.norm())
        .sum();
    let b: f64 = f.g().terms().map(|(u, c)| op.weight(u) * c.norm()).sum();
    (a + b) / (1.0 - p.alpha)
}

/// Coefficient condition that certifies membership for any harmonic `f`.
pub fn satisfies_sufficient(f: &HarmonicFunction, p: &ClassParams) -> bool {
    coeff_functional(f, p) <= 1.0 + MEMBERSHIP_TOL
}

/// Exact membership test for T-form functions.
pub fn member_t_iff(f: &HarmonicFunction, p: &ClassParams) -> Result<bool> {
    if !f.t_form() {
        return Err(Error::NotTForm);
    }
    Ok(coeff_functional(f, p) <= 1.0 + MEMBERSHIP_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeKind {
    /// `h_u(z) = z - (1-alpha)/[u]_q^m z^u`, with `h_1 = z`.
    Analytic,
    /// `g_u(z) = z -/+ (1-alpha)/[u]_q^m conj(z)^u`.
    Coanalytic,
}

/// Sign of the co-analytic extreme coefficient.
///
/// `AsPrinted` stores `b_u = -(1-alpha)/[u]_q^m`, matching `g_u = z - ... conj(z)^u`.
/// `TForm` stores the positive value required by the negative-coefficient form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoanalyticSign {
    #[default]
    AsPrinted,
    TForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremePoint {
    pub u: usize,
    pub kind: ExtremeKind,
    pub sign: CoanalyticSign,
}

impl ExtremePoint {
    pub fn analytic(u: usize) -> Self {
        Self {
            u,
            kind: ExtremeKind::Analytic,
            sign: CoanalyticSign::AsPrinted,
        }
    }

    pub fn coanalytic(u: usize, sign: CoanalyticSign) -> Self {
        Self {
            u,
            kind: ExtremeKind::Coanalytic,
            sign,
        }
    }

    /// Signed `(power, h coefficient, g coefficient)` contributed beyond `h = z`.
    fn term(&self, p: &ClassParams) -> (usize, f64, f64) {
        let c = p.extreme_coefficient(self.u);
        match (self.kind, self.sign) {
            (ExtremeKind::Analytic, _) if self.u == 1 => (1, 0.0, 0.0),
            (ExtremeKind::Analytic, _) => (self.u, -c, 0.0),
            (ExtremeKind::Coanalytic, CoanalyticSign::AsPrinted) => (self.u, 0.0, -c),
            (ExtremeKind::Coanalytic, CoanalyticSign::TForm) => (self.u, 0.0, c),
        }
    }

    pub fn build(&self, p: &ClassParams, trunc: usize) -> Result<HarmonicFunction> {
        if self.u == 0 {
            return Err(Error::ZeroIndex);
        }
        if self.u > trunc {
            return Err(Error::Domain(format!(
                "extreme point u = {} exceeds truncation degree {trunc}",
                self.u
            )));
        }
        let (u, a, b) = self.term(p);
        let mut h = vec![Complex64::new(0.0, 0.0); trunc];
        let mut g = vec![Complex64::new(0.0, 0.0); trunc];
        h[0] = Complex64::new(1.0, 0.0);
        if u >= 2 {
            h[u - 1].re = a;
        }
        g[u - 1].re = b;
        HarmonicFunction::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
    }
}

/// Extreme point `h_u` or `g_u` (printed sign), truncated at
/// `max(DEFAULT_TRUNC, u)`.
pub fn extreme_point(u: usize, kind: ExtremeKind, p: &ClassParams) -> Result<HarmonicFunction> {
    let point = ExtremePoint {
        u,
        kind,
        sign: CoanalyticSign::AsPrinted,
    };
    point.build(p, DEFAULT_TRUNC.max(u))
}

/// `sum_i w_i f_i` over extreme points. Weights must be non-negative and sum
/// to 1 within `MEMBERSHIP_TOL`.
pub fn convex_combination(
    points: &[(ExtremePoint, f64)],
    p: &ClassParams,
    trunc: usize,
) -> Result<HarmonicFunction> {
    if points.is_empty() {
        return Err(Error::Weights("no points given".into()));
    }
    if let Some((_, w)) = points.iter().find(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::Weights(format!(
            "weight {w} is negative or not finite"
        )));
    }
    let total: f64 = points.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > MEMBERSHIP_TOL {
        return Err(Error::Weights(format!(
            "weights sum to {total}, expected 1"
        )));
    }
    let trunc = points
        .iter()
        .map(|(pt, _)| pt.u)
        .max()
        .unwrap_or(1)
        .max(trunc);
    let mut h = vec![Complex64::new(0.0, 0.0); trunc];
    let mut g = vec![Complex64::new(0.0, 0.0); trunc];
    // every point contributes w * z; the weights sum to 1 within tolerance,
    // and the leading coefficient is pinned to 1
    h[0] = Complex64::new(1.0, 0.0);
    for (pt, w) in points {
        if pt.u == 0 {
            return Err(Error::ZeroIndex);
        }
        let (u, a, b) = pt.term(p);
        if u >= 2 {
            h[u - 1].re += w * a;
        }
        g[u - 1].re += w * b;
    }
    HarmonicFunction::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
}

/// `z + sum_{u>=2} (1-alpha)/[u]_q^m x_u z^u + conj(sum_{u>=1} (1-alpha)/[u]_q^m y_u z^u)`.
///
/// `x[0]` is `x_2`; `y[0]` is `y_1`. Requires `sum |x_u| + sum |y_u| = 1`.
pub fn sharpness_witness(
    x: &[Complex64],
    y: &[Complex64],
    p: &ClassParams,
) -> Result<HarmonicFunction> {
    let mass: f64 = x.iter().chain(y).map(|c| c.norm()).sum();
    if (mass - 1.0).abs() > MEMBERSHIP_TOL {
        return Err(Error::Weights(format!(
            "sum |x_u| + sum |y_u| = {mass}, expected 1"
        )));
    }
    let trunc = (x.len() + 1).max(y.len()).max(1);
    let mut h = vec![Complex64::new(0.0, 0.0); trunc];
    let mut g = vec![Complex64::new(0.0, 0.0); trunc];
    h[0] = Complex64::new(1.0, 0.0);
    for (k, xu) in x.iter().enumerate() {
        let u = k + 2;
        h[u - 1] = xu * p.extreme_coefficient(u);
    }
    for (k, yu) in y.iter().enumerate() {
        let u = k + 1;
        g[u - 1] = yu * p.extreme_coefficient(u);
    }
    HarmonicFunction::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
}

/// Two-sided bound on `|f(z)|` at `|z| = r` for T-form members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBounds {
    pub upper: f64,
    pub lower: f64,
    pub radius: f64,
}

/// `(1 +/- |b_1|) r +/- (1 - alpha - |b_1|) r^2 / [2]_q^m`.
pub fn growth_bounds(b1_mag: f64, r: f64, p: &ClassParams) -> Result<GrowthBounds> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} outside [0, 1)")));
    }
    let slack = 1.0 - p.alpha - b1_mag;
    if b1_mag.is_nan() || b1_mag < 0.0 || slack < 0.0 {
        return Err(Error::Domain(format!(
            "|b_1| = {b1_mag} outside [0, 1 - alpha] = [0, {}]",
            1.0 - p.alpha
        )));
    }
    let quad = slack / p.weight(2) * r * r;
    Ok(GrowthBounds {
        upper: (1.0 + b1_mag) * r + quad,
        lower: (1.0 - b1_mag) * r - quad,
        radius: r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthWitness {
    /// `z + |b_1| conj(z) + c conj(z)^2`: attains the upper bound on the positive axis.
    Upper,
    /// `z - |b_1| z - c z^2`: attains the lower bound on the positive axis.
    /// Stored as `h = z - c z^2`, `g = -|b_1| z`, so it is not in T-form when `b_1 != 0`.
    Lower,
}

/// Equality cases of the growth bounds, with `c = (1 - alpha - |b_1|)/[2]_q^m`.
pub fn growth_witness(
    which: GrowthWitness,
    b1_mag: f64,
    p: &ClassParams,
    trunc: usize,
) -> Result<HarmonicFunction> {
    growth_bounds(b1_mag, 0.0, p)?;
    let c = (1.0 - p.alpha - b1_mag) / p.weight(2);
    let trunc = trunc.max(2);
    let (a, b) = match which {
        GrowthWitness::Upper => (vec![], vec![b1_mag, c]),
        GrowthWitness::Lower => (vec![-c], vec![-b1_mag]),
    };
    HarmonicFunction::from_real(&a, &b, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::is_t_form;

    fn params(m: u32, alpha: f64, q: f64) -> ClassParams {
        ClassParams::new(m, alpha, QParam::new(q).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_alpha() {
        let q = QParam::new(0.5).unwrap();
        assert!(ClassParams::new(0, 1.0, q).is_err());
        assert!(ClassParams::new(0, -0.1, q).is_err());
        assert!(ClassParams::new(0, f64::NAN, q).is_err());
    }

    #[test]
    fn functional_examples() {
        let p = params(2, 0.4, 0.7);
        assert_eq!(coeff_functional(&HarmonicFunction::identity(5), &p), 0.0);
        let f = HarmonicFunction::from_real(&[], &[0.3], 1).unwrap();
        assert!((coeff_functional(&f, &p) - 0.5).abs() < 1e-15);
        let h2 = extreme_point(2, ExtremeKind::Analytic, &p).unwrap();
        assert!((coeff_functional(&h2, &p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sufficient_condition() {
        let p = params(0, 0.5, 0.5);
        assert!(satisfies_sufficient(&HarmonicFunction::identity(3), &p));
        let f = HarmonicFunction::from_real(&[0.9], &[], 2).unwrap();
        assert!((coeff_functional(&f, &p) - 1.8).abs() < 1e-15);
        assert!(!satisfies_sufficient(&f, &p));
    }

    #[test]
    fn t_form_membership() {
        let p = params(1, 0.3, 0.6);
        let h2 = extreme_point(2, ExtremeKind::Analytic, &p).unwrap();
        assert_eq!(member_t_iff(&h2, &p), Ok(true));

        let f = HarmonicFunction::from_real(&[], &[0.999], 1).unwrap();
        assert_eq!(member_t_iff(&f, &params(0, 0.0, 0.5)), Ok(true));

        let f = HarmonicFunction::from_real(&[-0.8], &[], 2).unwrap();
        assert_eq!(member_t_iff(&f, &params(0, 0.5, 0.5)), Ok(false));

        let f = HarmonicFunction::from_real(&[0.1], &[], 2).unwrap();
        assert_eq!(member_t_iff(&f, &p), Err(Error::NotTForm));
    }

    #[test]
    fn extreme_point_examples() {
        let p = params(1, 0.0, 0.5);
        let h1 = extreme_point(1, ExtremeKind::Analytic, &p).unwrap();
        assert_eq!(h1, HarmonicFunction::identity(DEFAULT_TRUNC));
        assert_eq!(coeff_functional(&h1, &p), 0.0);

        let h2 = extreme_point(2, ExtremeKind::Analytic, &p).unwrap();
        assert_eq!(h2.h().coeff(2).re, -1.0 / 1.5);
        assert!(is_t_form(&h2));

        let p = params(3, 0.25, 0.8);
        let g1 = extreme_point(1, ExtremeKind::Coanalytic, &p).unwrap();
        assert_eq!(g1.g().coeff(1), c(-0.75, 0.0));
        assert!(!g1.t_form());
        let g1t = ExtremePoint::coanalytic(1, CoanalyticSign::TForm)
            .build(&p, 4)
            .unwrap();
        assert_eq!(g1t.g().coeff(1), c(0.75, 0.0));
        assert!(g1t.t_form());

        assert_eq!(
            extreme_point(0, ExtremeKind::Analytic, &p),
            Err(Error::ZeroIndex)
        );
        assert_eq!(
            extreme_point(40, ExtremeKind::Analytic, &p)
                .unwrap()
                .trunc(),
            40
        );
    }

    #[test]
    fn boundary_coanalytic_point_is_constructible() {
        // alpha = 0, u = 1 gives |b_1| = 1
        let p = params(0, 0.0, 0.5);
        let g1 = ExtremePoint::coanalytic(1, CoanalyticSign::TForm)
            .build(&p, 3)
            .unwrap();
        assert_eq!(g1.b1_magnitude(), 1.0);
        assert_eq!(member_t_iff(&g1, &p), Ok(true));
    }

    #[test]
    fn combination_examples() {
        let p = params(0, 0.0, 0.5);
        let f = convex_combination(&[(ExtremePoint::analytic(1), 1.0)], &p, 3).unwrap();
        assert_eq!(f, HarmonicFunction::identity(3));

        let f = convex_combination(
            &[
                (ExtremePoint::analytic(2), 0.5),
                (ExtremePoint::analytic(1), 0.5),
            ],
            &p,
            2,
        )
        .unwrap();
        assert_eq!(f, HarmonicFunction::from_real(&[-0.5], &[], 2).unwrap());

        let f = convex_combination(
            &[
                (ExtremePoint::analytic(2), 0.4),
                (ExtremePoint::coanalytic(1, CoanalyticSign::TForm), 0.6),
            ],
            &p,
            2,
        )
        .unwrap();
        assert_eq!(f.h().coeff(2), c(-0.4, 0.0));
        assert_eq!(f.g().coeff(1).norm(), 0.6);
        assert!((coeff_functional(&f, &p) - 1.0).abs() < 1e-15);
        assert!(f.t_form());

        assert!(matches!(
            convex_combination(
                &[
                    (ExtremePoint::analytic(2), -0.1),
                    (ExtremePoint::analytic(1), 1.1)
                ],
                &p,
                2
            ),
            Err(Error::Weights(_))
        ));
        assert!(matches!(
            convex_combination(&[(ExtremePoint::analytic(2), 0.5)], &p, 2),
            Err(Error::Weights(_))
        ));
    }

    #[test]
    fn witness_examples() {
        let p = params(1, 0.5, 0.5);
        let f = sharpness_witness(&[c(1.0, 0.0)], &[], &p).unwrap();
        assert!((f.h().coeff(2).re - 0.5 / 1.5).abs() < 1e-16);

        let p = params(2, 0.2, 0.3);
        let f = sharpness_witness(&[], &[c(1.0, 0.0)], &p).unwrap();
        assert!((f.g().coeff(1).re - 0.8).abs() < 1e-16);

        let p = params(0, 0.0, 0.5);
        let f = sharpness_witness(&[c(0.5, 0.0)], &[c(0.5, 0.0)], &p).unwrap();
        assert_eq!(coeff_functional(&f, &p), 1.0);

        assert!(sharpness_witness(&[c(0.5, 0.0)], &[], &p).is_err());
    }

    #[test]
    fn growth_examples() {
        let b = growth_bounds(0.0, 0.5, &params(0, 0.0, 0.5)).unwrap();
        assert_eq!((b.upper, b.lower), (0.75, 0.25));

        let tiny = growth_bounds(0.0, 1e-9, &params(2, 0.3, 0.4)).unwrap();
        assert!((tiny.upper - 1e-9).abs() < 1e-17 && (tiny.lower - 1e-9).abs() < 1e-17);

        let b = growth_bounds(0.5, 0.5, &params(1, 0.0, 1.0 - 1e-8)).unwrap();
        assert!((b.upper - 0.8125).abs() < 1e-5);

        assert!(growth_bounds(0.6, 0.5, &params(0, 0.5, 0.5)).is_err());
        assert!(growth_bounds(0.1, 1.0, &params(0, 0.5, 0.5)).is_err());
    }

    #[test]
    fn growth_witnesses_hit_bounds_on_axis() {
        let p = params(2, 0.25, 0.6);
        let b1 = 0.3;
        let up = growth_witness(GrowthWitness::Upper, b1, &p, 4).unwrap();
        let lo = growth_witness(GrowthWitness::Lower, b1, &p, 4).unwrap();
        assert!(up.t_form());
        assert!((coeff_functional(&up, &p) - 1.0).abs() < 1e-14);
        for r in [0.25, 0.5, 0.9] {
            let b = growth_bounds(b1, r, &p).unwrap();
            assert!((up.eval(c(r, 0.0)).norm() - b.upper).abs() < 1e-15);
            assert!((lo.eval(c(r, 0.0)).norm() - b.lower).abs() < 1e-15);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bound_gap_identity(b1 in 0.0f64..0.5, r in 0.0f64..0.999, m in 0u32..5,
                                  alpha in 0.0f64..0.5, qv in 0.01f64..0.99) {
                let p = params(m, alpha, qv);
                let b = growth_bounds(b1, r, &p).unwrap();
                let gap = 2.0 * b1 * r + 2.0 / p.weight(2) * (1.0 - alpha - b1) * r * r;
                prop_assert!((b.upper - b.lower - gap).abs() <= 1e-14);
                prop_assert!(b.lower <= b.upper);
            }

            #[test]
            fn combination_functional_is_off_identity_mass(
                w in proptest::collection::vec(0.01f64..1.0, 1..6), m in 0u32..4,
                alpha in 0.0f64..0.9, qv in 0.05f64..0.95,
            ) {
                let p = params(m, alpha, qv);
                let total: f64 = w.iter().sum();
                let pts: Vec<_> = w.iter().enumerate().map(|(k, x)| {
                    let pt = if k % 2 == 0 { ExtremePoint::analytic(k + 1) }
                             else { ExtremePoint::coanalytic(k, CoanalyticSign::TForm) };
                    (pt, x / total)
                }).collect();
                let f = convex_combination(&pts, &p, 8).unwrap();
                let mass: f64 = pts.iter().filter(|(pt, _)| !(pt.kind == ExtremeKind::Analytic && pt.u == 1))
                    .map(|(_, x)| x).sum();
                prop_assert!((coeff_functional(&f, &p) - mass).abs() <= 1e-12);
                prop_assert!(f.t_form());
            }
        }
    }
}
