//! Jackson q-difference and Salagean q-differential operators.
//!
//! All operators act on coefficients through weights `[u]_q^m`; nothing is
//! computed by differencing function values.

use num_complex::Complex64;

use crate::error::Result;
use crate::qcore::{int_pow, q_integer_unchecked, QParam};
use crate::series::{hadamard, AnalyticSeries, HarmonicFunction, Polynomial};

/// Order and deformation of `D_q^m`.
///
/// With `classical` set the weights are `u^m` (the `q -> 1` operator) and
/// `q` is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    pub m: u32,
    pub q: QParam,
    pub classical: bool,
}

impl OperatorParams {
    pub fn new(m: u32, q: QParam) -> Self {
        Self {
            m,
            q,
            classical: false,
        }
    }

    pub fn classical(m: u32, q: QParam) -> Self {
        Self {
            m,
            q,
            classical: true,
        }
    }

    /// Weight applied to the coefficient of `z^u`; `u = 0` maps to 0.
    pub fn weight(&self, u: usize) -> f64 {
        if u == 0 {
            return 0.0;
        }
        let base = if self.classical {
            u as f64
        } else {
            q_integer_unchecked(u, self.q.get())
        };
        int_pow(base, self.m)
    }
}

/// `(s(z) - s(qz)) / ((1 - q) z)`, computed as `[u]_q c_u` at `z^(u-1)`.
pub fn q_diff(s: &AnalyticSeries, q: QParam) -> Polynomial {
    Polynomial::from_vec(
        s.terms()
            .map(|(u, c)| c * q_integer_unchecked(u, q.get()))
            .collect(),
    )
}

/// `z + sum_{u>=2} w_u z^u` with `w_u = [u]_q^m` (or `u^m`).
pub fn salagean_kernel(trunc: usize, p: &OperatorParams) -> AnalyticSeries {
    AnalyticSeries::from_vec_unchecked(
        (1..=trunc.max(1))
            .map(|u| Complex64::new(p.weight(u), 0.0))
            .collect(),
    )
}

/// `D_q^m s`: the coefficient of `z^u` is multiplied by `[u]_q^m`.
pub fn d_q_m(s: &AnalyticSeries, p: &OperatorParams) -> AnalyticSeries {
    if p.m == 0 {
        return s.clone();
    }
    AnalyticSeries::from_vec_unchecked(s.terms().map(|(u, c)| c * p.weight(u)).collect())
}

/// `D_q^m s` written as the convolution `s * kernel`.
pub fn d_q_m_by_convolution(s: &AnalyticSeries, p: &OperatorParams) -> AnalyticSeries {
    hadamard(s, &salagean_kernel(s.trunc(), p))
}

/// Image of a harmonic map under `D_q^m`: the analytic part `D_q^m h` and the
/// co-analytic part `(-1)^m D_q^m g`. Evaluating it gives
/// `D_q^m h(z) + (-1)^m conj(D_q^m g(z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicImage {
    pub analytic: AnalyticSeries,
    pub coanalytic: AnalyticSeries,
}

impl HarmonicImage {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.analytic.eval(z) + self.coanalytic.eval(z).conj()
    }

    /// The image as a harmonic function. Fails only if weights overflow.
    pub fn into_harmonic(self) -> Result<HarmonicFunction> {
        let h = AnalyticSeries::new(self.analytic.coeffs().to_vec())?;
        let g = AnalyticSeries::new(self.coanalytic.coeffs().to_vec())?;
        HarmonicFunction::new(h, g)
    }
}

pub fn d_q_m_harmonic(f: &HarmonicFunction, p: &OperatorParams) -> HarmonicImage {
    let analytic = d_q_m(f.h(), p);
    let mut coanalytic = d_q_m(f.g(), p);
    if p.m % 2 == 1 {
        coanalytic =
            AnalyticSeries::from_vec_unchecked(coanalytic.coeffs().iter().map(|c| -c).collect());
    }
    HarmonicImage {
        analytic,
        coanalytic,
    }
}

/// `(D_q^m h(z) + D_q^m g(z)) / z` as a series in `z`.
///
/// `g` enters as an analytic function: no conjugate and no `(-1)^m`. The
/// constant term is `1 + b_1`; the coefficient of `z^(u-1)` is
/// `w_u (a_u + b_u)`.
pub fn class_transform(f: &HarmonicFunction, p: &OperatorParams) -> Polynomial {
    Polynomial::from_vec(
        (1..=f.trunc())
            .map(|u| (f.h().coeff(u) + f.g().coeff(u)) * p.weight(u))
            .collect(),
    )
}

/// How the co-analytic part enters the class quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformVariant {
    /// `(D h(z) + D g(z)) / z`, see [`class_transform`].
    #[default]
    Literal,
    /// `(D h(z) + (-1)^m conj(D g(z))) / z`, built from the harmonic operator.
    /// Not analytic, so only defined pointwise and undefined at `z = 0`.
    HarmonicSigned,
}

/// Value of the class quantity at `z` under either reading.
pub fn class_transform_at(
    f: &HarmonicFunction,
    p: &OperatorParams,
    z: Complex64,
    variant: TransformVariant,
) -> Complex64 {
    match variant {
        TransformVariant::Literal => class_transform(f, p).eval(z),
        TransformVariant::HarmonicSigned => d_q_m_harmonic(f, p).eval(z) / z,
    }
}
