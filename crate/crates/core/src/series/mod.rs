//! Truncated power series and harmonic pairs `f = h + conj(g)`.
//!
//! Every series stores the coefficients of `z^1 ..= z^N`; results are exact
//! on that range and anything past `N` is dropped.

mod json;

pub use json::{SchemaError, SeriesJson};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation degree used when a caller does not pick one.
pub const DEFAULT_TRUNC: usize = 32;

/// `sum_{u=1}^{N} c_u z^u`; `coeffs()[k]` is the coefficient of `z^(k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries {
    coeffs: Vec<Complex64>,
}

impl AnalyticSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { power: k + 1 });
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients for `z, z^2, ...`.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds a series of degree `trunc` from sparse `(power, coefficient)` terms.
    pub fn from_terms(trunc: usize, terms: &[(usize, Complex64)]) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); trunc];
        for &(u, c) in terms {
            if u == 0 {
                return Err(Error::ZeroIndex);
            }
            if u > trunc {
                return Err(Error::Domain(format!(
                    "power {u} exceeds truncation degree {trunc}"
                )));
            }
            coeffs[u - 1] += c;
        }
        Self::new(coeffs)
    }

    pub fn zeros(trunc: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); trunc.max(1)],
        }
    }

    /// The series `z`.
    pub fn identity(trunc: usize) -> Self {
        let mut s = Self::zeros(trunc);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    #[inline]
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^u`; zero outside `1..=N`.
    pub fn coeff(&self, u: usize) -> Complex64 {
        if u == 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs
            .get(u - 1)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Pads with zeros or drops high powers to reach degree `trunc`.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc.max(1), Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Iterates `(u, c_u)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(|(k, &c)| (k + 1, c))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_analytic(self, z)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }
}

/// Power series that carries a constant term: `coeffs()[k]` multiplies `z^k`.
///
/// Produced by operators that lower the degree (`q_diff`, the classical
/// derivative, the class transform `(...)/z`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub(crate) fn from_vec(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `sum c_u z^u` by Horner's rule.
pub fn eval_analytic(s: &AnalyticSeries, z: Complex64) -> Complex64 {
    horner(&s.coeffs, z) * z
}

/// Coefficientwise (Hadamard) product. The shorter operand is zero-padded.
pub fn hadamard(s1: &AnalyticSeries, s2: &AnalyticSeries) -> AnalyticSeries {
    let n = s1.trunc().max(s2.trunc());
    let coeffs = (1..=n).map(|u| s1.coeff(u) * s2.coeff(u)).collect();
    AnalyticSeries::from_vec_unchecked(coeffs)
}

/// `s'(z)`: the coefficient of `z^(u-1)` is `u c_u`.
pub fn classical_derivative(s: &AnalyticSeries) -> Polynomial {
    Polynomial::from_vec(s.terms().map(|(u, c)| c * u as f64).collect())
}

/// A harmonic map `f = h + conj(g)` on the unit disc.
///
/// `h` starts with exactly `z`. `|b_1| <= 1`; the value 1 is reached only by
/// boundary members of the closed class (for example the co-analytic
/// extreme point with `u = 1`, `alpha = 0`). The T-form flag is derived from
/// the coefficients at construction and records whether `h = z - sum |a_u| z^u`
/// and `g = sum |b_u| z^u`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFunction {
    h: AnalyticSeries,
    g: AnalyticSeries,
    t_form: bool,
}

impl HarmonicFunction {
    /// Both parts are brought to the larger of the two truncation degrees.
    pub fn new(h: AnalyticSeries, g: AnalyticSeries) -> Result<Self> {
        let n = h.trunc().max(g.trunc());
        let h = if h.trunc() == n { h } else { h.with_trunc(n) };
        let g = if g.trunc() == n { g } else { g.with_trunc(n) };
        let lead = h.coeff(1);
        if lead.re != 1.0 || lead.im != 0.0 {
            return Err(Error::NotNormalized {
                re: lead.re,
                im: lead.im,
            });
        }
        let b1 = g.coeff(1).norm();
        if b1 > 1.0 {
            return Err(Error::LeadingCoanalytic(b1));
        }
        let t_form = t_form_coefficients(&h, &g);
        Ok(Self { h, g, t_form })
    }

    /// `f = h` with `g = 0`.
    pub fn analytic(h: AnalyticSeries) -> Result<Self> {
        let n = h.trunc();
        Self::new(h, AnalyticSeries::zeros(n))
    }

    /// The identity map `f(z) = z`.
    pub fn identity(trunc: usize) -> Self {
        Self::new(
            AnalyticSeries::identity(trunc),
            AnalyticSeries::zeros(trunc),
        )
        .expect("identity is normalized")
    }

    /// Real signed coefficients: `a` lists `a_2, a_3, ...`, `b` lists `b_1, b_2, ...`.
    pub fn from_real(a: &[f64], b: &[f64], trunc: usize) -> Result<Self> {
        let mut h = vec![Complex64::new(0.0, 0.0); trunc];
        let mut g = vec![Complex64::new(0.0, 0.0); trunc];
        if a.len() + 1 > trunc || b.len() > trunc {
            return Err(Error::Domain(format!(
                "coefficients exceed truncation degree {trunc}"
            )));
        }
        h[0] = Complex64::new(1.0, 0.0);
        for (k, &c) in a.iter().enumerate() {
            h[k + 1] = Complex64::new(c, 0.0);
        }
        for (k, &c) in b.iter().enumerate() {
            g[k] = Complex64::new(c, 0.0);
        }
        Self::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
    }

    #[inline]
    pub fn h(&self) -> &AnalyticSeries {
        &self.h
    }

    #[inline]
    pub fn g(&self) -> &AnalyticSeries {
        &self.g
    }

    #[inline]
    pub fn t_form(&self) -> bool {
        self.t_form
    }

    #[inline]
    pub fn trunc(&self) -> usize {
        self.h.trunc()
    }

    /// `|b_1|`.
    pub fn b1_magnitude(&self) -> f64 {
        self.g.coeff(1).norm()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_harmonic(self, z)
    }
}

/// `h(z) + conj(g(z))`.
pub fn eval_harmonic(f: &HarmonicFunction, z: Complex64) -> Complex64 {
    eval_analytic(&f.h, z) + eval_analytic(&f.g, z).conj()
}

/// True iff every `a_u` (u >= 2) is real and non-positive and every `b_u` is
/// real and non-negative. Imaginary parts must be exactly zero.
pub fn is_t_form(f: &HarmonicFunction) -> bool {
    t_form_coefficients(&f.h, &f.g)
}

fn t_form_coefficients(h: &AnalyticSeries, g: &AnalyticSeries) -> bool {
    let h_ok = h.coeffs()[1..].iter().all(|c| c.im == 0.0 && c.re <= 0.0);
    let g_ok = g.coeffs().iter().all(|c| c.im == 0.0 && c.re >= 0.0);
    h_ok && g_ok
}
