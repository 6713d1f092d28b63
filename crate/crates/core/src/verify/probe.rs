use crate::classes::ClassParams;
use crate::error::{Error, Result};
use crate::series::HarmonicFunction;

/// `1 - sum_{u>=2} [u]_q^m |a_u| r^(u-1) - sum_{u>=1} [u]_q^m |b_u| r^(u-1)`,
/// the class quantity of a T-form function on the positive real axis.
pub fn axis_expression(f: &HarmonicFunction, p: &ClassParams, r: f64) -> f64 {
    let op = p.operator();
    let mut acc = 0.0;
    let mut rp = 1.0;
    for u in 1..=f.trunc() {
        let mag = if u >= 2 { f.h().coeff(u).norm() } else { 0.0 } + f.g().coeff(u).norm();
        acc += op.weight(u) * mag * rp;
        rp *= r;
    }
    1.0 - acc
}

/// `0.05, 0.10, ..., 0.95, 0.99, 0.995, 0.999, 0.9995, 0.9999`.
pub fn default_r_sequence() -> Vec<f64> {
    let mut r: Vec<f64> = (1..=19).map(|k| k as f64 * 0.05).collect();
    r.extend([0.99, 0.995, 0.999, 0.9995, 0.9999]);
    r
}

/// Axis margins `expression(r) - alpha` along an increasing radius sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessityReport {
    pub r_values: Vec<f64>,
    pub margins: Vec<f64>,
    /// First radius where the expression drops below `alpha`.
    pub first_failure: Option<f64>,
    pub final_margin: f64,
    pub min_margin: f64,
    /// Margins never increase along the sequence.
    pub non_increasing: bool,
    pub passed: bool,
}

/// Evaluates the axis condition for a T-form `f` as `r -> 1`.
pub fn necessity_probe(
    f: &HarmonicFunction,
    p: &ClassParams,
    r_sequence: &[f64],
) -> Result<NecessityReport> {
    if !f.t_form() {
        return Err(Error::NotTForm);
    }
    if r_sequence.is_empty() {
        return Err(Error::Domain("empty radius sequence".into()));
    }
    if r_sequence.iter().any(|r| !(0.0..1.0).contains(r))
        || r_sequence.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::Domain(
            "radius sequence must be strictly increasing inside [0, 1)".into(),
        ));
    }
    let margins: Vec<f64> = r_sequence
        .iter()
        .map(|&r| axis_expression(f, p, r) - p.alpha())
        .collect();
    let first_failure = margins.iter().position(|&m| m < 0.0).map(|i| r_sequence[i]);
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(NecessityReport {
        r_values: r_sequence.to_vec(),
        final_margin: *margins.last().expect("non-empty"),
        min_margin,
        non_increasing: margins.windows(2).all(|w| w[1] <= w[0]),
        passed: first_failure.is_none(),
        first_failure,
        margins,
    })
}
