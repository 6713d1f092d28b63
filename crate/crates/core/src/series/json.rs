//! `{"trunc": N, "h": [[re, im], ...], "g": [[re, im], ...]}`
//!
//! Index 0 of each array is the coefficient of `z`. Arrays shorter than
//! `trunc` are zero-padded; `h[0]` must be `[1, 0]`.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use super::{AnalyticSeries, HarmonicFunction};

/// A schema violation, naming the offending field (`trunc`, `h[3]`, ...).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("field `{field}`: {message}")]
pub struct SchemaError {
    pub field: String,
    pub message: String,
}

impl SchemaError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Wire form of a harmonic function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesJson {
    pub trunc: usize,
    pub h: Vec<[f64; 2]>,
    pub g: Vec<[f64; 2]>,
}

impl From<&HarmonicFunction> for SeriesJson {
    fn from(f: &HarmonicFunction) -> Self {
        let pairs = |s: &AnalyticSeries| s.coeffs().iter().map(|c| [c.re, c.im]).collect();
        Self {
            trunc: f.trunc(),
            h: pairs(f.h()),
            g: pairs(f.g()),
        }
    }
}

impl HarmonicFunction {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(SeriesJson::from(self)).expect("plain numeric data serializes")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| SchemaError::new("<document>", format!("invalid JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self, SchemaError> {
        let obj = value
            .as_object()
            .ok_or_else(|| SchemaError::new("<root>", "expected a JSON object"))?;
        if let Some(extra) = obj
            .keys()
            .find(|k| !matches!(k.as_str(), "trunc" | "h" | "g"))
        {
            return Err(SchemaError::new(extra.as_str(), "unknown field"));
        }
        let trunc = match obj.get("trunc") {
            None => return Err(SchemaError::new("trunc", "missing")),
            Some(v) => v
                .as_u64()
                .filter(|&n| n >= 1)
                .ok_or_else(|| SchemaError::new("trunc", "expected a positive integer"))?
                as usize,
        };
        let h = coefficient_array(obj, "h", trunc)?;
        let g = coefficient_array(obj, "g", trunc)?;
        if h[0] != Complex64::new(1.0, 0.0) {
            return Err(SchemaError::new("h[0]", "must be [1, 0]"));
        }
        if g[0].norm() > 1.0 {
            return Err(SchemaError::new("g[0]", "|b_1| must not exceed 1"));
        }
        let h = AnalyticSeries::new(h).map_err(|e| SchemaError::new("h", e.to_string()))?;
        let g = AnalyticSeries::new(g).map_err(|e| SchemaError::new("g", e.to_string()))?;
        HarmonicFunction::new(h, g).map_err(|e| SchemaError::new("<root>", e.to_string()))
    }
}

fn coefficient_array(
    obj: &Map<String, Value>,
    name: &str,
    trunc: usize,
) -> Result<Vec<Complex64>, SchemaError> {
    let arr = obj
        .get(name)
        .ok_or_else(|| SchemaError::new(name, "missing"))?
        .as_array()
        .ok_or_else(|| SchemaError::new(name, "expected an array of [re, im] pairs"))?;
    if arr.len() > trunc {
        return Err(SchemaError::new(
            name,
            format!("{} coefficients exceed trunc = {trunc}", arr.len()),
        ));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); trunc];
    for (k, item) in arr.iter().enumerate() {
        let field = || format!("{name}[{k}]");
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| SchemaError::new(field(), "expected [re, im]"))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| SchemaError::new(field(), "real part is not a number"))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| SchemaError::new(field(), "imaginary part is not a number"))?;
        out[k] = Complex64::new(re, im);
    }
    if name == "h" && arr.is_empty() {
        return Err(SchemaError::new("h[0]", "missing; must be [1, 0]"));
    }
    Ok(out)
}
