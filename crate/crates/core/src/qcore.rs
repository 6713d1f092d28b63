//! q-integers and the deformation parameter.
//!
//! `[u]_q = 1 + q + ... + q^(u-1)` is evaluated as a nested sum. The
//! closed form `(1 - q^u)/(1 - q)` loses most of its digits as `q -> 1`
//! and is never used here.

use crate::error::{Error, Result};

/// Deformation parameter, always strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(Self(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

/// `[u]_q`, the q-analogue of the positive integer `u`.
pub fn q_integer(u: usize, q: QParam) -> Result<f64> {
    if u == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(q_integer_unchecked(u, q.get()))
}

/// `[u]_q^m`. The zeroth power is exactly 1.
pub fn q_integer_pow(u: usize, q: QParam, m: u32) -> Result<f64> {
    q_integer(u, q).map(|x| int_pow(x, m))
}

// Horner form of the geometric sum: s <- 1 + q*s, applied u-1 times.
// This makes [u+1]_q = 1 + q*[u]_q hold bitwise.
pub(crate) fn q_integer_unchecked(u: usize, q: f64) -> f64 {
    let mut s = 1.0;
    for _ in 1..u {
        s = 1.0 + q * s;
    }
    s
}

pub(crate) fn int_pow(x: f64, m: u32) -> f64 {
    match m {
        0 => 1.0,
        1 => x,
        _ => x.powi(m as i32),
    }
}
