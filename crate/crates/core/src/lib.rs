//! Harmonic univalent functions on the unit disc under the Salagean
//! q-differential operator.
//!
//! - [`qcore`]: q-integers `[u]_q` and the parameter type [`QParam`]
//! - [`series`]: truncated series, harmonic pairs `h + conj(g)`, JSON form
//! - [`salagean`]: `\partial_q`, `D_q^m` and the class quantity
//! - [`classes`]: coefficient criteria, extreme points, sharpness witnesses,
//!   growth bounds
//! - [`verify`]: disc-sampled checks, necessity probe, randomized scan
//! - [`cli`]: the `qharm` command line

pub mod classes;
pub mod cli;
pub mod error;
pub mod qcore;
pub mod salagean;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qcore::{q_integer, q_integer_pow, QParam};
pub use salagean::OperatorParams;
pub use series::{AnalyticSeries, HarmonicFunction, Polynomial};
