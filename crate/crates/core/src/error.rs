use thiserror::Error;

/// Errors raised when constructing or transforming functions and parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("q must lie strictly between 0 and 1, got {0}")]
    InvalidQ(f64),
    #[error("alpha must lie in [0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("index u must be at least 1")]
    ZeroIndex,
    #[error("truncation degree must be at least 1")]
    EmptySeries,
    #[error("non-finite coefficient at power {power}")]
    NonFinite { power: usize },
    #[error("analytic part must start with z (coefficient of z is {re}+{im}i)")]
    NotNormalized { re: f64, im: f64 },
    #[error("|b_1| = {0} exceeds 1")]
    LeadingCoanalytic(f64),
    #[error("function is not in negative-coefficient (T) form")]
    NotTForm,
    #[error("invalid weights: {0}")]
    Weights(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
