use thiserror::Error;

use crate::config::expr::ExprError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point {point:?} lies outside the domain")]
    OutsideDomain { point: Vec<f64> },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("sampler exhausted after {obtained} of {requested} points")]
    SamplerExhausted { requested: usize, obtained: usize },

    #[error("subset A_{label} produced no sample points")]
    EmptySubset { label: usize },

    #[error("density is negative ({value}) at s = {at}")]
    InvalidDensity { at: f64, value: f64 },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid constants: {0}")]
    InvalidConstants(String),

    #[error("tuple is not adjacent in the cover: {which} = {point:?} ({reason})")]
    Adjacency {
        which: &'static str,
        point: Vec<f64>,
        reason: String,
    },

    #[error("quadrature did not reach tolerance {tol} on [{a}, {b}]")]
    Quadrature { a: f64, b: f64, tol: f64 },

    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("config error at `{path}`: {source}")]
    ConfigExpr { path: String, source: ExprError },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
