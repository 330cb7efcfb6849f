use thiserror::Error;

use crate::trigcore::TrigPoly;

/// Errors raised by the trigonometric function library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid interval [{a}, {b}]: need finite endpoints with b > a")]
    InvalidInterval { a: f64, b: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("operands live on different intervals")]
    DomainMismatch,

    #[error("Function not resolved using {points} pts.")]
    NotResolved { points: usize },

    #[error("function returned a non-finite value at t = {t}")]
    NonFinite { t: f64 },

    #[error("function is identically zero; every point is a root")]
    ZeroFunction,

    #[error("operation requires a real-valued function")]
    NotReal,

    #[error("duplicate interpolation node (modulo the period) at index {0}")]
    DuplicateNode(usize),

    #[error("{0} requires an odd grid size")]
    EvenGrid(&'static str),

    #[error("singular operator: {0}")]
    Singular(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("Newton iteration diverged after {iterations} steps (residual {residual:e})")]
    Divergence {
        iterations: usize,
        residual: f64,
        last: Box<TrigPoly>,
    },

    #[error("result is not a smooth periodic function: {0}")]
    PeriodicityBreak(String),
}

pub type Result<T> = std::result::Result<T, TrigError>;
