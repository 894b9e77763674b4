//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An index or polynomial of the wrong dimension was mixed in.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The positive cone of the active order has no least element, so the
    /// index reflection and everything built on it is unavailable.
    #[error("the positive cone of this order has no least element")]
    NoMinimalPositive,

    /// An index fell outside the cone an operation requires.
    #[error("index {index:?} is not in the {required} cone")]
    WrongCone {
        index: Vec<i64>,
        required: &'static str,
    },

    /// A Hankel operator was applied to a function with negative-cone
    /// frequencies.
    #[error("polynomial is not of analytic type: negative-cone coefficients present")]
    NotAnalytic,

    /// Power iteration exhausted its iteration budget.
    #[error(
        "singular value iteration did not converge after {iterations} iterations \
         (last estimate {last:.6e}, relative change {gap:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        last: f64,
        gap: f64,
    },

    /// A computation produced NaN or infinity.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    /// A parameter failed validation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A symbol file or configuration could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A norm inequality that must hold was violated.
    #[error("inequality {name} violated: {lhs:.6e} > {rhs:.6e} + {allowed:.3e}")]
    InequalityViolated {
        name: String,
        lhs: f64,
        rhs: f64,
        allowed: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
