use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested size exceeds the enumeration bound.
    #[error("capacity exceeded: {what} requested at {requested}, bound is {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    /// The Pochhammer denominator (t)_n vanishes.
    #[error("pole: (t)_n = 0 for t = {t}, n = {n}")]
    Pole { t: String, n: usize },
    /// Two objects living at different levels were combined.
    #[error("level mismatch: expected {expected}, got {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Sampling was requested for parameters whose weights are not a probability vector.
    #[error("parameters not admissible for sampling: {0}")]
    NotAdmissible(String),
    /// An identity that must hold by construction failed; signals a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
