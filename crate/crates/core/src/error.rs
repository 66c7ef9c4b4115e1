use thiserror::Error;

use crate::numeric::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("node {node} has negative multiplicity {phi} on a reachable path; no brick construction exists for these roots")]
    NegativeMultiplicity { node: usize, phi: i64 },

    #[error("node {node} (height {height}) yields non-positive edge length {value}; choose x_{height} >= {height}")]
    NonPositiveExtent { node: usize, height: usize, value: Rational },

    #[error("tree is not projectable: {0}")]
    NotProjectable(String),

    #[error("invalid start node {node}: {reason}")]
    InvalidStart { node: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that mean "this instance admits no construction", as opposed to
    /// malformed input.
    pub fn is_not_constructible(&self) -> bool {
        matches!(
            self,
            Error::NegativeMultiplicity { .. }
                | Error::NonPositiveExtent { .. }
                | Error::NotProjectable(_)
                | Error::InvalidStart { .. }
        )
    }
}
