//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by state, operator, and experiment constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix or vector had an unsupported dimension.
    #[error("invalid dimension: expected {expected}, got {got}")]
    InvalidDimension { expected: &'static str, got: usize },

    /// An operation required a Hermitian input.
    #[error("matrix is not Hermitian (max |M - M\u{2020}| = {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// A ket or density matrix failed its defining invariants.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A parameter fell outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested construction has no unique answer.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
