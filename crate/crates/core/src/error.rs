//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by constructors and precondition checks.  Arithmetic
/// overflow in multiplicity bookkeeping is a hard panic instead: silently
/// wrapped counts would poison every downstream verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid dominant weight: {0}")]
    InvalidWeight(String),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("profile mismatch: {0}")]
    ProfileMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
