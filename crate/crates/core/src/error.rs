use thiserror::Error;

/// Errors reported by this crate.
///
/// Domain errors (a parameter outside the mathematical domain of an
/// operation) and capacity errors (a request whose enumeration would not
/// finish in reasonable time/memory) are kept distinct so callers can map
/// them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The success probability parameter must satisfy 0 ≤ q < 1.
    #[error("q must lie in [0, 1), got {q}")]
    QOutOfRange { q: String },

    /// Words consist of positive integers only.
    #[error("letter at position {position} must be a positive integer")]
    NonPositiveLetter { position: usize },

    /// A rank sequence that is not a canonical weak-order pattern.
    #[error("invalid rank pattern: {reason}")]
    InvalidPattern { reason: String },

    /// Series truncation needs a positive tolerance.
    #[error("tolerance must be positive, got {tol}")]
    NonPositiveTolerance { tol: String },

    /// The request exceeds an enumeration or sampling capacity guard.
    #[error("capacity exceeded for {what}: {detail}")]
    Capacity { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
