//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A group specification string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The group order exceeds the enumeration cap.
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },

    /// An operation received arguments outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Oliver number is undefined or unavailable.
    #[error("Oliver number unavailable: {0}")]
    OliverNumber(String),

    /// An exact self-check failed; the computation cannot be trusted.
    #[error("verification failure: {0}")]
    Verification(String),

    /// A cell-complex file could not be read or decoded.
    #[error("complex input error: {0}")]
    ComplexInput(String),
}
