//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A desk-scale guard or table capacity was exceeded.
    #[error("capacity exceeded for {what}: requested {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// The requested sum diverges (some weight 1 with M = 1).
    #[error("divergent series: weight 1 with M = 1 (harmonic-type divergence)")]
    Divergent,

    /// Binary series operation over mismatched truncation orders.
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    /// Binary operation over mismatched coefficient rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// An exact cyclotomic computation failed to reduce to a rational
    /// (or rational integer) value. Signals an arithmetic bug.
    #[error("internal consistency: expected rational value, got {0}")]
    NonRational(String),

    /// A value that must be an integer was not. Signals an arithmetic bug.
    #[error("internal consistency: expected integral value, got {0}")]
    NonIntegral(String),

    /// A final closed form still contains the Euler-Mascheroni generator.
    #[error("gamma cancellation failure: residual Euler-Mascheroni term in {0}")]
    ResidualGamma(String),

    /// Requested working precision outside the supported range.
    #[error("precision {0} outside supported range [{1}, {2}]")]
    PrecisionRange(u32, u32, u32),

    /// Exact mode requested where only numeric evaluation is available.
    #[error("exact mode unsupported: {0}")]
    ExactModeUnsupported(String),

    /// Violated operation precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
