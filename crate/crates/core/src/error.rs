use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arity {n} is outside the supported range 1..={max}")]
    ArityOutOfRange { n: usize, max: usize },

    #[error("arity {n} exceeds the dense transform cap of {cap} variables; use the analytic path")]
    ArityExceedsCap { n: usize, cap: usize },

    #[error("dense transform cap {cap} exceeds the hard limit of {limit}")]
    CapTooLarge { cap: usize, limit: usize },

    #[error("hex truth table for {n} variables needs {expected} digits, found {found}")]
    HexLength {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid hex digit {ch:?} at position {pos}")]
    HexDigit { pos: usize, ch: char },

    #[error("hex digit sets bits beyond the 2^{n} table")]
    HexPadding { n: usize },

    #[error("ANF parse error at position {pos}: {msg}")]
    AnfParse { pos: usize, msg: String },

    #[error("variable X{var} is out of range for {n} variables")]
    VariableOutOfRange { var: usize, n: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("spectrum length {found} is not 2^{n}")]
    SpectrumLength { n: usize, found: usize },

    #[error("spectrum violates Parseval: sum of squares is {found}, expected {expected}")]
    ParsevalViolation { expected: u128, found: u128 },

    #[error("the inner function of a disjoint composition must be balanced")]
    UnbalancedInner,

    #[error("the base function must be balanced")]
    UnbalancedBase,

    #[error("point {point:#x} lies outside the 2^{n} input space")]
    PointOutOfRange { point: u64, n: usize },

    #[error("composition arity overflows: {0}")]
    ArityOverflow(String),

    #[error("{class} search supports n <= {max} (requested {n})")]
    SearchBound {
        class: &'static str,
        n: usize,
        max: usize,
    },

    #[error("invalid search job: {0}")]
    InvalidJob(String),

    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
