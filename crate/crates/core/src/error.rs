use thiserror::Error;

use crate::invariants::HilbertSamuelTable;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Objects from different rings, wrong exponent lengths and similar misuse.
    #[error("structural error: {0}")]
    Structural(String),

    /// Mathematically invalid input (zero divisor ideal, unit ideal where a proper one is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("regular sequence check failed at index {index}: {reason}")]
    NotRegularSequence { index: usize, reason: String },

    #[error("empty ring: the ideal is the unit ideal")]
    EmptyRing,

    #[error("filter ideal not primary to the variable ideal")]
    NotPrimary,

    #[error("budget exceeded: {what}")]
    BudgetExceeded {
        what: String,
        partial: Option<Box<HilbertSamuelTable>>,
    },

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("infinite colon did not stabilize at depth {depth}")]
    NotStabilized {
        depth: usize,
        candidates: Box<(Vec<String>, Vec<String>)>,
    },
}
