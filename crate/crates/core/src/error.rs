use thiserror::Error;

/// Errors raised by the numerical pipeline.
///
/// Every variant carries enough context to be reported verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("derivative requested within {distance:e} of a singularity at x = {x}")]
    Singularity { x: f64, distance: f64 },

    #[error("lambda = {lambda} lies within {distance:e} of the admissible window edge (guard {guard:e})")]
    Guard {
        lambda: f64,
        distance: f64,
        guard: f64,
    },

    #[error("certification failed at c = {c}: {reason}")]
    Uncertified { c: f64, reason: String },

    #[error("requested depth {requested} exceeds the cap {cap}")]
    Depth { requested: usize, cap: usize },

    #[error("coarse scan found {count} sign changes of v_c (expected exactly one)")]
    MultipleSignChange { count: usize },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("{value} is outside the domain {domain}")]
    Domain { value: f64, domain: String },

    #[error("output error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
