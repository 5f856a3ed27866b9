use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{function}: pole at {value}")]
    Pole { function: &'static str, value: f64 },

    #[error("{function}: argument {value} is not supported ({reason})")]
    Unsupported {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The requested tolerance could not be met within the context's budget.
    #[error("{what}: budget exhausted with error estimate {achieved:e} (requested {requested:e})")]
    Budget {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },

    #[error("{what}: exceeds capacity limit {limit}")]
    Capacity { what: &'static str, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
