//! Error taxonomy for the analytic evaluators.
//!
//! Programmer errors (series preconditions, index bounds) panic via `assert!`.
//! The `Error` type is reserved for conditions a correct caller can hit with
//! legitimate but out-of-range inputs: asymptotic formulas queried outside
//! their validity regime, parity-impossible coefficient requests, and
//! explicitly declared resource ceilings.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested evaluation lies outside the formula's validity domain
    /// (regime assertion, impossible parameter combination).
    #[error("domain: {0}")]
    Domain(String),

    /// The request exceeds a declared computational ceiling.
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end:
    /// domain errors are misuse (2), resource errors are 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
