use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {value} outside the admitted domain ({reason})")]
    Domain {
        function: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("log-derivative pole: x = {x} is a zero of Ai to working precision")]
    Pole { x: f64 },

    #[error("polylog: |z| = {z} exceeds the series cap; use exact sums instead")]
    PolylogDomain { z: f64 },

    #[error("{what}: root not bracketed on [{lo}, {hi}]")]
    Bracket { what: &'static str, lo: f64, hi: f64 },

    #[error("{what}: no convergence after {iterations} iterations, last bracket [{lo}, {hi}]")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    #[error("level sum did not converge within {levels} levels (last term {last_term:e})")]
    Budget { levels: usize, last_term: f64 },

    #[error("invalid specification: {0}")]
    Spec(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Spec(_) | Error::Domain { .. } | Error::PolylogDomain { .. } => 2,
            _ => 3,
        }
    }
}
