use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which hypothesis of the block construction failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockHypothesis {
    /// `D(2 - D*alpha) > 1` does not hold.
    Margin { value: Rational },
    /// `N >= D(D-1)(2D+1) / (D(2 - D*alpha) - 1)` does not hold.
    Size { required: Rational },
    /// `D*alpha >= 1` does not hold; below it the bound `2(D*alpha-1)/(D(D-1)) N + 4`
    /// can go negative while `f_D` is zero.
    Density { gamma: Rational },
}

impl std::fmt::Display for BlockHypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockHypothesis::Margin { value } => {
                write!(f, "margin condition D(2 - D*alpha) > 1 fails (value {value})")
            }
            BlockHypothesis::Size { required } => {
                write!(f, "size condition N >= D(D-1)(2D+1)/(D(2 - D*alpha) - 1) fails (requires N >= {required})")
            }
            BlockHypothesis::Density { gamma } => {
                write!(f, "density condition D*alpha >= 1 fails (gamma = {gamma})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{a} has no inverse modulo {p}")]
    NoInverse { a: i64, p: u64 },
    #[error("leading coefficient vanishes modulo {p}; use the linear count")]
    DegenerateQuadratic { p: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("block construction hypothesis failed: {0}")]
    BlockHypothesis(BlockHypothesis),
    #[error("window k = {k} too large for p = {p}: need 2k <= p")]
    WindowTooLarge { p: u64, k: u64 },
    #[error(
        "p = {p} too small for alpha = {alpha}: k = ceil(p*alpha) + 1 = {k} needs 2k <= p \
         (p*alpha must be large)"
    )]
    PrimeTooSmall { p: u64, alpha: Rational, k: u64 },
    #[error("no admissible prime in [{low}, {high}] for N = {n}, alpha = {alpha} (N too small)")]
    NoAdmissiblePrime { n: u64, alpha: Rational, low: u64, high: u64 },
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: u64, cap: u64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal consistency failure: {0}")]
    Defect(String),
}

impl Error {
    /// True for violated preconditions, as opposed to caps, parse errors and defects.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::CapExceeded { .. } | Error::Parse { .. } | Error::Defect(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}
