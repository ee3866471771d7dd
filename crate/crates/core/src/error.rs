use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} out of range: {what}")]
    OutOfRange { what: &'static str, value: String },

    #[error("duplicate symbol {0}")]
    Duplicate(u64),

    #[error("alphabet has no symbols")]
    EmptySymbols,

    #[error("degenerate alphabet (|A| = {size}, M = {base}) rejected by {op}")]
    DegenerateAlphabet {
        op: &'static str,
        base: u64,
        size: usize,
    },

    #[error("{what} = {requested} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("iteration did not converge after {iterations} steps (last relative change {last_change:e})")]
    NonConvergence { iterations: usize, last_change: f64 },

    #[error("symbol {symbol} is not in the alphabet")]
    SymbolNotInAlphabet { symbol: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("quantum map has no assembled matrix")]
    NotAssembled,

    #[error("operation requires equal smooth cutoffs")]
    NotSmoothCutoff,

    #[error("shifted operator is numerically singular at lambda = {re} + {im}i")]
    NearSingular { re: f64, im: f64 },

    #[error("eigensolver failed: {0}")]
    SolverFailure(String),

    #[error("fit needs at least two usable points, got {0}")]
    DegenerateFit(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl ToString) -> Self {
        Error::OutOfRange {
            what,
            value: value.to_string(),
        }
    }

    pub(crate) fn cap(what: &'static str, requested: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            requested: requested.into(),
            cap: cap.into(),
        }
    }

    /// Process exit code used by the `baker` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::Overflow(_) => 3,
            Error::NonConvergence { .. } | Error::SolverFailure(_) | Error::NearSingular { .. } => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
