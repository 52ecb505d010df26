use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the solver can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symbol mismatch: {0}")]
    SymbolMismatch(String),
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("symmetry class error: {0}")]
    ClassError(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),
    #[error("not solvable in radicals by this pipeline: {reason}")]
    NotSolvableInRadicals { reason: String, sigma_system: Vec<String> },
    #[error("not solvable here: {0}")]
    NotSolvableHere(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("numeric singularity: {0}")]
    NumericSingularity(String),
    #[error("no convergence after {sweeps} sweeps (last update {last_update:e})")]
    NoConvergence {
        sweeps: usize,
        last_update: f64,
        best: Vec<(f64, f64)>,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
