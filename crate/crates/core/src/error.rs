use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field too large: {0}")]
    TooLarge(String),
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducibleFound(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field contexts")]
    CtxMismatch,
    #[error("{0} does not divide 6")]
    BadSubfield(u32),
    #[error("drop must be 0 or 1, got {0}")]
    BadDrop(usize),
    #[error("variant does not match the parity of q = {0}")]
    ParityMismatch(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("root {root} matches none of the listed cases")]
    ClassificationGap { root: String },
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("budget of {budget} exceeded after {searched} candidates")]
    BudgetExceeded { budget: u64, searched: u64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("the zero map does not define a code")]
    ZeroMap,
    #[error("parse error: {0}")]
    Parse(String),
}
