use thiserror::Error;

/// Errors raised across the library. Each variant maps to a stable machine
/// code used in JSON error output.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient is not p-integral for p = {0}")]
    NotPIntegral(u64),
    #[error("polynomial vanishes modulo p = {0}")]
    ZeroModP(u64),
    #[error("element is zero")]
    ZeroElement,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility could not be certified: {0}")]
    UncertifiedIrreducibility(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("p = {0} divides the index of Z[alpha]; Dedekind criterion fails")]
    IndexDivisible(u64),
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("no root in the closure")]
    NoRoot,
    #[error("g has no root in the closure at this prime")]
    NoRootInClosure,
    #[error("precision limit exceeded: {0}")]
    PrecisionOverflow(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("no witness within the search bound: {0}")]
    NoneWithinBound(String),
    #[error("prime sets are not disjoint")]
    NonDisjoint,
    #[error("local witness is invalid: {0}")]
    LocalWitnessInvalid(String),
    #[error("inverse of zero during evaluation")]
    InverseOfZero,
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("negative input")]
    Negative,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable error code for machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPIntegral(_) => "NotPIntegral",
            Error::ZeroModP(_) => "ZeroModP",
            Error::ZeroElement => "ZeroElement",
            Error::NotMonic => "NotMonic",
            Error::Reducible(_) => "Reducible",
            Error::UncertifiedIrreducibility(_) => "UncertifiedIrreducibility",
            Error::DivisionByZero => "DivisionByZero",
            Error::IndexDivisible(_) => "IndexDivisible",
            Error::NegativeValuation => "NegativeValuation",
            Error::NoRoot => "NoRoot",
            Error::NoRootInClosure => "NoRootInClosure",
            Error::PrecisionOverflow(_) => "PrecisionOverflow",
            Error::Unsupported(_) => "Unsupported",
            Error::NoneWithinBound(_) => "NoneWithinBound",
            Error::NonDisjoint => "NonDisjoint",
            Error::LocalWitnessInvalid(_) => "LocalWitnessInvalid",
            Error::InverseOfZero => "InverseOfZero",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::Negative => "Negative",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::Invalid(_) => "Invalid",
        }
    }

    /// The failing clause, for errors that carry one.
    pub fn clause(&self) -> Option<String> {
        match self {
            Error::PreconditionViolated(c) => Some(c.clone()),
            Error::SyntaxError { pos, .. } => Some(format!("position {pos}")),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
