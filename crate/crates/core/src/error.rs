use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    ContextMismatch,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("operation undefined for the unit ideal: {0}")]
    UnitIdeal(String),
    #[error("unsupported characteristic: {0}")]
    Characteristic(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("non-rational point: {0}")]
    NonRational(String),
    #[error("locus is positive dimensional: {0}")]
    PositiveDimensional(String),
    #[error("term guard exceeded: {0}")]
    Guard(String),
    #[error("saturation did not stabilize within {0} colon steps")]
    SaturationCap(usize),
    #[error("step limit of {0} reached")]
    StepLimit(usize),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ContextMismatch => "context-mismatch",
            Error::NotDivisible(_) => "not-divisible",
            Error::ZeroInput(_) => "zero-input",
            Error::UnitIdeal(_) => "unit-ideal",
            Error::Characteristic(_) => "characteristic",
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::NonRational(_) => "non-rational",
            Error::PositiveDimensional(_) => "positive-dimensional",
            Error::Guard(_) => "guard",
            Error::SaturationCap(_) => "saturation-cap",
            Error::StepLimit(_) => "step-limit",
        }
    }

    /// Guards and step limits, as opposed to mathematical domain errors.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Guard(_) | Error::SaturationCap(_) | Error::StepLimit(_))
    }
}
