use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("constant term is not 0")]
    ConstantTermNotZero,
    #[error("coefficient ring cannot divide by integers")]
    RingLacksRationalDivision,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("ring has no psi operations")]
    NoPsiStructure,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("deformation parameter equals 1")]
    DegenerateDeformation,
    #[error("operands have different contexts")]
    ContextMismatch,
    #[error("integrality violated: {0}")]
    IntegralityViolation(String),
    #[error("ring with this deformation has no unity")]
    NotUnital,
    #[error("input truncation {have} is shorter than required {need}")]
    TruncationTooShort { need: usize, have: usize },
    #[error("degree {degree} exceeds alphabet size {vars}")]
    DegreeExceedsAlphabet { degree: usize, vars: usize },
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used in machine-readable error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ConstantTermNotOne => "ConstantTermNotOne",
            Error::ConstantTermNotZero => "ConstantTermNotZero",
            Error::RingLacksRationalDivision => "RingLacksRationalDivision",
            Error::NotInvertible => "NotInvertible",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::RingMismatch => "RingMismatch",
            Error::NoPsiStructure => "NoPsiStructure",
            Error::NotDivisible(_) => "NotDivisible",
            Error::DegenerateDeformation => "DegenerateDeformation",
            Error::ContextMismatch => "ContextMismatch",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::NotUnital => "NotUnital",
            Error::TruncationTooShort { .. } => "TruncationTooShort",
            Error::DegreeExceedsAlphabet { .. } => "DegreeExceedsAlphabet",
            Error::InvalidContext(_) => "InvalidContext",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
