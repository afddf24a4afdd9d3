use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class of exponent {rep} modulo {order} does not contain its inverse")]
    SelfDualityViolation { rep: u32, order: u32 },
    #[error("exponents in the class of {rep} carry different multiplicities")]
    MultiplicityMismatch { rep: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("cuspidal convention violated: {0}")]
    ConventionViolation(String),
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("non-integral coefficient for {0}")]
    NonIntegral(String),
    #[error("twist case mismatch: {0}")]
    CaseMismatch(String),
    #[error("parameter is not in the required stability class: {0}")]
    NotStable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
