use thiserror::Error;

/// Errors produced by field construction and the skew-polynomial tool chain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    InvalidCharacteristic(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("element belongs to a different field")]
    FieldMismatch,
    #[error("operands live in different skew rings")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined: {0}")]
    Undefined(String),
    #[error("scale map requires a nonzero scalar")]
    InvalidScale,
    #[error("{0} does not right-divide {1}")]
    NotRightDivisor(String, String),
    #[error("code has dimension zero")]
    EmptyCode,
    #[error("message degree must be below the code dimension")]
    DegreeTooLarge,
    #[error("vector length does not match the code length")]
    LengthMismatch,
    #[error("index set is not mu-closed")]
    NotClosed,
    #[error("shapes are not comparable: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
