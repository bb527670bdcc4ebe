use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("extension modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation requires positive characteristic")]
    CharZero,
    #[error("operation is undefined in characteristic 2")]
    CharTwo,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("expected {expected}x{expected} matrices, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("generator X{index} used but only {m} generators are available")]
    GeneratorOutOfRange { index: usize, m: usize },
    #[error("enumeration of {requested} items exceeds the configured cap of {cap}")]
    BudgetExceeded { requested: u128, cap: usize },
    #[error("conjugating matrix is singular")]
    SingularG,
    #[error("tuple does not generate the full matrix algebra")]
    NotInU,
    #[error("sample point {0} does not generate the full matrix algebra")]
    PointNotInU(usize),
    #[error("empty point set")]
    Empty,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
