use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("operation not supported for this family: {0}")]
    UnsupportedFamily(String),
    #[error("generator {0} does not belong to this algebra")]
    UnknownGenerator(String),
    #[error("generator {0} is not supported by this operation")]
    UnsupportedGenerator(String),
    #[error("missing value for parameter {0}")]
    MissingParameter(String),
    #[error("constraint does not bound the basis: {0}")]
    InfiniteSelection(String),
    #[error("operands live on different variable sets")]
    VariableMismatch,
    #[error("existence condition not satisfied: {0}")]
    ConditionNotSatisfied(String),
    #[error("no order-zero multiplier for {0}")]
    NoMultiplier(String),
    #[error("parse error: {0}")]
    Parse(String),
}
