use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("polynomial does not split: a factor of degree {0} has no root in the field")]
    NotSplit(usize),
    #[error("polynomial degree {degree} exceeds the allowed maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("zero polynomial has no well-defined root multiplicity")]
    ZeroPolynomial,
    #[error("repeated root {0} in partial fraction denominators")]
    DuplicateRoot(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("target polynomial is not monic")]
    NotMonic,
    #[error("target polynomial has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("target is infeasible at eigenvalue {lambda}: multiplicity {multiplicity} < deficit {deficit}")]
    Infeasible {
        lambda: String,
        multiplicity: usize,
        deficit: usize,
    },
    #[error("enumeration of {required} cases exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("internal assertion failed: {0}")]
    AssertionFailure(String),
}
