use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over GF({p})")]
    NotIrreducible { p: u32 },
    #[error("modulus degree mismatch: expected monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: u32, got: Vec<u32> },
    #[error("field of size {0} exceeds the supported range")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("integer {value} is not an element encoding for a field of size {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("duplicate interpolation point")]
    DuplicatePoint,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("left k x k block of the generator is singular")]
    SingularLeftBlock,
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("brute-force bound exceeded: {0}")]
    TooLarge(String),
    #[error("no element of the larger field lies outside the smaller one")]
    EmptyDifference,
    #[error("{order} is not the order of a proper subgroup of a group of order {group}")]
    NotASubgroupOrder { order: usize, group: usize },
    #[error("(-1)^k / eta lies in the multiplicative subgroup")]
    EtaInGroup,
    #[error("evaluation set is not a proper additive subgroup")]
    NotAdditiveSubgroup,
    #[error("1 / eta lies in the additive subgroup")]
    EtaInverseInGroup,
    #[error("evaluation points do not form a multiplicative subgroup")]
    NotMultiplicativeGroup,
    #[error("no solution found up to degree {0}")]
    NoSolution(usize),
    #[error("polynomial matrix is singular")]
    SingularMatrix,
    #[error("reduced basis has no row with pivot at the first position")]
    NoPivotOneRow,
    #[error("brute-force budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
