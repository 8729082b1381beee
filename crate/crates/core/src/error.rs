use thiserror::Error;

/// Errors raised by the algebra and geometry routines.
///
/// Mathematical violations found while *verifying* a statement are never
/// reported through this type; those end up in the report structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    DegreeMismatch { expected: usize, got: Vec<u32> },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("field of order {0} is too large")]
    FieldTooLarge(u64),
    #[error("{value} is not an element of a field of order {order}")]
    InvalidElement { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("vector arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(
        "trace constraints are F_q-dependent (kernel has dimension {got}, expected {expected})"
    )]
    DependentConstraints { expected: usize, got: usize },
    #[error("vectors are not F_q-independent")]
    DependentVectors,
    #[error("symbolic division by the zero polynomial")]
    DivisorZero,
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(u32, u32),
    #[error("polynomial is not monic in X")]
    NotMonic,
    #[error("specialised Redei polynomial does not split over the field")]
    NonSplitting,
    #[error("polynomial is not linearized (exponent {0} is not a power of q)")]
    NotLinearized(usize),
    #[error("rank {k} exceeds extension degree {n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("rank {k} outside admissible range {min}..={max}")]
    RankOutOfRange { k: usize, min: usize, max: usize },
    #[error("linear set has no point of weight one")]
    NoWeightOnePoint,
    #[error("ambient space too large: {0}")]
    AmbientTooLarge(String),
    #[error("construction not supported for these parameters: {0}")]
    Unsupported(String),
    #[error("point does not lie in the subspace")]
    PointNotInSubspace,
    #[error("projection target is not complementary to the spread element")]
    NotComplementary,
    #[error("{count} instances exceed the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
