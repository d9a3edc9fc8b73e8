use thiserror::Error;

/// Errors raised by field arithmetic, matrix algebra, verification and the
/// constructions built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeP(u64),
    #[error("characteristic {0} is outside the supported range [2, 2^32)")]
    UnsupportedPrime(u64),
    #[error("modulus {0} is not monic")]
    NonMonicModulus(String),
    #[error("modulus {0} is reducible over GF({1})")]
    ReducibleModulus(String, u64),
    #[error("polynomial {0} is not primitive over GF({1})")]
    NotPrimitive(String, u64),
    #[error("elements or matrices belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no discrete logarithm")]
    ZeroElement,
    #[error("field of order {order} exceeds the table cap {cap}")]
    FieldTooLarge { order: u128, cap: u64 },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("index set must be strictly increasing")]
    UnsortedIndexSet,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("leading block A of the Schur decomposition is singular")]
    SingularA,
    #[error("row {0} is not the stated combination aX + bY")]
    RowMismatch(usize),
    #[error("block ({row}, {col}) does not lie in GF(p)[C]")]
    NotInSpan { row: usize, col: usize },
    #[error("{rows}x{cols} matrix is not divisible into {block}x{block} blocks")]
    NotBlockAligned {
        rows: usize,
        cols: usize,
        block: usize,
    },
    #[error("minor size {k} exceeds min(rows, cols) = {limit}")]
    SizeTooLarge { k: usize, limit: usize },
    #[error("input matrix #{index} is not superregular")]
    NotSuperregular { index: usize },
    #[error("matrix B is singular")]
    SingularB,
    #[error("factor {position} is singular")]
    SingularFactor { position: usize },
    #[error("generator exponent {exponent} is not coprime to {group_order}")]
    BadGeneratorExponent { exponent: u64, group_order: u64 },
    #[error("entry ({row}, {col}) is not of the form a*alpha with a in GF(p)")]
    MalformedBase { row: usize, col: usize },
    #[error("bad perturbation coefficient: {0}")]
    BadCoefficientRange(String),
    #[error("perturbation constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
