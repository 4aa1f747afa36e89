use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {0} exceeds the supported maximum 2^20")]
    FieldTooLarge(u64),
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    MalformedModulus { expected: u32, p: u32 },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("element index {value} is outside a field of order {order}")]
    ElementOutOfRange { value: u32, order: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("GF({small}) is not a subfield of GF({large})")]
    NotASubfield { small: u32, large: u32 },
    #[error("basis elements are linearly dependent over the subfield")]
    DependentBasis,
    #[error("basis has {got} elements, expected {expected}")]
    BasisSize { expected: usize, got: usize },
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate {index} out of range for length {len}")]
    CoordinateOutOfRange { index: usize, len: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("degree {m} outside the admissible range {lo} < m < {hi}")]
    AdmissibleRange { m: i64, lo: i64, hi: i64 },
    #[error("evaluation place lies in the support of G")]
    SupportOverlap,
    #[error("place {0} does not lie on the curve")]
    PlaceNotOnCurve(String),
    #[error("evaluation places are not pairwise distinct")]
    DuplicatePlace,
    #[error("generator rank {got} differs from the expected dimension {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("rank condition violated: {0}")]
    RankCondition(String),
    #[error("generator is not in unit-memory split shape: {0}")]
    NotSplitShape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
