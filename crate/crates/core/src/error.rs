//! Error type shared by every module of the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("reduction polynomial rejected: {0}")]
    BadPolynomial(String),

    #[error("no built-in irreducible polynomial for {p}^{m}; supply one explicitly")]
    NoBuiltinPolynomial { p: u32, m: u32 },

    #[error("field of order {0} exceeds the supported table size")]
    FieldTooLarge(u64),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid field element vector: {0}")]
    BadVector(String),

    #[error("invalid field descriptor {0:?}: expected \"p^m\" or \"p^m/c0,...,cm\"")]
    BadFieldDescriptor(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("ambient spaces differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("code needs at least two members, has {0}")]
    TooFewMembers(usize),

    #[error("matrix family is empty")]
    EmptyFamily,

    #[error("divisibility precheck failed: M{i}*M{j}^T has {value} at ({row},{col}), not divisible by {p}")]
    PrecheckFailed {
        i: usize,
        j: usize,
        row: usize,
        col: usize,
        value: i64,
        p: u32,
    },

    #[error("every element of the span reduces to the zero matrix")]
    DegenerateSpan,

    #[error("span has {count} projective representatives, above the exhaustive cap of {cap}; use sampling")]
    SpanTooLarge { count: u128, cap: u128 },

    #[error("not a Deza graph: {0}")]
    NotDeza(String),

    #[error("lemma identity failed: {0}")]
    LemmaMismatch(String),

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("partition is not equitable: block ({cell_row},{cell_col}) has non-constant row sums at row {row}")]
    NotEquitable {
        cell_row: usize,
        cell_col: usize,
        row: usize,
    },

    #[error("theorem hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid permutation: {0}")]
    BadPermutation(String),

    #[error("invalid design input: {0}")]
    Design(String),

    #[error("association scheme axiom {axiom} violated: {detail}")]
    SchemeAxiom { axiom: u8, detail: String },

    #[error("invalid index set: {0}")]
    BadIndexSet(String),
}
