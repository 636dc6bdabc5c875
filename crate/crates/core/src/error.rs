//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing or operating on the
/// algebraic objects of this crate. Each variant names the violated
/// invariant so callers (and the CLI) can surface a precise message.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a field: {0}")]
    NotAField(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("scalar does not belong to ring {ring}: {value}")]
    WrongRing { ring: String, value: String },

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("entries are not polynomial: {0}")]
    NotPolynomial(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("quiver is not acyclic")]
    CyclicQuiver,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("quiver mismatch between representations")]
    QuiverMismatch,

    #[error("field mismatch between representations")]
    FieldMismatch,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("not a morphism of representations: {0}")]
    NotAMorphism(String),

    #[error("relations present: operation requires a hereditary algebra (no relations)")]
    NotHereditary,

    #[error("zero representation: {0}")]
    ZeroRepresentation(String),

    #[error("decomposition gave up: {0}")]
    DecompositionExhausted(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("subquiver is not full convex: {0}")]
    NotConvex(String),

    #[error("enumeration bounds exceeded: {0}")]
    BoundsExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
