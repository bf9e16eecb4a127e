use thiserror::Error;

/// Crate-wide error type. Every fallible public operation returns these.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid cycle notation: {0}")]
    InvalidCycles(String),

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("the given generators do not generate a subgroup of the parent group")]
    NotASubgroup,

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    EnumerationBound { order: u128, bound: u128 },

    #[error("group order overflows the supported range")]
    OrderOverflow,

    #[error("action is not transitive")]
    NotTransitive,

    #[error("connection set contains the identity")]
    IdentityInConnectionSet,

    #[error("connection set element {index} is not in the group")]
    ConnectionSetNotInGroup { index: usize },

    #[error("connection element {index} lies in the point stabilizer; the coset digraph would have loops")]
    ConnectionElementInSubgroup { index: usize },

    #[error(
        "witness generator {gen_index} is not an automorphism: arc ({from}, {to}) maps to a non-arc"
    )]
    NotAnAutomorphism {
        gen_index: usize,
        from: usize,
        to: usize,
    },

    #[error("s-arc count {count} exceeds the configured bound {bound}")]
    ArcBoundExceeded { count: u128, bound: u128 },

    #[error("arc count overflows the supported range")]
    ArcCountOverflow,

    #[error("transversal collision: vertices {i} and {j} label the same coset")]
    TransversalCollision { i: usize, j: usize },

    #[error("positions {i} and {j} hold the same group element")]
    DuplicateElement { i: usize, j: usize },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("arc ({u}, {v}) out of range for {n} vertices")]
    ArcOutOfRange { u: usize, v: usize, n: usize },

    #[error("vertex count {digraph} does not match coset count {cosets}")]
    ModelSizeMismatch { digraph: usize, cosets: usize },

    #[error("arcs at vertex {vertex} do not transport onto the coset digraph")]
    CosetModelArcMismatch { vertex: usize },

    #[error("{context}: entry ({row},{col}) differs: {lhs} vs {rhs}")]
    EntryMismatch {
        context: String,
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions {lhs} and {rhs} are incompatible")]
    ShapeMismatch { lhs: String, rhs: String },

    #[error("matrix is singular")]
    Singular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial has no such operation")]
    ZeroPolynomial,

    #[error("construction invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
