use thiserror::Error;

/// Broad classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: wrong shapes, dangling ids, bad JSON.
    Schema,
    /// Well-formed input that fails a mathematical precondition.
    Precondition,
    /// A theorem-backed assertion failed; this is a bug signal.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("side mismatch: cannot combine character and cocharacter polynomials")]
    SideMismatch,
    #[error("wrong side: operation requires a {expected} polynomial")]
    WrongSide { expected: &'static str },
    #[error("zero vector is not a lattice generator")]
    ZeroGenerator,
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: usize },
    #[error("non-unimodular monomial (determinant {det})")]
    NonUnimodular { det: i64 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("cone generator already occurs in the polynomial")]
    ConeGeneratorOccurs,
    #[error("cone requires a cycle (boundary must vanish)")]
    NotACycle,

    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("vertex {vertex} has valence {found}, expected {expected}")]
    Valence {
        vertex: u64,
        found: usize,
        expected: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a valid torus graph: {0}")]
    InvalidAxial(String),
    #[error("torus graph is non-orientable")]
    NonOrientable,
    #[error("graph carries no orientation")]
    Unoriented,
    #[error("vertex monomials do not cancel")]
    NoCancellation,
    #[error("gluing would create a loop at vertex {0}")]
    LoopCreated(u64),
    #[error("polynomial is not in K_n: {0}")]
    NotInKernel(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),

    #[error("malformed polytope: {0}")]
    MalformedPolytope(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("polytope is not simple: a vertex lies on {0} facets")]
    NonSimple(usize),
    #[error("facet {0} is redundant")]
    RedundantFacet(usize),
    #[error("characteristic matrix has {found} columns, polytope has {expected} facets")]
    ColumnCount { expected: usize, found: usize },
    #[error("condition (★) fails at vertex {vertex} (determinant {det})")]
    StarFails { vertex: usize, det: i64 },
    #[error("bridge construction failed: {0}")]
    BridgeFailed(String),

    #[error("specialization is not generic: pairing with {label:?} vanishes")]
    NonGeneric { label: Vec<i64> },
    #[error("no generic specialization found after {0} draws")]
    NoGenericSpecialization(usize),
    #[error("order-0 genus series is not a Laurent polynomial")]
    NotLaurent,

    #[error("invalid input: {0}")]
    Schema(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            MalformedGraph(_)
            | MalformedPolytope(_)
            | ColumnCount { .. }
            | Schema(_)
            | ZeroGenerator
            | UnknownFixture(_) => ErrorKind::Schema,
            Internal(_) | Overflow | LoopCreated(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
