use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("a quiver needs at least one vertex")]
    NoVertices,

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("exchange matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("exchange matrix is not square")]
    NotSquare,

    #[error("invalid arrow [{tail}, {head}, {multiplicity}]: {reason}")]
    InvalidArrow {
        tail: usize,
        head: usize,
        multiplicity: String,
        reason: &'static str,
    },

    #[error("cross arrow {tail}->{head} does not go from the first block to the second")]
    CrossArrowDirection { tail: usize, head: usize },

    #[error("c-vector of vertex {vertex} is not sign-coherent (internal invariant violated)")]
    SignIncoherent { vertex: usize },

    #[error("state is not isomorphic to the coframed quiver by a frozen isomorphism")]
    NotCoframed,

    #[error("quiver has an oriented cycle")]
    CyclicQuiver,

    #[error("sequence is not a {mode} sequence for this quiver")]
    NotVerified { mode: &'static str },

    #[error("search was truncated at length {max_len}; result would be incomplete")]
    TruncatedSearch { max_len: usize },

    #[error("could not realize restricted c-vector {step}: {found} matching green vertices")]
    RealizationFailure { step: usize, found: usize },

    #[error("postcondition failed: {0}")]
    Postcondition(&'static str),

    #[error("series have different rank, order or skew form")]
    TemplateMismatch,

    #[error("series with zero constant term is not invertible")]
    ZeroConstantTerm,

    #[error("exponent vector must be nonzero")]
    ZeroVector,

    #[error("exponent vector has length {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("integer does not fit the required machine width")]
    Overflow,

    #[error("rank {n} is outside the supported range {min}..={max}")]
    RankOutOfRange { n: usize, min: usize, max: usize },

    #[error("interval [{a}, {b}] is invalid for rank {n}")]
    InvalidInterval { a: usize, b: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
