use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ordering violation: arrow {tail}->{head} must satisfy tail < head")]
    OrderingViolation { tail: usize, head: usize },

    #[error("vertex {vertex} out of range 1..={mu}")]
    VertexOutOfRange { vertex: usize, mu: usize },

    #[error("representations live over different quivers")]
    QuiverMismatch,

    #[error("(A1) violated: {count} arrows {tail}->{head}")]
    A1Violated {
        tail: usize,
        head: usize,
        count: usize,
    },

    #[error("(A2) violated at ({k},{i},{l})")]
    A2Violated { k: usize, i: usize, l: usize },

    #[error("zero extension class has no non-split middle term")]
    ZeroExtClass,

    #[error("could not split a summand of dimension vector {dims:?} with {end_dim}-dimensional endomorphism space")]
    NonBrick { dims: Vec<usize>, end_dim: usize },

    #[error("unsupported map shape: {0}")]
    UnsupportedMap(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("Hom^1 of dimension {dim} is outside the (E1) regime")]
    HomTooLarge { dim: usize },

    #[error("collection invariant violated: {0}")]
    Invariant(String),

    #[error("heart {0} is not a node of the graph")]
    UnknownHeart(String),

    #[error("invalid central charge: {0}")]
    InvalidCharge(String),

    #[error("{0} is not a shift of a simple of the heart")]
    Uncertified(String),

    #[error("non-generic rotation: phase {phase} of item {item} coincides with {r}")]
    NonGeneric { item: usize, phase: f64, r: f64 },

    #[error("heart rotation did not finish after {steps} tilts (trace: {trace})")]
    IterationBound { steps: usize, trace: String },
}

pub type Result<T> = std::result::Result<T, Error>;
