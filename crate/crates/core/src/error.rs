use alloc::string::String;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree must be at least 2")]
    DegreeTooSmall,
    #[error("polynomial is reducible (factor {0})")]
    Reducible(String),
    #[error("polynomial has no root in (1, 2)")]
    NoRootInRange,
    #[error("polynomial has {0} roots in (1, 2)")]
    MultipleRootsInRange(usize),
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u32),
    #[error("vertex budget {budget} exceeded at depth {depth} with {vertices} vertices")]
    VertexBudget {
        budget: usize,
        depth: usize,
        vertices: usize,
    },
    #[error("value-class budget {budget} exceeded at length {length}")]
    ClassBudget { budget: usize, length: usize },
    #[error("graph depth {depth} is insufficient for word length {n}")]
    DepthInsufficient { depth: usize, n: usize },
    #[error("bias must lie strictly between 0 and 1")]
    InvalidBias,
    #[error("Perron root not converged: bracket [{lo}, {hi}]")]
    SpectralNotConverged { lo: f64, hi: f64 },
    #[error("merged words carry different matrix products")]
    ProductMismatch,
    #[error("word length {0} is too large for brute-force enumeration")]
    TooLarge(usize),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = core::result::Result<T, Error>;
