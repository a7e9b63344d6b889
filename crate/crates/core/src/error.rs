use thiserror::Error;

/// Which diagonal block of a two-mode matrix an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    A,
    B,
}

impl std::fmt::Display for Block {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Block::A => f.write_str("A"),
            Block::B => f.write_str("B"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("element count {found} does not match {rows}x{cols}")]
    ElementCount {
        rows: usize,
        cols: usize,
        found: usize,
    },

    #[error("matrix contains a non-finite element at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is not symmetric: max |M - M^T| = {deviation:e} exceeds {threshold:e}")]
    NotSymmetric { deviation: f64, threshold: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("block {block} is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    BlockNotPositiveDefinite { block: Block, min_eigenvalue: f64 },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("eigenvalue pairing failed: {0}")]
    Pairing(String),

    #[error("antisymmetric input is singular (smallest |eigenvalue| {min_abs_eigenvalue:e})")]
    SingularInput { min_abs_eigenvalue: f64 },

    #[error(
        "antisymmetric input has negative Pfaffian; no proper rotation reaches positive blocks"
    )]
    NegativeOrientation,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
