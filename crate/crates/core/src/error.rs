use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric: entry ({row},{col}) violates M^T = -M")]
    NotSkew { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error("Euler form <{alpha:?},{beta:?}> = {value} is nonzero, Hom(d^V, W) is not square")]
    EulerNonzero {
        alpha: Vec<usize>,
        beta: Vec<usize>,
        value: i64,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
