use thiserror::Error;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate lattice: presentation matrix is singular")]
    DegenerateLattice,
    #[error("invalid presentation ({a},{b},{c}): need a >= 1, c >= 1, 0 <= b < a")]
    InvalidPresentation { a: i64, b: i64, c: i64 },
    #[error("triangulation is not polyhedral")]
    NotPolyhedral,
    #[error("point not on base space: versal binomial {index} does not vanish")]
    NotOnBaseSpace { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone has lineality")]
    ConeHasLineality,
    #[error("ray certificate failed for column {column}: {reason}")]
    RayCertificate { column: usize, reason: String },
    #[error("search guard exceeded after {nodes} nodes")]
    GuardExceeded { nodes: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
