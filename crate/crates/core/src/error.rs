use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HullError {
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("coincident query point (matches configuration point {index})")]
    CoincidentQuery { index: usize },
    #[error("configuration points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("query not interior")]
    QueryNotInterior,
    #[error("collinear witness: point {0} lies on the segment line")]
    CollinearWitness(usize),
    #[error("no interior locus: gap {gap} >= 2pi/(n-1)")]
    NoInteriorLocus { gap: f64 },
    #[error("collinear input")]
    Collinear,
    #[error("non-coprime knot parameters p={p}, q={q}")]
    NotCoprime { p: u32, q: u32 },
    #[error("asymmetric input: point {0} has no conjugate partner")]
    Asymmetric(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("linear program failed: {0}")]
    Lp(#[from] crate::lp::LpError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T, E = HullError> = std::result::Result<T, E>;
