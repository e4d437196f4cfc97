//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating inputs or computing
/// invariants. Metric-axiom failures carry witness indices so a caller can
/// point at the offending entries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("{labels} labels supplied for {n} points")]
    LabelMismatch { labels: usize, n: usize },
    #[error("entry ({i},{j}) is not finite")]
    NotFinite { i: usize, j: usize },
    #[error("asymmetric distances at ({i},{j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },
    #[error("nonzero diagonal entry at {i}: {value}")]
    NonzeroDiagonal { i: usize, value: f64 },
    #[error("nonpositive off-diagonal distance at ({i},{j}): {value}")]
    NonpositiveOffDiagonal { i: usize, j: usize, value: f64 },
    #[error("triangle inequality violated: d({i},{j}) = {lhs} > d({i},{k}) + d({k},{j}) = {rhs}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        lhs: f64,
        rhs: f64,
    },
    #[error("scale parameter must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("spacing must be positive, got {0}")]
    NonpositiveSpacing(f64),
    #[error("points {i} and {j} coincide")]
    DuplicatePoints { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("similarity entry ({i},{j}) = {value} outside [0,1]")]
    InvalidSimilarity { i: usize, j: usize, value: f64 },
    #[error("order parameter must be nonnegative, got {0}")]
    NegativeAlpha(f64),
    #[error("probability mass sums to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("negative probability at {i}: {value}")]
    NegativeProbability { i: usize, value: f64 },
    #[error("similarity system is singular (residual {residual:e})")]
    Singular { residual: f64 },
    #[error("space has {n} points, exceeding the enumeration cap {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no subset admits a strictly positive weighting")]
    NoPositiveSubset,
    #[error("conditional gradient stalled: gap {gap:e} after {iterations} iterations")]
    NonConvergence { gap: f64, iterations: usize },
    #[error("empty set")]
    EmptySet,
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("mixture parameter must lie in [0,1], got {0}")]
    LambdaOutOfRange(f64),
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid fractional partition: {0}")]
    InvalidPartition(String),
    #[error("subset carries zero mixture mass")]
    ZeroMassSubset,
    #[error("scale grid must be nonempty, strictly increasing, and positive")]
    BadGrid,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for errors that mean "the input is not a metric space".
    pub fn is_invalid_metric(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::LabelMismatch { .. }
                | Error::NotFinite { .. }
                | Error::Asymmetric { .. }
                | Error::NonzeroDiagonal { .. }
                | Error::NonpositiveOffDiagonal { .. }
                | Error::TriangleViolation { .. }
                | Error::DuplicatePoints { .. }
                | Error::DimensionMismatch { .. }
        )
    }
}
