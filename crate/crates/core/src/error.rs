use thiserror::Error;

/// Errors produced by the exact-arithmetic and lattice layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector has no primitive form")]
    ZeroVector,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid matrix shape: {0}")]
    Shape(String),

    #[error("unsupported Eisenstein weight {0}: only 4 and 6 are generators here")]
    UnsupportedWeight(u32),

    #[error("rank must be divisible by 8, got {0}")]
    RankNotMultipleOf8(u32),

    #[error("precision {given} too small: need at least {needed} coefficients")]
    PrecisionTooSmall { given: usize, needed: usize },

    #[error("norm {0} is odd: an even lattice has no odd-norm vectors")]
    OddShellNorm(u64),

    #[error("zonal restriction needs an even degree, got {0}")]
    OddZonalDegree(usize),

    #[error("Gegenbauer parameter must be positive (dimension at least 3)")]
    NonPositiveLambda,

    #[error("zonal polynomial needs positive shell and axis norms")]
    NonPositiveZonalNorm,

    #[error("minimal norm {0} out of range: the index set needs an even value >= 4")]
    MinNormTooSmall(u32),

    #[error("Gram file parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("Gram matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Gram matrix is not positive definite (leading principal minor {0} is not positive)")]
    NotPositiveDefinite(usize),

    #[error("probe vector must be nonzero")]
    ZeroProbe,

    #[error("value out of the engine's integer range: {0}")]
    Overflow(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
