use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimensionality mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("cluster must contain at least one point")]
    EmptyCluster,

    #[error("lattice index {index:?} is out of bounds for counts {counts:?}")]
    InvalidIndex { index: Vec<usize>, counts: Vec<usize> },

    #[error(
        "grid too large: {detail}; reduce dimensionality (random projection), \
         lower the grid sampling rate, or raise eps"
    )]
    GridTooLarge { detail: String },

    #[error("no eps on the candidate ladder yields a single cluster without noise")]
    NoUniqueClusterEps,

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::param("eps", format!("must be a positive finite real, got {eps}")))
    }
}
