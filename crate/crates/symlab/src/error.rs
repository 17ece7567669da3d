//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("grid resolution {got} below minimum {min}")]
    ResolutionTooLow { got: usize, min: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("exact sign enumeration is limited to dimension {max}, got {got}; use the sampled variant")]
    SignBudget { got: usize, max: usize },

    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("support function is non-positive at a grid node; recenter the body (its Steiner point works) so the origin is interior")]
    OriginOutside,

    #[error("volume normalization violated: deviation {0:.3e} from the unit-ball volume")]
    NormalizationViolated(f64),

    #[error("discretization budget exceeded: {0}")]
    DiscretizationBudget(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for configuration problems,
    /// 3 for numerical/runtime aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) | Error::ResolutionTooLow { .. } => 2,
            _ => 3,
        }
    }
}
