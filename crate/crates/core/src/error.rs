use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("subdivision level {0} exceeds the resource guard (max {max})", max = crate::mesh::MAX_LEVEL)]
    LevelTooHigh(usize),

    #[error("invalid surface parameter: {0}")]
    InvalidSurface(String),

    #[error("mesh validation failed: {0}")]
    InvalidMesh(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("mesh quality insufficient for 1-form mass ({0} nonpositive star1 entries)")]
    NonPositiveMass(usize),

    #[error("cannot normalize zero form")]
    ZeroForm,

    #[error("point is not on the surface (defect {0:e})")]
    OffSurface(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("eigensolver did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence {
        iterations: usize,
        worst_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("{0}")]
    Unsupported(String),

    #[error("groups unresolved: {0}; refine mesh or loosen grouping")]
    Unresolved(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn at(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
