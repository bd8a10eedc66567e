use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("truncation at {threshold} leaves a degenerate law (variance {variance:.3e})")]
    DegenerateTruncation { threshold: f64, variance: f64 },

    #[error("absolute moment of order {order} diverges for {family}")]
    DivergentMoment { order: u32, family: String },

    #[error("matrix is not symmetric (relative asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("QL iteration exceeded {0} sweeps without deflation")]
    NoConvergence(usize),

    #[error("eigenvalue {value:.6e} below PSD tolerance -{tol:.3e}")]
    NotPositiveSemidefinite { value: f64, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("i/o error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
