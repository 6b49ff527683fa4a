use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the shape-analysis pipeline.
#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("degenerate contour: {0}")]
    DegenerateContour(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty sample")]
    EmptySample,

    /// The top eigenvalue of the mean embedded matrix is not simple, so the
    /// extrinsic mean is not well defined.
    #[error("focal sample: relative eigen-gap {relative_gap:.3e} below tolerance {tolerance:.1e}")]
    Focal { relative_gap: f64, tolerance: f64 },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error(
        "degenerate variance: s_n is zero (the hypothesized shape coincides with the sample mean, \
         or the data are concentrated on a single shape)"
    )]
    DegenerateVariance,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("mask has {0} components, expected exactly one")]
    MultipleComponents(usize),

    #[error("entry '{id}': {source}")]
    Entry {
        id: String,
        #[source]
        source: Box<ShapeError>,
    },

    #[error("bootstrap resample {index} stayed focal after {retries} retries")]
    ResampleFailed { index: usize, retries: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ShapeError>;
