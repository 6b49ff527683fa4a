//! Extrinsic shape analysis of planar contours: random k-gon approximation,
//! Veronese-Whitney extrinsic means, a neighborhood hypothesis test for the
//! mean shape, and bootstrap confidence regions.

pub mod approx;
pub mod bootstrap;
pub mod cli;
pub mod contour;
pub mod error;
pub mod ingest;
pub mod inference;
pub mod rng;
pub mod shape_space;
pub mod synthetic;

pub use error::{Result, ShapeError};
