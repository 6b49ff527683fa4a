//! Nonpivotal nonparametric bootstrap confidence regions for the extrinsic
//! mean shape.
//!
//! Each resample draws `n` observations with replacement and recomputes the
//! extrinsic mean. The region is the chord-distance ball around the sample
//! mean whose radius is the empirical `(1-α)`-quantile of the resampled
//! means' distances to it.

use log::{error, warn};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Result, ShapeError};
use crate::rng::substream;
use crate::shape_space::{chord_distance, extrinsic_mean_shape, Preshape, DEFAULT_GAP_TOL};

pub const DEFAULT_RESAMPLES: usize = 400;
pub const DEFAULT_ALPHA: f64 = 0.05;
pub const MIN_RESAMPLES: usize = 50;
/// Focal resamples are redrawn on fresh substreams at most this many times.
pub const MAX_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub resamples: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl BootstrapConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            resamples: DEFAULT_RESAMPLES,
            alpha: DEFAULT_ALPHA,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapRegion {
    pub sample_mean: Preshape,
    pub boot_means: Vec<Preshape>,
    /// Chord distance from each resampled mean to the sample mean.
    pub distances: Vec<f64>,
    pub radius: f64,
    pub alpha: f64,
    /// `distances[b] <= radius`.
    pub included: Vec<bool>,
}

impl BootstrapRegion {
    pub fn contains(&self, shape: &Preshape) -> Result<bool> {
        Ok(chord_distance(shape, &self.sample_mean)? <= self.radius)
    }

    /// Included resampled means, rotated onto the sample mean for overlay plots.
    pub fn aligned_included(&self) -> Vec<Preshape> {
        self.boot_means
            .iter()
            .zip(&self.included)
            .filter(|(_, &inc)| inc)
            .map(|(m, _)| align_rotation(m, &self.sample_mean))
            .collect()
    }
}

/// Extrinsic mean of one resample drawn with replacement.
pub fn resample_mean<R: Rng + ?Sized>(sample: &[Preshape], rng: &mut R) -> Result<Preshape> {
    if sample.is_empty() {
        return Err(ShapeError::EmptySample);
    }
    let n = sample.len();
    let resampled: Vec<Preshape> = (0..n)
        .map(|_| sample[rng.random_range(0..n)].clone())
        .collect();
    extrinsic_mean_shape(&resampled, DEFAULT_GAP_TOL)
}

/// 1-based rank of the order statistic used as the radius: `ceil((1-α)B)`.
pub fn quantile_rank(resamples: usize, alpha: f64) -> usize {
    // The small offset absorbs representation error in products like 0.95 * 400.
    let rank = ((1.0 - alpha) * resamples as f64 - 1e-9).ceil() as usize;
    rank.clamp(1, resamples)
}

fn stream_id(index: usize, attempt: usize) -> u64 {
    ((attempt as u64) << 32) | index as u64
}

fn resample_with_retries(sample: &[Preshape], seed: u64, index: usize) -> Result<Preshape> {
    for attempt in 0..=MAX_RETRIES {
        let mut rng = substream(seed, stream_id(index, attempt));
        match resample_mean(sample, &mut rng) {
            Ok(m) => return Ok(m),
            Err(ShapeError::Focal { .. }) => {
                warn!("bootstrap resample {index}: focal on attempt {attempt}, redrawing");
            }
            Err(e) => return Err(e),
        }
    }
    error!("bootstrap resample {index}: still focal after {MAX_RETRIES} retries");
    Err(ShapeError::ResampleFailed {
        index,
        retries: MAX_RETRIES,
    })
}

/// Builds the bootstrap region. Resamples run in parallel on the current rayon
/// pool; resample `b` always uses substream `b` of `config.seed`, so the output
/// does not depend on the thread count.
pub fn bootstrap_region(sample: &[Preshape], config: &BootstrapConfig) -> Result<BootstrapRegion> {
    if sample.len() < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "bootstrap needs n >= 2, got {}",
            sample.len()
        )));
    }
    if config.resamples < MIN_RESAMPLES {
        return Err(ShapeError::InvalidArgument(format!(
            "need at least {MIN_RESAMPLES} resamples, got {}",
            config.resamples
        )));
    }
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        return Err(ShapeError::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {}",
            config.alpha
        )));
    }
    let sample_mean = extrinsic_mean_shape(sample, DEFAULT_GAP_TOL)?;
    let boot_means = (0..config.resamples)
        .into_par_iter()
        .map(|b| resample_with_retries(sample, config.seed, b))
        .collect::<Result<Vec<_>>>()?;
    let distances = boot_means
        .iter()
        .map(|m| chord_distance(m, &sample_mean))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = distances.clone();
    sorted.sort_by(f64::total_cmp);
    let radius = sorted[quantile_rank(config.resamples, config.alpha) - 1];
    let included = distances.iter().map(|&d| d <= radius).collect();
    Ok(BootstrapRegion {
        sample_mean,
        boot_means,
        distances,
        radius,
        alpha: config.alpha,
        included,
    })
}

/// Multiplies `shape` by the unit scalar that makes `⟨reference, aligned⟩`
/// real and nonnegative, which minimizes the Euclidean distance between the
/// two representatives. Returns `shape` unchanged when the inner product is zero.
pub fn align_rotation(shape: &Preshape, reference: &Preshape) -> Preshape {
    let z: Complex64 = shape.inner(reference);
    if z.norm() == 0.0 || (z.im == 0.0 && z.re > 0.0) {
        return shape.clone();
    }
    shape.rotated(z)
}
