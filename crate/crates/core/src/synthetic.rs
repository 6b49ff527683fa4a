//! Synthetic contours and shape distributions for examples, tests and
//! calibration studies.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::contour::Contour;
use crate::error::Result;
use crate::rng::substream;
use crate::shape_space::{eigensystem, Preshape, VWMatrix};

/// One term `amplitude * cos(order * θ + phase)` of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub order: u32,
    pub amplitude: f64,
    pub phase: f64,
}

impl Harmonic {
    pub fn new(order: u32, amplitude: f64, phase: f64) -> Self {
        Self {
            order,
            amplitude,
            phase,
        }
    }
}

/// Star-shaped contour `r(θ) = 1 + Σ harmonics`, sampled at `points`
/// equally spaced angles, counterclockwise. Amplitudes must keep `r > 0`.
pub fn harmonic_contour(harmonics: &[Harmonic], points: usize) -> Result<Contour> {
    let pts = (0..points)
        .map(|j| {
            let t = TAU * j as f64 / points as f64;
            let r = 1.0
                + harmonics
                    .iter()
                    .map(|h| h.amplitude * (h.order as f64 * t + h.phase).cos())
                    .sum::<f64>();
            Complex64::from_polar(r, t)
        })
        .collect();
    Contour::new(pts)
}

/// A fixed smooth test contour: an asymmetric, slightly lobed oval.
pub fn reference_contour(points: usize) -> Result<Contour> {
    harmonic_contour(
        &[
            Harmonic::new(1, 0.08, 0.3),
            Harmonic::new(2, 0.25, 0.0),
            Harmonic::new(3, 0.10, 1.1),
            Harmonic::new(5, 0.04, 2.0),
        ],
        points,
    )
}

/// Random smooth blob with low-order harmonics of total amplitude below 0.45.
pub fn random_blob<R: Rng + ?Sized>(rng: &mut R, points: usize) -> Result<Contour> {
    let harmonics: Vec<Harmonic> = (2..=5)
        .map(|order| {
            Harmonic::new(
                order,
                rng.random_range(0.0..0.45 / 4.0),
                rng.random_range(0.0..TAU),
            )
        })
        .collect();
    harmonic_contour(&harmonics, points)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Preshape of a configuration with i.i.d. standard complex normal points.
pub fn random_preshape<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Preshape {
    loop {
        let pts: Vec<Complex64> = (0..k).map(|_| complex_normal(rng)).collect();
        if let Ok(p) = Preshape::from_points(&pts) {
            return p;
        }
    }
}

/// Isotropic perturbation model around a base shape.
///
/// A draw is the preshape of `base + σ ε` with `ε` i.i.d. circular complex
/// normal, multiplied by a uniformly random unit scalar. The model is invariant
/// under unitaries fixing the base, so its VW extrinsic mean is the base shape.
#[derive(Debug, Clone)]
pub struct IsotropicModel {
    base: Preshape,
    sigma: f64,
}

impl IsotropicModel {
    pub fn new(base: Preshape, sigma: f64) -> Self {
        Self { base, sigma }
    }

    pub fn base(&self) -> &Preshape {
        &self.base
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Preshape {
        loop {
            let pts: Vec<Complex64> = self
                .base
                .coords()
                .iter()
                .map(|z| z + complex_normal(rng) * self.sigma)
                .collect();
            if let Ok(p) = Preshape::from_points(&pts) {
                let phase = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
                return p.rotated(phase);
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Preshape> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

/// Monte Carlo estimate of a model's extrinsic mean from `draws` draws.
///
/// Draws are split into fixed chunks, each on its own substream of `seed`, and
/// the chunk sums are added in chunk order, so the result does not depend on
/// the number of threads.
pub fn population_mean(model: &IsotropicModel, draws: usize, seed: u64) -> Result<Preshape> {
    const CHUNK: usize = 10_000;
    let k = model.base.k();
    let chunks = draws.div_ceil(CHUNK);
    let partial: Vec<DMatrix<Complex64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c as u64);
            let count = CHUNK.min(draws - c * CHUNK);
            let mut acc = DMatrix::<Complex64>::zeros(k, k);
            for _ in 0..count {
                let g = model.draw(&mut rng);
                let v = nalgebra::DVector::from_column_slice(g.coords());
                acc += &v * v.adjoint();
            }
            acc
        })
        .collect();
    let mut total = DMatrix::<Complex64>::zeros(k, k);
    for p in partial {
        total += p;
    }
    total /= Complex64::new(draws as f64, 0.0);
    let eigen = eigensystem(&VWMatrix::from_matrix(total)?)?;
    Preshape::from_points(&eigen.eigenvector(0))
}
