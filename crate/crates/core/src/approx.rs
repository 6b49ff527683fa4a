//! How well random k-gons approximate a contour, as a function of `k`.
//!
//! For each `k` the study draws `repeats` independent sets of stopping times and
//! records the relative length error `(L_K - L_k) / L_K` and the squared chord
//! distance between the shape of the k-gon and the shape of the full contour,
//! both evaluated at the contour's own `K` vertex fractions.

use rand::Rng;

use crate::contour::{
    evaluate, relative_length_error, select_stopping_times, Contour, ParamCurve,
};
use crate::error::Result;
use crate::shape_space::{preshape, squared_chord, Preshape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single observation.
    pub sd: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Self { mean, sd }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRow {
    pub k: usize,
    pub repeats: usize,
    pub length_error: Summary,
    pub shape_distance: Summary,
}

/// Squared chord distance between the shape of `kgon` and the shape of
/// `curve`, after evaluating the k-gon at the curve's vertex fractions.
pub fn kgon_shape_distance(curve: &ParamCurve, full: &Preshape, kgon: &Contour) -> Result<f64> {
    let dense = evaluate(&ParamCurve::in_order(kgon), &curve.vertex_times())?;
    squared_chord(&preshape(&dense)?, full)
}

/// One k-gon draw: `(relative length error, squared shape distance)`.
/// `k >= K` uses every vertex and is exact.
pub fn approximation_errors<R: Rng + ?Sized>(
    curve: &ParamCurve,
    full: &Preshape,
    k: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if k >= curve.len() {
        return Ok((0.0, 0.0));
    }
    let kgon = evaluate(curve, &select_stopping_times(k, rng)?)?;
    Ok((
        relative_length_error(curve.total_length(), &kgon)?,
        kgon_shape_distance(curve, full, &kgon)?,
    ))
}

pub fn approximation_study<R: Rng + ?Sized>(
    curve: &ParamCurve,
    k_grid: &[usize],
    repeats: usize,
    rng: &mut R,
) -> Result<Vec<ApproxRow>> {
    if repeats == 0 {
        return Err(crate::ShapeError::InvalidArgument("repeats must be positive".into()));
    }
    let full = preshape(&curve.to_contour())?;
    k_grid
        .iter()
        .map(|&k| {
            let mut lengths = Vec::with_capacity(repeats);
            let mut shapes = Vec::with_capacity(repeats);
            for _ in 0..repeats {
                let (l, d) = approximation_errors(curve, &full, k, rng)?;
                lengths.push(l);
                shapes.push(d);
            }
            Ok(ApproxRow {
                k,
                repeats,
                length_error: Summary::of(&lengths),
                shape_distance: Summary::of(&shapes),
            })
        })
        .collect()
}
