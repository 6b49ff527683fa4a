//! Extrinsic mean of a sample of noisy contours, each with its own position,
//! scale, rotation and starting point.

use extrinsic_shape::contour::{build_correspondence, canonicalize, evaluate, Contour, Correspondence};
use extrinsic_shape::rng::seeded;
use extrinsic_shape::shape_space::{chord_distance, extrinsic_mean, frechet_value, preshape, DEFAULT_GAP_TOL};
use extrinsic_shape::synthetic::{harmonic_contour, Harmonic};
use num_complex::Complex64;
use rand::Rng;

fn main() -> extrinsic_shape::Result<()> {
    let mut rng = seeded(7);
    let template = [Harmonic::new(2, 0.3, 0.0), Harmonic::new(3, 0.12, 0.8)];

    let mut curves = Vec::new();
    for _ in 0..20 {
        let h: Vec<Harmonic> = template
            .iter()
            .map(|h| Harmonic::new(h.order, h.amplitude + rng.random_range(-0.04..0.04), h.phase))
            .collect();
        let mut pts = harmonic_contour(&h, 240)?.into_points();
        pts.rotate_left(rng.random_range(0..240));
        let a = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
        let b = Complex64::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let raw = Contour::new(pts.iter().map(|p| a * p + b).collect())?;
        curves.push(canonicalize(&raw)?);
    }

    let times = build_correspondence(&curves, &Correspondence::Shared(300), &mut rng)?;
    let sample = curves
        .iter()
        .map(|c| preshape(&evaluate(c, &times)?))
        .collect::<extrinsic_shape::Result<Vec<_>>>()?;

    let (mean, eigen) = extrinsic_mean(&sample, DEFAULT_GAP_TOL)?;
    let truth = preshape(&evaluate(&canonicalize(&harmonic_contour(&template, 240)?)?, &times)?)?;
    println!("top eigenvalues: {:.5?}", &eigen.eigenvalues()[..3]);
    println!("relative eigen-gap: {:.4}", eigen.relative_gap());
    println!("Frechet value at the mean: {:.6}", frechet_value(&mean, &sample)?);
    println!("distance from mean to template: {:.4}", chord_distance(&mean, &truth)?);
    Ok(())
}
