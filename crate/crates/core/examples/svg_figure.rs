//! Overlay of a small sample of shapes rotated onto their extrinsic mean.

use extrinsic_shape::bootstrap::align_rotation;
use extrinsic_shape::cli::svg::{svg_render, SvgStyle};
use extrinsic_shape::rng::seeded;
use extrinsic_shape::shape_space::{extrinsic_mean_shape, preshape, DEFAULT_GAP_TOL};
use extrinsic_shape::synthetic::{random_blob, IsotropicModel};
use num_complex::Complex64;

fn main() -> extrinsic_shape::Result<()> {
    let mut rng = seeded(3);
    let base = preshape(&random_blob(&mut rng, 80)?)?;
    let sample = IsotropicModel::new(base, 0.004).sample(8, &mut rng);
    let mean = extrinsic_mean_shape(&sample, DEFAULT_GAP_TOL)?;

    let aligned: Vec<_> = sample.iter().map(|p| align_rotation(p, &mean)).collect();
    let mut shapes: Vec<(&[Complex64], SvgStyle)> =
        aligned.iter().map(|p| (p.coords(), SvgStyle::new("#444444", 1.0, 0.5))).collect();
    shapes.push((mean.coords(), SvgStyle::mean()));
    print!("{}", svg_render(&shapes)?);
    Ok(())
}
