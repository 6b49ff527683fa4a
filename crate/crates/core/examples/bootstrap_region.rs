//! Bootstrap confidence region for a mean shape, drawn as an SVG overlay:
//! included resampled means in blue, the sample mean in red.

use extrinsic_shape::bootstrap::{bootstrap_region, BootstrapConfig};
use extrinsic_shape::cli::svg::{write_svg, SvgStyle};
use extrinsic_shape::rng::seeded;
use extrinsic_shape::shape_space::{chord_distance, preshape};
use extrinsic_shape::synthetic::{reference_contour, IsotropicModel};
use num_complex::Complex64;

fn main() -> extrinsic_shape::Result<()> {
    let mut rng = seeded(5);
    let base = preshape(&reference_contour(60)?)?;
    let model = IsotropicModel::new(base.clone(), 0.03);
    let sample = model.sample(30, &mut rng);

    let region = bootstrap_region(&sample, &BootstrapConfig::new(99))?;
    println!("radius (95%): {:.5}", region.radius);
    println!("true shape inside: {}", region.contains(&base)?);
    println!("distance of sample mean to truth: {:.5}", chord_distance(&region.sample_mean, &base)?);

    let aligned = region.aligned_included();
    let mut shapes: Vec<(&[Complex64], SvgStyle)> =
        aligned.iter().map(|m| (m.coords(), SvgStyle::region())).collect();
    shapes.push((region.sample_mean.coords(), SvgStyle::mean()));
    let path = std::env::temp_dir().join("bootstrap_region.svg");
    write_svg(&shapes, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
