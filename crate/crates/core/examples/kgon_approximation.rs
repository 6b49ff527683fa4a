//! How many random stopping times does a contour need? Prints the mean and
//! standard deviation of the relative length error and of the squared shape
//! distance for a range of k.

use extrinsic_shape::approx::approximation_study;
use extrinsic_shape::contour::canonicalize;
use extrinsic_shape::rng::seeded;
use extrinsic_shape::synthetic::reference_contour;

fn main() -> extrinsic_shape::Result<()> {
    let curve = canonicalize(&reference_contour(764)?)?;
    let ks = [10, 25, 50, 100, 200, 300, 500, 764];
    let rows = approximation_study(&curve, &ks, 50, &mut seeded(2024))?;

    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "k", "rel err", "sd", "sq dist", "sd");
    for r in &rows {
        println!(
            "{:>5} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
            r.k, r.length_error.mean, r.length_error.sd, r.shape_distance.mean, r.shape_distance.sd
        );
    }
    let enough = rows.iter().find(|r| r.length_error.mean < 0.001).map(|r| r.k);
    println!("smallest k with mean relative error below 0.1%: {enough:?}");
    Ok(())
}
