//! Rasterize a disc into a binary mask, write it as PGM, read it back and
//! trace its boundary.

use extrinsic_shape::contour::canonicalize;
use extrinsic_shape::ingest::{read_contour, write_pgm, BinaryMask, ContourFormat};

fn main() -> extrinsic_shape::Result<()> {
    let mask = BinaryMask::from_fn(48, 32, |r, c| {
        let (x, y) = (c as f64 - 24.0, r as f64 - 16.0);
        (x / 18.0).powi(2) + (y / 11.0).powi(2) <= 1.0
    });
    let path = std::env::temp_dir().join("ellipse_mask.pgm");
    write_pgm(&mask, &path)?;

    let contour = read_contour(&path, ContourFormat::Mask)?;
    let curve = canonicalize(&contour)?;
    println!("{} foreground components", mask.count_components());
    println!("{} boundary pixels, counterclockwise", contour.len());
    println!("pixel perimeter {:.2}, enclosed area {:.1}", curve.total_length(), contour.signed_area());
    println!("canonical start {}", curve.vertices()[0]);
    Ok(())
}
