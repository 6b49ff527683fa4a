use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::contour::Contour;
use crate::error::{Result, ShapeError};

/// Parses `x,y` lines. Blank lines are skipped; an explicit closing point equal
/// to the first is dropped.
pub fn parse_contour_csv(text: &str, path: &Path) -> Result<Contour> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| ShapeError::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        let mut fields = line.split(',');
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected 'x,y', got '{line}'")));
        };
        let x: f64 = x
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid x coordinate '{}'", x.trim())))?;
        let y: f64 = y
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid y coordinate '{}'", y.trim())))?;
        if !x.is_finite() || !y.is_finite() {
            return Err(parse_err("non-finite coordinate".into()));
        }
        points.push(Complex64::new(x, y));
    }
    Contour::from_raw(points)
}

pub fn read_contour_csv(path: &Path) -> Result<Contour> {
    parse_contour_csv(&fs::read_to_string(path)?, path)
}

/// One `x,y` line per point, 17 significant digits, `.` as decimal separator.
pub fn format_contour_csv(points: &[Complex64]) -> String {
    let mut out = String::with_capacity(points.len() * 48);
    for p in points {
        let _ = writeln!(out, "{:.16e},{:.16e}", p.re, p.im);
    }
    out
}

pub fn write_contour(contour: &Contour, path: &Path) -> Result<()> {
    write_points(contour.points(), path)
}

pub(crate) fn write_points(points: &[Complex64], path: &Path) -> Result<()> {
    if points.is_empty() {
        return Err(ShapeError::InvalidArgument("refusing to write an empty contour".into()));
    }
    fs::write(path, format_contour_csv(points))?;
    Ok(())
}
