//! Minimal deterministic SVG output for overlays of closed shapes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Result, ShapeError};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub stroke: String,
    /// Screen pixels, independent of the viewBox scale.
    pub width: f64,
    pub opacity: f64,
}

impl SvgStyle {
    pub fn new(stroke: &str, width: f64, opacity: f64) -> Self {
        Self {
            stroke: stroke.to_string(),
            width,
            opacity,
        }
    }

    pub fn mean() -> Self {
        Self::new("red", 2.0, 1.0)
    }

    pub fn region() -> Self {
        Self::new("blue", 0.5, 0.3)
    }

    pub fn sample() -> Self {
        Self::new("gray", 0.75, 0.6)
    }
}

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 0.05;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0".to_string()
    } else {
        s
    }
}

/// Renders each shape as one closed path, in order, so later shapes are drawn
/// on top. The plane's y axis points up in the picture.
pub fn svg_render(shapes: &[(&[Complex64], SvgStyle)]) -> Result<String> {
    if shapes.is_empty() || shapes.iter().any(|(pts, _)| pts.is_empty()) {
        return Err(ShapeError::InvalidArgument("nothing to draw".into()));
    }
    let all = shapes.iter().flat_map(|(pts, _)| pts.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = MARGIN * span;
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let scale = CANVAS / vw.max(vh);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
        (vw * scale).round(),
        (vh * scale).round(),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    for (pts, style) in shapes {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(p.re), num(-p.im));
        }
        d.push('Z');
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{}" stroke-width="{}" stroke-opacity="{}" vector-effect="non-scaling-stroke"/>"#,
            style.stroke,
            num(style.width),
            num(style.opacity)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_svg(shapes: &[(&[Complex64], SvgStyle)], path: &Path) -> Result<()> {
    fs::write(path, svg_render(shapes)?)?;
    Ok(())
}
