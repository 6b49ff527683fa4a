//! Planar contours, arclength parameterization and randomized k-gon approximation.
//!
//! A contour is stored as a closed polygon of complex numbers. [`canonicalize`]
//! turns it into a [`ParamCurve`]: counterclockwise, starting at the vertex
//! farthest from the arclength center of mass, with cumulative arclengths. Random
//! [`StoppingTimes`] in `[0, 1)` are then mapped onto each curve with
//! [`evaluate`], which is how points correspond across a sample.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Result, ShapeError};

/// Relative tolerance (w.r.t. the diameter) under which raw points are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Relative tolerance (w.r.t. the diameter) for ties in the farthest-point search.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A closed planar polygon. The last point connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Complex64>,
}

impl Contour {
    /// Builds a contour from points that already satisfy the invariants: at
    /// least three distinct points and no two cyclically consecutive points equal.
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(ShapeError::DegenerateContour("non-finite coordinate".into()));
        }
        let m = points.len();
        if m < 3 {
            return Err(ShapeError::DegenerateContour(format!(
                "{m} points, need at least 3"
            )));
        }
        for i in 0..m {
            if points[i] == points[(i + 1) % m] {
                return Err(ShapeError::DegenerateContour(format!(
                    "consecutive points {i} and {} coincide",
                    (i + 1) % m
                )));
            }
        }
        if count_distinct(&points) < 3 {
            return Err(ShapeError::DegenerateContour(
                "fewer than 3 distinct points".into(),
            ));
        }
        Ok(Self { points })
    }

    /// Builds a contour from raw input: consecutive points closer than
    /// `MERGE_TOLERANCE * diameter` are merged and an explicit closing point
    /// (a repeat of the first) is dropped.
    pub fn from_raw(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(ShapeError::DegenerateContour("no points".into()));
        }
        let tol = MERGE_TOLERANCE * bbox_diagonal(&points);
        let mut merged: Vec<Complex64> = Vec::with_capacity(points.len());
        for p in points {
            match merged.last() {
                Some(&q) if (p - q).norm() <= tol => {}
                _ => merged.push(p),
            }
        }
        while merged.len() > 1 && (merged[merged.len() - 1] - merged[0]).norm() <= tol {
            merged.pop();
        }
        Self::new(merged)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Complex64> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Shoelace area, positive for counterclockwise traversal.
    pub fn signed_area(&self) -> f64 {
        signed_area(&self.points)
    }

    /// Perimeter including the closing edge.
    pub fn perimeter(&self) -> f64 {
        edges(&self.points).map(|(a, b)| (b - a).norm()).sum()
    }

    /// Arclength-weighted center of mass of the polygon.
    pub fn center_of_mass(&self) -> Complex64 {
        arclength_center(&self.points)
    }

    /// Bounding-box diagonal, used as the scale for relative tolerances.
    pub fn diameter(&self) -> f64 {
        bbox_diagonal(&self.points)
    }

    /// O(m²) test that no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let p = &self.points;
        let m = p.len();
        for i in 0..m {
            let (a, b) = (p[i], p[(i + 1) % m]);
            for j in (i + 1)..m {
                let adjacent = j == i + 1 || (i == 0 && j == m - 1);
                let (c, d) = (p[j], p[(j + 1) % m]);
                if adjacent {
                    // Adjacent edges share one endpoint; they only conflict when
                    // they fold back onto each other.
                    let shared = if j == i + 1 { b } else { a };
                    let (u, v) = if j == i + 1 { (a, d) } else { (b, c) };
                    let (du, dv) = (u - shared, v - shared);
                    if cross(du, dv) == 0.0 && dot(du, dv) > 0.0 {
                        return false;
                    }
                } else if segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }
}

/// A contour parameterized by arclength: counterclockwise, vertex 0 is the
/// canonical start point, `cum_lengths[i]` is the arclength at vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCurve {
    vertices: Vec<Complex64>,
    cum_lengths: Vec<f64>,
    total_length: f64,
}

impl ParamCurve {
    fn from_ordered(vertices: Vec<Complex64>) -> Self {
        let mut cum_lengths = Vec::with_capacity(vertices.len());
        let mut acc = 0.0;
        cum_lengths.push(0.0);
        for w in vertices.windows(2) {
            acc += (w[1] - w[0]).norm();
            cum_lengths.push(acc);
        }
        let closing = (vertices[0] - vertices[vertices.len() - 1]).norm();
        Self {
            vertices,
            cum_lengths,
            total_length: acc + closing,
        }
    }

    /// Arclength parameterization through the contour's points in their given
    /// order, starting at point 0. Used for k-gons, which are already ordered.
    pub fn in_order(contour: &Contour) -> Self {
        Self::from_ordered(contour.points.clone())
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn cum_lengths(&self) -> &[f64] {
        &self.cum_lengths
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Arclength fractions of the vertices; evaluating at these returns the vertices.
    pub fn vertex_times(&self) -> StoppingTimes {
        StoppingTimes {
            times: self
                .cum_lengths
                .iter()
                .map(|c| c / self.total_length)
                .collect(),
        }
    }

    pub fn to_contour(&self) -> Contour {
        Contour {
            points: self.vertices.clone(),
        }
    }
}

/// Sorted arclength fractions `0 = s_1 < s_2 < ... < s_k < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StoppingTimes {
    times: Vec<f64>,
}

impl StoppingTimes {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.first() != Some(&0.0) {
            return Err(ShapeError::InvalidArgument(
                "stopping times must start at exactly 0".into(),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ShapeError::InvalidArgument(
                "stopping times must be strictly increasing".into(),
            ));
        }
        if times.iter().any(|&t| !(0.0..1.0).contains(&t)) {
            return Err(ShapeError::InvalidArgument(
                "stopping times must lie in [0, 1)".into(),
            ));
        }
        Ok(Self { times })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn k(&self) -> usize {
        self.times.len()
    }

    /// Sorted, deduplicated union of several sets of times.
    pub fn union<'a, I>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a StoppingTimes>,
    {
        let mut all: Vec<f64> = sets.into_iter().flat_map(|s| s.times.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        Self::new(all)
    }
}

/// How stopping times are shared across a sample of curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correspondence {
    /// One draw of `k` times used for every curve.
    Shared(usize),
    /// Curve `i` draws `counts[i]` times of its own; every curve is then
    /// evaluated at the union.
    Union(Vec<usize>),
}

/// Arclength-weighted center of mass: edge midpoints weighted by edge length.
pub fn center_of_mass(curve: &ParamCurve) -> Result<Complex64> {
    if curve.total_length <= 0.0 {
        return Err(ShapeError::DegenerateContour("zero total length".into()));
    }
    Ok(arclength_center(&curve.vertices))
}

/// Orients the contour counterclockwise and rotates its indices so that the
/// point farthest from the center of mass comes first.
///
/// Ties (within `TIE_TOLERANCE * diameter` of the maximum distance) go to the
/// candidate with the smallest counterclockwise angle from the positive real
/// axis, measured about the center.
pub fn canonicalize(contour: &Contour) -> Result<ParamCurve> {
    let mut pts = contour.points.clone();
    if signed_area(&pts) < 0.0 {
        pts.reverse();
    }
    let center = arclength_center(&pts);
    let diameter = bbox_diagonal(&pts);
    let dists: Vec<f64> = pts.iter().map(|p| (p - center).norm()).collect();
    let max = dists.iter().copied().fold(0.0, f64::max);
    if max <= MERGE_TOLERANCE * diameter.max(f64::MIN_POSITIVE) {
        return Err(ShapeError::DegenerateContour(
            "all points coincide with the center of mass".into(),
        ));
    }
    let tie = TIE_TOLERANCE * diameter;
    let start = (0..pts.len())
        .filter(|&i| dists[i] >= max - tie)
        .min_by(|&i, &j| ccw_angle(pts[i] - center).total_cmp(&ccw_angle(pts[j] - center)))
        .expect("at least one point attains the maximum");
    pts.rotate_left(start);
    Ok(ParamCurve::from_ordered(pts))
}

/// Length of the closed polygon through the curve's vertices.
pub fn polygon_length(curve: &ParamCurve) -> f64 {
    curve.total_length
}

/// Draws `k - 1` uniform times in `[0, 1)`, sorts them and prepends `s_1 = 0`.
pub fn select_stopping_times<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<StoppingTimes> {
    if k < 3 {
        return Err(ShapeError::InvalidArgument(format!(
            "need at least 3 stopping times, got {k}"
        )));
    }
    let mut times = Vec::with_capacity(k);
    times.push(0.0);
    while times.len() < k {
        let t: f64 = rng.random();
        times.push(t);
        if times.len() == k {
            times.sort_by(f64::total_cmp);
            times.dedup();
        }
    }
    StoppingTimes::new(times)
}

/// Maps each fraction `s` to the point at arclength `s * L` by linear
/// interpolation between the bracketing vertices.
pub fn evaluate(curve: &ParamCurve, times: &StoppingTimes) -> Result<Contour> {
    let points = times.times.iter().map(|&s| point_at(curve, s)).collect();
    Contour::new(points)
}

fn point_at(curve: &ParamCurve, s: f64) -> Complex64 {
    let l = curve.total_length;
    let m = curve.vertices.len();
    let target = s * l;
    let snap = 8.0 * f64::EPSILON * l;
    // Index of the last vertex with cum_length <= target.
    let j = curve
        .cum_lengths
        .partition_point(|&c| c <= target)
        .saturating_sub(1);
    let (start, end) = (curve.cum_lengths[j], curve.cum_lengths.get(j + 1).copied().unwrap_or(l));
    let next = (j + 1) % m;
    if (target - start).abs() <= snap {
        return curve.vertices[j];
    }
    if (end - target).abs() <= snap {
        return curve.vertices[next];
    }
    let frac = (target - start) / (end - start);
    curve.vertices[j] + (curve.vertices[next] - curve.vertices[j]) * frac
}

/// Longest edge of the k-gon, closing edge included.
pub fn max_edge_length(kgon: &Contour) -> f64 {
    edges(&kgon.points)
        .map(|(a, b)| (b - a).norm())
        .fold(0.0, f64::max)
}

/// `(L_ref - L_k) / L_ref`.
pub fn relative_length_error(reference_length: f64, kgon: &Contour) -> Result<f64> {
    if reference_length.is_nan() || reference_length <= 0.0 {
        return Err(ShapeError::InvalidArgument(format!(
            "reference length must be positive, got {reference_length}"
        )));
    }
    Ok((reference_length - kgon.perimeter()) / reference_length)
}

/// Produces the common stopping times at which every curve of a sample is evaluated.
pub fn build_correspondence<R: Rng + ?Sized>(
    sample: &[ParamCurve],
    strategy: &Correspondence,
    rng: &mut R,
) -> Result<StoppingTimes> {
    if sample.is_empty() {
        return Err(ShapeError::EmptySample);
    }
    match strategy {
        Correspondence::Shared(k) => select_stopping_times(*k, rng),
        Correspondence::Union(counts) => {
            if counts.len() != sample.len() {
                return Err(ShapeError::DimensionMismatch {
                    expected: sample.len(),
                    found: counts.len(),
                });
            }
            let draws = counts
                .iter()
                .map(|&k| select_stopping_times(k, rng))
                .collect::<Result<Vec<_>>>()?;
            StoppingTimes::union(&draws)
        }
    }
}

fn edges(points: &[Complex64]) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
    let m = points.len();
    (0..m).map(move |i| (points[i], points[(i + 1) % m]))
}

fn signed_area(points: &[Complex64]) -> f64 {
    0.5 * edges(points).map(|(a, b)| cross(a, b)).sum::<f64>()
}

fn arclength_center(points: &[Complex64]) -> Complex64 {
    let mut weighted = Complex64::new(0.0, 0.0);
    let mut total = 0.0;
    for (a, b) in edges(points) {
        let len = (b - a).norm();
        weighted += (a + b) * (0.5 * len);
        total += len;
    }
    weighted / total
}

fn bbox_diagonal(points: &[Complex64]) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo.re = lo.re.min(p.re);
        lo.im = lo.im.min(p.im);
        hi.re = hi.re.max(p.re);
        hi.im = hi.im.max(p.im);
    }
    (hi - lo).norm()
}

fn count_distinct(points: &[Complex64]) -> usize {
    let mut keys: Vec<(u64, u64)> = points
        .iter()
        .map(|p| (p.re.to_bits(), p.im.to_bits()))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

fn ccw_angle(v: Complex64) -> f64 {
    let a = v.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |p: Complex64, q: Complex64, r: Complex64| {
        r.re >= p.re.min(q.re) && r.re <= p.re.max(q.re) && r.im >= p.im.min(q.im) && r.im <= p.im.max(q.im)
    };
    (d1 == 0.0 && on_segment(a, b, c))
        || (d2 == 0.0 && on_segment(a, b, d))
        || (d3 == 0.0 && on_segment(c, d, a))
        || (d4 == 0.0 && on_segment(c, d, b))
}
