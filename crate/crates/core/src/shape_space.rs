//! Preshapes, the Veronese-Whitney embedding and extrinsic sample statistics.
//!
//! A shape is a unit-norm, centered complex vector up to a unit complex
//! scalar. The Veronese-Whitney (VW) embedding sends it to the rank-one
//! Hermitian projector `γγ*`; the extrinsic mean of a sample is the top
//! eigenvector of the averaged projectors.
//!
//! Conventions used throughout:
//!
//! * `⟨x, y⟩ = x* y = Σ conj(x_i) y_i`.
//! * Eigen-indices are zero-based: index 0 is the top eigenpair, tangent
//!   directions are indices `1..k`. Tangent-indexed vectors and matrices have
//!   length `k - 1`, entry `a - 1` belonging to eigenvector `a`.
//! * The tangent frame at the mean `e_0` consists of the Hermitian matrices
//!   `F_a = (e_a e_0* + e_0 e_a*)/√2` and `G_a = i(e_a e_0* - e_0 e_a*)/√2`,
//!   orthonormal for the real Hilbert-Schmidt product `Re tr(A* B)`. The real
//!   coordinates `(x_a, y_a)` of a Hermitian `v` in that frame are packed into
//!   one complex number `x_a + i y_a = √2 e_a* v e_0`.

use std::ops::Sub;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::contour::Contour;
use crate::error::{Result, ShapeError};

/// Default relative eigen-gap below which a sample is treated as focal.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

const HERMITIAN_TOL: f64 = 1e-10;

/// Inner product `⟨x, y⟩ = Σ conj(x_i) y_i`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A centered, unit-norm complex k-vector representing the shape `[γ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Preshape {
    coords: Vec<Complex64>,
}

impl Preshape {
    /// Centers and normalizes raw configuration points. Vertex order is kept.
    pub fn from_points(points: &[Complex64]) -> Result<Self> {
        if points.len() < 3 {
            return Err(ShapeError::DegenerateContour(format!(
                "{} points, need at least 3",
                points.len()
            )));
        }
        let mean = points.iter().sum::<Complex64>() / points.len() as f64;
        let centered: Vec<Complex64> = points.iter().map(|p| p - mean).collect();
        let n = norm(&centered);
        let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max);
        if !n.is_finite() || n <= 1e-14 * scale {
            return Err(ShapeError::DegenerateContour(
                "configuration collapses to a point after centering".into(),
            ));
        }
        Ok(Self {
            coords: centered.into_iter().map(|z| z / n).collect(),
        })
    }

    /// Wraps coordinates that are already centered and unit-norm.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let n = norm(&coords);
        let sum: Complex64 = coords.iter().sum();
        if coords.len() < 3 || (n - 1.0).abs() > 1e-12 || sum.norm() > 1e-10 {
            return Err(ShapeError::InvalidArgument(format!(
                "not a preshape: k = {}, norm = {n}, |sum| = {:e}",
                coords.len(),
                sum.norm()
            )));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    /// `⟨self, other⟩`.
    pub fn inner(&self, other: &Preshape) -> Complex64 {
        inner(&self.coords, &other.coords)
    }

    /// Multiplies every coordinate by a unit complex number; the shape is unchanged.
    pub fn rotated(&self, phase: Complex64) -> Preshape {
        let u = phase / phase.norm();
        Preshape {
            coords: self.coords.iter().map(|z| z * u).collect(),
        }
    }

    fn check_same_k(&self, other: &Preshape) -> Result<()> {
        if self.k() != other.k() {
            return Err(ShapeError::DimensionMismatch {
                expected: self.k(),
                found: other.k(),
            });
        }
        Ok(())
    }

    pub(crate) fn as_dvector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.coords)
    }
}

/// Preshape of an evaluated k-gon.
pub fn preshape(kgon: &Contour) -> Result<Preshape> {
    Preshape::from_points(kgon.points())
}

/// A k×k Hermitian matrix in Hilbert-Schmidt space: embedded shapes, their
/// averages, and differences of those.
#[derive(Debug, Clone, PartialEq)]
pub struct VWMatrix {
    entries: DMatrix<Complex64>,
}

impl VWMatrix {
    /// Accepts a square matrix that is Hermitian within `1e-10` relative to its
    /// largest entry, and symmetrizes it exactly.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() {
            return Err(ShapeError::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let asym = max_asymmetry(&m);
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if asym > HERMITIAN_TOL * scale {
            return Err(ShapeError::NotHermitian(asym));
        }
        let entries = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(Self { entries })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn k(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Explicit `‖self - other‖_HS`.
    pub fn hs_distance(&self, other: &VWMatrix) -> Result<f64> {
        if self.k() != other.k() {
            return Err(ShapeError::DimensionMismatch {
                expected: self.k(),
                found: other.k(),
            });
        }
        Ok((&self.entries - &other.entries).norm())
    }
}

impl Sub for &VWMatrix {
    type Output = VWMatrix;

    fn sub(self, rhs: &VWMatrix) -> VWMatrix {
        VWMatrix {
            entries: &self.entries - &rhs.entries,
        }
    }
}

fn max_asymmetry(m: &DMatrix<Complex64>) -> f64 {
    let k = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in i..k {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `j([γ]) = γγ*` for a unit-norm representative.
pub fn vw_embed(shape: &Preshape) -> VWMatrix {
    let v = shape.as_dvector();
    VWMatrix {
        entries: &v * v.adjoint(),
    }
}

/// Chord distance `‖j(a) - j(b)‖_HS = √(2(1 - |⟨a, b⟩|²))`.
pub fn chord_distance(a: &Preshape, b: &Preshape) -> Result<f64> {
    Ok(squared_chord(a, b)?.sqrt())
}

pub(crate) fn squared_chord(a: &Preshape, b: &Preshape) -> Result<f64> {
    a.check_same_k(b)?;
    // Fixed argument order keeps the result bitwise symmetric.
    let (a, b) = if coords_before(b.coords(), a.coords()) { (b, a) } else { (a, b) };
    // 1 - |<a,b>|^2 as the squared norm of the part of b orthogonal to a, which
    // avoids cancellation for nearly equal shapes.
    let z = a.inner(b) / a.inner(a).re;
    let r: f64 = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (y - x * z).norm_sqr())
        .sum();
    Ok(2.0 * r)
}

fn coords_before(x: &[Complex64], y: &[Complex64]) -> bool {
    x.iter()
        .zip(y)
        .map(|(p, q)| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)))
        .find(|o| o.is_ne())
        .is_some_and(|o| o.is_lt())
}

/// Sample Fréchet function `(1/n) Σ ρ(candidate, γ_i)²`.
pub fn frechet_value(candidate: &Preshape, sample: &[Preshape]) -> Result<f64> {
    if sample.is_empty() {
        return Err(ShapeError::EmptySample);
    }
    let mut total = 0.0;
    for g in sample {
        total += squared_chord(candidate, g)?;
    }
    Ok(total / sample.len() as f64)
}

fn check_sample(sample: &[Preshape]) -> Result<usize> {
    let first = sample.first().ok_or(ShapeError::EmptySample)?;
    for g in sample {
        first.check_same_k(g)?;
    }
    Ok(first.k())
}

/// `μ̂ = (1/n) Σ γ_i γ_i*`.
pub fn mean_matrix(sample: &[Preshape]) -> Result<VWMatrix> {
    let k = check_sample(sample)?;
    let mut acc = DMatrix::<Complex64>::zeros(k, k);
    for g in sample {
        let c = g.coords();
        for j in 0..k {
            let cj = c[j].conj();
            for i in 0..k {
                acc[(i, j)] += c[i] * cj;
            }
        }
    }
    acc /= Complex64::new(sample.len() as f64, 0.0);
    VWMatrix::from_matrix(acc)
}

/// Full descending eigendecomposition of a Hermitian matrix.
///
/// Each eigenvector is scaled so that its largest-magnitude entry is real and
/// positive, which makes outputs reproducible.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl EigenSystem {
    /// Eigenvalues, largest first.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// Orthonormal eigenvectors as columns, in the order of [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn eigenvector(&self, a: usize) -> Vec<Complex64> {
        self.vectors.column(a).iter().copied().collect()
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    /// `δ²_1 - δ²_2` (zero for a 1×1 system).
    pub fn gap(&self) -> f64 {
        if self.values.len() < 2 {
            return 0.0;
        }
        self.values[0] - self.values[1]
    }

    /// Gap relative to the top eigenvalue.
    pub fn relative_gap(&self) -> f64 {
        let top = self.values.first().copied().unwrap_or(0.0).abs();
        if top == 0.0 {
            return 0.0;
        }
        self.gap() / top
    }

    /// Errors unless the top eigenvalue is simple at relative tolerance `gap_tol`.
    pub fn require_simple_top(&self, gap_tol: f64) -> Result<()> {
        let rel = self.relative_gap();
        if rel.is_nan() || rel < gap_tol || self.gap() <= 0.0 {
            return Err(ShapeError::Focal {
                relative_gap: rel,
                tolerance: gap_tol,
            });
        }
        Ok(())
    }

    /// `Σ δ²_a e_a e_a*`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

pub fn eigensystem(m: &VWMatrix) -> Result<EigenSystem> {
    let asym = max_asymmetry(&m.entries);
    let scale = m.entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if asym > HERMITIAN_TOL * scale {
        return Err(ShapeError::NotHermitian(asym));
    }
    let eig = m.entries.clone().symmetric_eigen();
    let k = m.k();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<Complex64>::zeros(k, k);
    for (dst, &src) in order.iter().enumerate() {
        let mut col: Vec<Complex64> = eig.eigenvectors.column(src).iter().copied().collect();
        fix_phase(&mut col);
        vectors.column_mut(dst).copy_from_slice(&col);
    }
    Ok(EigenSystem { values, vectors })
}

/// Rotates `v` so that its largest-magnitude entry (first one on ties) is real positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() == 0.0 {
        return;
    }
    let u = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z *= u;
    }
    v[best] = Complex64::new(v[best].re, 0.0);
}

fn top_as_preshape(mut coords: Vec<Complex64>) -> Result<Preshape> {
    let mean = coords.iter().sum::<Complex64>() / coords.len() as f64;
    for z in coords.iter_mut() {
        *z -= mean;
    }
    let n = norm(&coords);
    if n.is_nan() || n <= 0.5 {
        return Err(ShapeError::InvalidArgument(
            "top eigenvector is not in the centered subspace".into(),
        ));
    }
    for z in coords.iter_mut() {
        *z /= n;
    }
    fix_phase(&mut coords);
    Ok(Preshape { coords })
}

/// VW extrinsic sample mean: the top eigenvector of [`mean_matrix`], returned
/// with the full eigensystem for downstream covariance computations.
pub fn extrinsic_mean(sample: &[Preshape], gap_tol: f64) -> Result<(Preshape, EigenSystem)> {
    let eigen = eigensystem(&mean_matrix(sample)?)?;
    eigen.require_simple_top(gap_tol)?;
    let mean = top_as_preshape(eigen.eigenvector(0))?;
    Ok((mean, eigen))
}

/// The extrinsic mean shape alone.
///
/// When `n < k` this diagonalizes the n×n Gram matrix `(⟨γ_i, γ_j⟩/n)`, which
/// shares its nonzero spectrum with `μ̂`; the top eigenvector of `μ̂` is then
/// `Σ v_i γ_i` normalized. The result equals the first output of
/// [`extrinsic_mean`].
pub fn extrinsic_mean_shape(sample: &[Preshape], gap_tol: f64) -> Result<Preshape> {
    let k = check_sample(sample)?;
    let n = sample.len();
    if n >= k {
        return extrinsic_mean(sample, gap_tol).map(|(m, _)| m);
    }
    let scale = Complex64::new(1.0 / n as f64, 0.0);
    let gram = DMatrix::from_fn(n, n, |i, j| sample[i].inner(&sample[j]) * scale);
    let eigen = eigensystem(&VWMatrix::from_matrix(gram)?)?;
    // Remaining eigenvalues of μ̂ are zero, so a single observation has gap δ²_1.
    if n > 1 {
        eigen.require_simple_top(gap_tol)?;
    }
    let v = eigen.eigenvectors().column(0);
    let mut top = vec![Complex64::new(0.0, 0.0); k];
    for (g, &w) in sample.iter().zip(v.iter()) {
        for (t, z) in top.iter_mut().zip(g.coords()) {
            *t += w * z;
        }
    }
    let n_top = norm(&top);
    for t in top.iter_mut() {
        *t /= n_top;
    }
    top_as_preshape(top)
}

/// Projection onto the embedded manifold: `P_j(A) = ν_A ν_A*` with `ν_A` the
/// unit top eigenvector of `A`.
pub fn project_to_manifold(a: &VWMatrix, gap_tol: f64) -> Result<VWMatrix> {
    let eigen = eigensystem(a)?;
    eigen.require_simple_top(gap_tol)?;
    let v = eigen.vectors.column(0).into_owned();
    Ok(VWMatrix {
        entries: &v * v.adjoint(),
    })
}

/// Complex tangent coordinates `√2 e_a* v e_0`, `a = 1..k`, of a Hermitian
/// matrix in the frame at the top eigenvector of `eigen`.
pub fn tangent_coordinates(v: &VWMatrix, eigen: &EigenSystem) -> Result<Vec<Complex64>> {
    if v.k() != eigen.k() {
        return Err(ShapeError::DimensionMismatch {
            expected: eigen.k(),
            found: v.k(),
        });
    }
    let e = &eigen.vectors;
    let ve0 = &v.entries * e.column(0);
    let s = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    Ok((1..eigen.k())
        .map(|a| e.column(a).dotc(&ve0) * s)
        .collect())
}

/// Extrinsic sample covariance in tangent coordinates, a (k-1)×(k-1)
/// Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrinsicCovariance {
    entries: DMatrix<Complex64>,
}

impl ExtrinsicCovariance {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        Ok(Self {
            entries: VWMatrix::from_matrix(m)?.entries,
        })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `⟨ν, S ν⟩ = ν* S ν`.
    pub fn quadratic_form(&self, nu: &[Complex64]) -> Result<Complex64> {
        if nu.len() != self.dim() {
            return Err(ShapeError::DimensionMismatch {
                expected: self.dim(),
                found: nu.len(),
            });
        }
        let v = DVector::from_column_slice(nu);
        Ok(v.dotc(&(&self.entries * &v)))
    }
}

/// `S_ab = n⁻¹ (δ²_1-δ²_a)⁻¹ (δ²_1-δ²_b)⁻¹ Σ_r ⟨e_a,γ_r⟩ conj⟨e_b,γ_r⟩ |⟨e_1,γ_r⟩|²`
/// for tangent indices `a, b`, where `eigen` comes from the mean matrix of `sample`.
pub fn extrinsic_covariance(sample: &[Preshape], eigen: &EigenSystem) -> Result<ExtrinsicCovariance> {
    let k = check_sample(sample)?;
    if k != eigen.k() {
        return Err(ShapeError::DimensionMismatch {
            expected: eigen.k(),
            found: k,
        });
    }
    eigen.require_simple_top(DEFAULT_GAP_TOL)?;
    let top = eigen.values[0];
    let weights: Vec<f64> = eigen.values[1..].iter().map(|d| 1.0 / (top - d)).collect();

    // Row r: x_{r,a} = w_a ⟨e_a, γ_r⟩ |⟨e_1, γ_r⟩|, so that S = (1/n) Σ_r x_r x_r*.
    let n = sample.len();
    let ev_adj = eigen.vectors.adjoint();
    let mut x = DMatrix::<Complex64>::zeros(k - 1, n);
    for (r, g) in sample.iter().enumerate() {
        let proj = &ev_adj * g.as_dvector();
        let w_top = proj[0].norm();
        for a in 1..k {
            x[(a - 1, r)] = proj[a] * (weights[a - 1] * w_top);
        }
    }
    let mut s = &x * x.adjoint() / Complex64::new(n as f64, 0.0);
    for a in 0..k - 1 {
        s[(a, a)] = Complex64::new(s[(a, a)].re, 0.0);
        for b in (a + 1)..k - 1 {
            s[(b, a)] = s[(a, b)].conj();
        }
    }
    Ok(ExtrinsicCovariance { entries: s })
}

/// Estimated differential of the projection at the mean:
/// `Q̂_1 = Σ_{a≥2} (δ²_1 - δ²_a)⁻¹ E_a`.
#[derive(Debug, Clone)]
pub struct Q1Operator {
    coefficients: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl Q1Operator {
    /// `1/(δ²_1 - δ²_a)` for `a = 2..k`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// The operator as a k×k matrix.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let k = self.vectors.nrows();
        let mut out = DMatrix::<Complex64>::zeros(k, k);
        for (a, &c) in self.coefficients.iter().enumerate() {
            let e = self.vectors.column(a + 1);
            out += (e * e.adjoint()) * Complex64::new(c, 0.0);
        }
        out
    }
}

pub fn q1_operator(eigen: &EigenSystem) -> Result<Q1Operator> {
    eigen.require_simple_top(DEFAULT_GAP_TOL)?;
    let top = eigen.values[0];
    Ok(Q1Operator {
        coefficients: eigen.values[1..].iter().map(|d| 1.0 / (top - d)).collect(),
        vectors: eigen.vectors.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(values: &[f64]) -> VWMatrix {
        VWMatrix::from_matrix(DMatrix::from_diagonal(&DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| c(v, 0.0)),
        )))
        .unwrap()
    }

    #[test]
    fn preshape_arithmetic() {
        let p = Preshape::from_points(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(p.coords(), &[c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)]);
    }

    #[test]
    fn preshape_kills_translation_and_scale() {
        let pts = [c(0.3, 1.0), c(2.0, -1.0), c(-1.5, 0.2), c(0.1, 0.4), c(1.0, 1.0)];
        let base = Preshape::from_points(&pts).unwrap();
        let shifted: Vec<_> = pts.iter().map(|p| p + c(7.0, -3.0)).collect();
        let scaled: Vec<_> = pts.iter().map(|p| p * 4.5).collect();
        for other in [shifted, scaled] {
            let q = Preshape::from_points(&other).unwrap();
            for (a, b) in base.coords().iter().zip(q.coords()) {
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn preshape_rejects_collapsed_points() {
        assert!(Preshape::from_points(&[c(1.0, 1.0); 5]).is_err());
        assert!(Preshape::from_points(&[c(1.0, 1.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn vw_embedding_of_basis_like_vector() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = Preshape::new(vec![c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]).unwrap();
        let m = vw_embed(&p);
        assert!((m.matrix()[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((m.matrix()[(0, 1)] - c(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(m.matrix()[(2, 2)], c(0.0, 0.0));
        assert!((m.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vw_embedding_is_phase_invariant_and_idempotent() {
        let p = Preshape::from_points(&[c(1.0, 2.0), c(-0.5, 0.3), c(0.2, -1.0), c(2.0, 2.0)]).unwrap();
        let a = vw_embed(&p);
        let b = vw_embed(&p.rotated(Complex64::from_polar(1.0, 2.1)));
        assert!(a.hs_distance(&b).unwrap() < 1e-15);
        let sq = a.matrix() * a.matrix();
        assert!((sq - a.matrix()).norm() < 1e-14);
    }

    #[test]
    fn chord_distance_special_values() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = Preshape::new(vec![c(s, 0.0), c(-s, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = Preshape::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, s), c(0.0, -s)]).unwrap();
        assert_eq!(chord_distance(&a, &a).unwrap(), 0.0);
        assert!(chord_distance(&a, &a.rotated(c(0.0, 1.0))).unwrap() < 1e-15);
        assert!((chord_distance(&a, &b).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let short = Preshape::new(vec![c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            chord_distance(&a, &short),
            Err(ShapeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn frechet_special_values() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = Preshape::new(vec![c(s, 0.0), c(-s, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = Preshape::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, s), c(0.0, -s)]).unwrap();
        assert_eq!(frechet_value(&a, std::slice::from_ref(&a)).unwrap(), 0.0);
        assert!((frechet_value(&a, &[b.clone(), b]).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(frechet_value(&a, &[]), Err(ShapeError::EmptySample)));
    }

    #[test]
    fn mean_matrix_of_orthogonal_pair() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let a = Preshape::new(vec![c(s, 0.0), c(-s, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = Preshape::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0), c(-s, 0.0)]).unwrap();
        let m = mean_matrix(&[a.clone(), b.clone()]).unwrap();
        assert!((m.trace() - 1.0).abs() < 1e-15);
        let eig = eigensystem(&m).unwrap();
        assert!((eig.eigenvalues()[0] - 0.5).abs() < 1e-14);
        assert!((eig.eigenvalues()[1] - 0.5).abs() < 1e-14);
        assert!(matches!(extrinsic_mean(&[a, b], DEFAULT_GAP_TOL), Err(ShapeError::Focal { .. })));
    }

    #[test]
    fn eigensystem_of_diagonal() {
        let eig = eigensystem(&diag(&[0.1, 0.6, 0.3])).unwrap();
        assert_eq!(eig.k(), 3);
        let want = [0.6, 0.3, 0.1];
        for (a, w) in want.iter().enumerate() {
            assert!((eig.eigenvalues()[a] - w).abs() < 1e-15);
        }
        // Standard basis vectors, real positive by the phase convention.
        assert!((eig.eigenvectors()[(1, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((eig.eigenvectors()[(2, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((eig.eigenvectors()[(0, 2)] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eigensystem_rejects_non_hermitian() {
        let mut m = DMatrix::<Complex64>::identity(3, 3);
        m[(0, 1)] = c(0.0, 0.5);
        let bad = VWMatrix { entries: m };
        assert!(matches!(eigensystem(&bad), Err(ShapeError::NotHermitian(_))));
    }

    #[test]
    fn projection_of_diagonal() {
        let p = project_to_manifold(&diag(&[0.6, 0.4]), DEFAULT_GAP_TOL).unwrap();
        assert!((p.matrix() - diag(&[1.0, 0.0]).matrix()).norm() < 1e-15);
        assert!(project_to_manifold(&diag(&[0.5, 0.5]), DEFAULT_GAP_TOL).is_err());
    }

    #[test]
    fn q1_coefficients() {
        let eig = eigensystem(&diag(&[0.9, 0.05, 0.05])).unwrap();
        let q = q1_operator(&eig).unwrap();
        for &coef in q.coefficients() {
            assert!((coef - 1.0 / 0.85).abs() < 1e-13);
        }
        let point = eigensystem(&diag(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(q1_operator(&point).unwrap().coefficients(), &[1.0, 1.0, 1.0]);
        let m = q1_operator(&point).unwrap().matrix();
        assert!((m - diag(&[0.0, 1.0, 1.0, 1.0]).matrix()).norm() < 1e-15);
    }

    #[test]
    fn tangent_coordinates_of_zero() {
        let eig = eigensystem(&diag(&[0.7, 0.2, 0.1])).unwrap();
        let zero = VWMatrix::from_matrix(DMatrix::zeros(3, 3)).unwrap();
        assert!(tangent_coordinates(&zero, &eig).unwrap().iter().all(|z| z.norm() == 0.0));
        let wrong = VWMatrix::from_matrix(DMatrix::zeros(4, 4)).unwrap();
        assert!(tangent_coordinates(&wrong, &eig).is_err());
    }

    #[test]
    fn covariance_of_identical_sample_is_zero() {
        let p = Preshape::from_points(&[c(1.0, 2.0), c(-0.5, 0.3), c(0.2, -1.0), c(2.0, 2.0)]).unwrap();
        let sample = vec![p.clone(), p.rotated(c(0.0, 1.0)), p];
        let (_, eig) = extrinsic_mean(&sample, DEFAULT_GAP_TOL).unwrap();
        let cov = extrinsic_covariance(&sample, &eig).unwrap();
        assert!(cov.matrix().norm() < 1e-14);
    }
}
