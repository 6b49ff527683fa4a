//! One-sample neighborhood hypothesis test for the VW extrinsic mean shape.
//!
//! For a hypothesized shape `m0` and radius `δ`, the null hypothesis places the
//! population extrinsic mean within chord distance `δ` of `m0`. The statistic
//!
//! ```text
//! T_n = √n (φ_m0(μ̂_E) - δ²) / s_n,    s_n² = 4 ⟨ν̂, S_E,n ν̂⟩
//! ```
//!
//! is asymptotically standard normal on the boundary `φ = δ²`. Large positive
//! values are evidence that the mean lies outside the neighborhood, so the test
//! rejects when `T_n > ξ_{1-α}`.

use num_complex::Complex64;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Result, ShapeError};
use crate::shape_space::{
    extrinsic_covariance, extrinsic_mean, squared_chord, EigenSystem, ExtrinsicCovariance,
    Preshape, DEFAULT_GAP_TOL,
};

/// `s_n²` values at or below this are treated as zero.
const VARIANCE_FLOOR: f64 = 1e-24;
/// `φ` values at or below this (chord distance 1e-12) are rounding noise.
const PHI_FLOOR: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    delta: f64,
    alpha: f64,
}

impl TestConfig {
    pub fn new(delta: f64, alpha: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(ShapeError::InvalidArgument(format!(
                "delta must be positive, got {delta}"
            )));
        }
        check_alpha(alpha)?;
        Ok(Self { delta, alpha })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ShapeError::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    /// `φ_m0(μ̂_E)`, the squared chord distance from the sample mean to `m0`.
    pub phi: f64,
    pub s_n: f64,
    pub t_n: f64,
    /// `1 - Φ(T_n)`.
    pub p_value: f64,
    pub reject: bool,
    /// Largest `δ` at which the test still rejects.
    pub critical_delta: f64,
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// Standard normal quantile `ξ_p`.
pub fn normal_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// `φ_m0(p) = ‖j(p) - j(m0)‖²`.
pub fn phi_m0(shape: &Preshape, m0: &Preshape) -> Result<f64> {
    squared_chord(shape, m0)
}

/// Tangent coordinates of `j(m0) - j(μ̂_E)` at the sample mean:
/// `ν̂^a = √2 ⟨e_a, m0⟩ ⟨m0, e_1⟩`, `a = 2..k`.
pub fn nu_hat(eigen: &EigenSystem, m0: &Preshape) -> Result<Vec<Complex64>> {
    if m0.k() != eigen.k() {
        return Err(ShapeError::DimensionMismatch {
            expected: eigen.k(),
            found: m0.k(),
        });
    }
    eigen.require_simple_top(DEFAULT_GAP_TOL)?;
    let vectors = eigen.eigenvectors();
    let m = nalgebra::DVector::from_column_slice(m0.coords());
    let proj = vectors.adjoint() * m;
    let along_top = proj[0].conj() * std::f64::consts::SQRT_2;
    Ok((1..eigen.k()).map(|a| proj[a] * along_top).collect())
}

/// `s_n² = 4 ⟨ν̂, S ν̂⟩`, clamped at zero.
pub fn s_n_squared(nu: &[Complex64], cov: &ExtrinsicCovariance) -> Result<f64> {
    let q = cov.quadratic_form(nu)? * 4.0;
    let scale = q.re.abs().max(1.0);
    if q.im.abs() > 1e-10 * scale {
        return Err(ShapeError::InvalidArgument(format!(
            "covariance quadratic form is not real (imaginary part {:e})",
            q.im
        )));
    }
    if q.re < -1e-10 * scale {
        return Err(ShapeError::InvalidArgument(format!(
            "covariance is not positive semidefinite (form = {:e})",
            q.re
        )));
    }
    Ok(q.re.max(0.0))
}

/// Data-dependent pieces of the test, independent of `δ` and `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestStatistics {
    pub n: usize,
    pub phi: f64,
    pub s_n_squared: f64,
    pub mean: Preshape,
}

impl TestStatistics {
    pub fn compute(sample: &[Preshape], m0: &Preshape) -> Result<Self> {
        if sample.len() < 2 {
            return Err(ShapeError::InvalidArgument(format!(
                "the neighborhood test needs n >= 2, got {}",
                sample.len()
            )));
        }
        let (mean, eigen) = extrinsic_mean(sample, DEFAULT_GAP_TOL)?;
        let phi = phi_m0(&mean, m0)?;
        let phi = if phi <= PHI_FLOOR { 0.0 } else { phi };
        let cov = extrinsic_covariance(sample, &eigen)?;
        let nu = nu_hat(&eigen, m0)?;
        let s2 = s_n_squared(&nu, &cov)?;
        Ok(Self {
            n: sample.len(),
            phi,
            s_n_squared: s2,
            mean,
        })
    }

    pub fn s_n(&self) -> f64 {
        self.s_n_squared.sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.s_n_squared <= VARIANCE_FLOOR
    }

    /// `δ* = sqrt(max(0, φ - ξ_{1-α} s_n / √n))`. Well defined even when `s_n = 0`.
    pub fn critical_delta(&self, alpha: f64) -> Result<f64> {
        check_alpha(alpha)?;
        let xi = normal_quantile(1.0 - alpha);
        let s_n = if self.is_degenerate() { 0.0 } else { self.s_n() };
        let d2 = self.phi - xi * s_n / (self.n as f64).sqrt();
        Ok(d2.max(0.0).sqrt())
    }

    pub fn test(&self, config: &TestConfig) -> Result<TestResult> {
        if self.is_degenerate() {
            return Err(ShapeError::DegenerateVariance);
        }
        let s_n = self.s_n();
        let t_n = (self.n as f64).sqrt() * (self.phi - config.delta * config.delta) / s_n;
        let xi = normal_quantile(1.0 - config.alpha);
        Ok(TestResult {
            phi: self.phi,
            s_n,
            t_n,
            p_value: Normal::standard().sf(t_n),
            reject: t_n > xi,
            critical_delta: self.critical_delta(config.alpha)?,
        })
    }
}

pub fn neighborhood_test(sample: &[Preshape], m0: &Preshape, config: &TestConfig) -> Result<TestResult> {
    TestStatistics::compute(sample, m0)?.test(config)
}

/// Largest `δ` for which [`neighborhood_test`] rejects at level `alpha`.
pub fn critical_delta(sample: &[Preshape], m0: &Preshape, alpha: f64) -> Result<f64> {
    TestStatistics::compute(sample, m0)?.critical_delta(alpha)
}
