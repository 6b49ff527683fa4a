//! Independent reference computations shared by the integration tests.
//! These use plain loops over coordinates and never call the library's
//! covariance or tangent-space code.

#![allow(dead_code)]

use extrinsic_shape::shape_space::{EigenSystem, Preshape};
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Σ conj(x_i) y_i`.
pub fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for i in 0..x.len() {
        acc += x[i].conj() * y[i];
    }
    acc
}

pub fn column(eigen: &EigenSystem, a: usize) -> Vec<Complex64> {
    eigen.eigenvector(a)
}

/// Covariance entries and the quadratic form built in one pass over the
/// observations: for every observation `γ` and every tangent pair `(a, b)`,
/// accumulate `w_a w_b ⟨e_a,γ⟩ conj⟨e_b,γ⟩ |⟨e_0,γ⟩|² conj(ν_a) ν_b`.
pub fn s_n_squared_oracle(sample: &[Preshape], eigen: &EigenSystem, m0: &Preshape) -> f64 {
    let k = eigen.k();
    let vals = eigen.eigenvalues();
    let e: Vec<Vec<Complex64>> = (0..k).map(|a| column(eigen, a)).collect();
    let m = m0.coords();
    let proj_m0_top = dot(m, &e[0]);
    let nu: Vec<Complex64> = (0..k)
        .map(|a| {
            if a == 0 {
                c(0.0, 0.0)
            } else {
                dot(&e[a], m) * proj_m0_top * std::f64::consts::SQRT_2
            }
        })
        .collect();
    let mut total = c(0.0, 0.0);
    for g in sample {
        let g = g.coords();
        let top = dot(&e[0], g).norm_sqr();
        for a in 1..k {
            let ga = dot(&e[a], g) / (vals[0] - vals[a]);
            for b in 1..k {
                let gb = dot(&e[b], g) / (vals[0] - vals[b]);
                total += nu[a].conj() * ga * gb.conj() * top * nu[b];
            }
        }
    }
    4.0 * total.re / sample.len() as f64
}

/// Dense k×k complex matrix as rows.
pub type Dense = Vec<Vec<Complex64>>;

pub fn outer(x: &[Complex64], y: &[Complex64]) -> Dense {
    x.iter()
        .map(|xi| y.iter().map(|yj| xi * yj.conj()).collect())
        .collect()
}

pub fn trace_product(a: &Dense, b: &Dense) -> Complex64 {
    let mut t = c(0.0, 0.0);
    for i in 0..a.len() {
        for j in 0..a.len() {
            t += a[i][j] * b[j][i];
        }
    }
    t
}

/// Coordinates of a Hermitian matrix `v` against the orthonormal frame
/// `F_a = (e_a e_0* + e_0 e_a*)/√2`, `G_a = i(e_a e_0* - e_0 e_a*)/√2`, combined
/// as `⟨F_a, v⟩ + i⟨G_a, v⟩` with the real Hilbert-Schmidt inner product.
pub fn frame_coordinates(v: &Dense, eigen: &EigenSystem) -> Vec<Complex64> {
    let k = eigen.k();
    let e0 = column(eigen, 0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (1..k)
        .map(|a| {
            let ea = column(eigen, a);
            let ae = outer(&ea, &e0);
            let ea0 = outer(&e0, &ea);
            let f: Dense = (0..k)
                .map(|i| (0..k).map(|j| (ae[i][j] + ea0[i][j]) * s).collect())
                .collect();
            let g: Dense = (0..k)
                .map(|i| (0..k).map(|j| (ae[i][j] - ea0[i][j]) * c(0.0, s)).collect())
                .collect();
            c(trace_product(&f, v).re, trace_product(&g, v).re)
        })
        .collect()
}

pub fn embed(p: &Preshape) -> Dense {
    outer(p.coords(), p.coords())
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}
