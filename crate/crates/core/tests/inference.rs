mod common;

use extrinsic_shape::inference::{
    critical_delta, neighborhood_test, normal_quantile, TestConfig, TestStatistics,
};
use extrinsic_shape::rng::seeded;
use extrinsic_shape::shape_space::{chord_distance, extrinsic_mean, Preshape, DEFAULT_GAP_TOL};
use extrinsic_shape::synthetic::{random_preshape, IsotropicModel};
use extrinsic_shape::ShapeError;
use num_complex::Complex64;

use common::s_n_squared_oracle;

fn dataset(seed: u64, n: usize, k: usize, sigma: f64) -> (Vec<Preshape>, Preshape) {
    let mut rng = seeded(seed);
    let model = IsotropicModel::new(random_preshape(k, &mut rng), sigma);
    let sample = model.sample(n, &mut rng);
    let m0 = random_preshape(k, &mut rng);
    (sample, m0)
}

#[test]
fn s_n_squared_matches_loop_oracle() {
    for seed in 0..50 {
        let (sample, m0) = dataset(seed, 12, 7, 0.3);
        let (_, eigen) = extrinsic_mean(&sample, DEFAULT_GAP_TOL).unwrap();
        let oracle = s_n_squared_oracle(&sample, &eigen, &m0);
        let lib = TestStatistics::compute(&sample, &m0).unwrap().s_n_squared;
        assert!((lib - oracle).abs() <= 1e-12 * oracle.abs(), "{lib} vs {oracle}");
    }
}

#[test]
fn t_n_decreases_in_delta() {
    let (sample, m0) = dataset(1, 40, 6, 0.2);
    let mut previous = f64::INFINITY;
    for i in 1..=50 {
        let d = 0.03 * i as f64;
        let t = neighborhood_test(&sample, &m0, &TestConfig::new(d, 0.05).unwrap()).unwrap().t_n;
        assert!(t < previous);
        previous = t;
    }
}

#[test]
fn hand_computed_statistic() {
    let (sample, m0) = dataset(2, 25, 5, 0.25);
    let stats = TestStatistics::compute(&sample, &m0).unwrap();
    let (mean, _) = extrinsic_mean(&sample, DEFAULT_GAP_TOL).unwrap();
    let phi = chord_distance(&mean, &m0).unwrap().powi(2);
    assert!((stats.phi - phi).abs() < 1e-14);
    let delta = 0.4;
    let r = stats.test(&TestConfig::new(delta, 0.1).unwrap()).unwrap();
    let t = 5.0 * (phi - delta * delta) / stats.s_n();
    assert!((r.t_n - t).abs() < 1e-12);
    assert_eq!(r.reject, t > normal_quantile(0.9));
    assert!((r.p_value - (1.0 - extrinsic_shape::inference::normal_cdf(t))).abs() < 1e-12);
    let star2 = phi - normal_quantile(0.9) * stats.s_n() / 5.0;
    assert!((r.critical_delta - star2.max(0.0).sqrt()).abs() < 1e-14);
}

#[test]
fn critical_delta_inverts_the_test() {
    for seed in 0..30 {
        let (sample, m0) = dataset(100 + seed, 30, 6, 0.2);
        for alpha in [0.01, 0.05, 0.2] {
            let star = critical_delta(&sample, &m0, alpha).unwrap();
            assert!(star > 0.0);
            let rejects = |d: f64| {
                neighborhood_test(&sample, &m0, &TestConfig::new(d, alpha).unwrap()).unwrap().reject
            };
            assert!(rejects(star * 0.9999));
            assert!(!rejects(star * 1.0001));
        }
    }
}

#[test]
fn invariant_to_phases_of_observations_and_m0() {
    let (sample, m0) = dataset(3, 20, 6, 0.3);
    let rotated: Vec<Preshape> = sample
        .iter()
        .enumerate()
        .map(|(i, g)| g.rotated(Complex64::from_polar(1.0, i as f64)))
        .collect();
    let a = TestStatistics::compute(&sample, &m0).unwrap();
    let b = TestStatistics::compute(&rotated, &m0.rotated(Complex64::from_polar(1.0, 2.0))).unwrap();
    assert!((a.phi - b.phi).abs() < 1e-12);
    assert!((a.s_n_squared - b.s_n_squared).abs() < 1e-12 * a.s_n_squared);
}

#[test]
fn identical_observations_have_degenerate_variance() {
    let p = random_preshape(5, &mut seeded(4));
    let m0 = random_preshape(5, &mut seeded(5));
    let sample = vec![p.clone(), p.clone(), p];
    let stats = TestStatistics::compute(&sample, &m0).unwrap();
    assert!(stats.is_degenerate());
    let config = TestConfig::new(0.2, 0.05).unwrap();
    assert!(matches!(stats.test(&config), Err(ShapeError::DegenerateVariance)));
    // With no sampling variability the critical radius is the observed distance.
    assert!((stats.critical_delta(0.05).unwrap() - stats.phi.sqrt()).abs() < 1e-12);
}

#[test]
fn dimension_mismatch() {
    let (sample, _) = dataset(6, 10, 6, 0.2);
    let m0 = random_preshape(5, &mut seeded(1));
    assert!(matches!(
        TestStatistics::compute(&sample, &m0),
        Err(ShapeError::DimensionMismatch { .. })
    ));
}
