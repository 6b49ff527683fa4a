use std::f64::consts::TAU;

use extrinsic_shape::contour::{
    build_correspondence, canonicalize, center_of_mass, evaluate, max_edge_length,
    polygon_length, relative_length_error, select_stopping_times, Contour, Correspondence,
    ParamCurve, StoppingTimes,
};
use extrinsic_shape::rng::seeded;
use extrinsic_shape::synthetic::{random_blob, reference_contour};
use num_complex::Complex64;
use proptest::prelude::*;

fn ellipse(m: usize) -> Contour {
    Contour::new(
        (0..m)
            .map(|j| {
                let t = TAU * j as f64 / m as f64;
                Complex64::new(2.0 * t.cos(), t.sin())
            })
            .collect(),
    )
    .unwrap()
}

#[test]
fn stopping_times_invariants_over_many_seeds() {
    for seed in 0..1000 {
        let k = 3 + (seed as usize % 300);
        let s = select_stopping_times(k, &mut seeded(seed)).unwrap();
        let t = s.times();
        assert_eq!(t.len(), k);
        assert_eq!(t[0], 0.0);
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        assert!(t.iter().all(|&x| (0.0..1.0).contains(&x)));
    }
}

#[test]
fn stopping_times_are_uniform() {
    // Kolmogorov-Smirnov distance of the pooled interior times to U(0, 1).
    let mut pooled: Vec<f64> = (0..40)
        .flat_map(|s| select_stopping_times(251, &mut seeded(100 + s)).unwrap().times()[1..].to_vec())
        .collect();
    pooled.sort_by(f64::total_cmp);
    let n = pooled.len() as f64;
    let ks = pooled
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).abs().max(((i + 1) as f64 / n - x).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 0.1, "KS statistic {ks}");
    assert!(ks < 0.02, "KS statistic {ks} unexpectedly large for 10^4 draws");
}

#[test]
fn stopping_times_depend_only_on_seed() {
    let a = select_stopping_times(50, &mut seeded(9)).unwrap();
    let b = select_stopping_times(50, &mut seeded(9)).unwrap();
    let c = select_stopping_times(50, &mut seeded(10)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(select_stopping_times(2, &mut seeded(1)).is_err());
}

#[test]
fn evaluating_at_vertex_times_returns_the_vertices() {
    let curve = canonicalize(&reference_contour(333).unwrap()).unwrap();
    let back = evaluate(&curve, &curve.vertex_times()).unwrap();
    assert_eq!(back.points(), curve.vertices());
}

#[test]
fn evaluated_points_lie_on_the_polygon() {
    let curve = canonicalize(&ellipse(64)).unwrap();
    let times = select_stopping_times(500, &mut seeded(3)).unwrap();
    let kgon = evaluate(&curve, &times).unwrap();
    let v = curve.vertices();
    for p in kgon.points() {
        let on_edge = (0..v.len()).any(|i| {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            let cross = ((b - a).conj() * (p - a)).im;
            let t = ((b - a).conj() * (p - a)).re / (b - a).norm_sqr();
            cross.abs() < 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&t)
        });
        assert!(on_edge, "{p} is not on the curve");
    }
}

#[test]
fn arclength_fraction_matches_distance_along_a_square() {
    let sq = Contour::new(vec![
        Complex64::new(1.0, -1.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(-1.0, 1.0),
        Complex64::new(-1.0, -1.0),
    ])
    .unwrap();
    let curve = canonicalize(&sq).unwrap();
    assert_eq!(polygon_length(&curve), 8.0);
    let start = curve.vertices()[0];
    // All corners tie for farthest; the one at 45 degrees wins.
    assert_eq!(start, Complex64::new(1.0, 1.0));
    let times = StoppingTimes::new(vec![0.0, 0.0625, 0.25, 0.5]).unwrap();
    let pts = evaluate(&curve, &times).unwrap();
    assert_eq!(pts.points()[0], start);
    assert!((pts.points()[1] - Complex64::new(0.5, 1.0)).norm() < 1e-15);
    assert_eq!(pts.points()[2], Complex64::new(-1.0, 1.0));
    assert_eq!(pts.points()[3], Complex64::new(-1.0, -1.0));
}

#[test]
fn canonical_form_is_invariant_to_start_and_translation() {
    let base = reference_contour(180).unwrap();
    let curve = canonicalize(&base).unwrap();
    let mut pts = base.into_points();
    pts.rotate_left(77);
    let shift = Complex64::new(13.0, -4.0);
    let moved = Contour::new(pts.iter().map(|p| p + shift).collect()).unwrap();
    let curve2 = canonicalize(&moved).unwrap();
    for (a, b) in curve.vertices().iter().zip(curve2.vertices()) {
        assert!((a + shift - b).norm() < 1e-12);
    }
    let com = center_of_mass(&curve2).unwrap() - center_of_mass(&curve).unwrap();
    assert!((com - shift).norm() < 1e-12);
}

#[test]
fn union_of_one_equals_shared() {
    let curve = canonicalize(&ellipse(40)).unwrap();
    let curves = vec![curve];
    let a = build_correspondence(&curves, &Correspondence::Shared(25), &mut seeded(5)).unwrap();
    let b = build_correspondence(&curves, &Correspondence::Union(vec![25]), &mut seeded(5)).unwrap();
    assert_eq!(a, b);
    let two = vec![curves[0].clone(), curves[0].clone()];
    let u = build_correspondence(&two, &Correspondence::Union(vec![10, 15]), &mut seeded(5)).unwrap();
    assert_eq!(u.k(), 24);
    assert!(build_correspondence(&two, &Correspondence::Union(vec![10]), &mut seeded(5)).is_err());
}

#[test]
fn in_order_parameterization_keeps_the_start() {
    let curve = canonicalize(&ellipse(50)).unwrap();
    let kgon = evaluate(&curve, &select_stopping_times(12, &mut seeded(8)).unwrap()).unwrap();
    let p = ParamCurve::in_order(&kgon);
    assert_eq!(p.vertices(), kgon.points());
    assert!((p.total_length() - kgon.perimeter()).abs() < 1e-12);
}

#[test]
fn convex_kgons_are_shorter_and_converge() {
    let curve = canonicalize(&ellipse(2000)).unwrap();
    let mut previous = f64::INFINITY;
    for k in [20, 80, 320, 1280] {
        let kgon = evaluate(&curve, &select_stopping_times(k, &mut seeded(k as u64)).unwrap()).unwrap();
        let err = relative_length_error(curve.total_length(), &kgon).unwrap();
        assert!(err >= 0.0);
        assert!(max_edge_length(&kgon) < previous);
        previous = max_edge_length(&kgon);
    }
    assert!(relative_length_error(0.0, &ellipse(5)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_blobs_canonicalize_ccw(seed in any::<u64>(), m in 20usize..200) {
        let blob = random_blob(&mut seeded(seed), m).unwrap();
        prop_assert!(blob.is_simple());
        let curve = canonicalize(&blob).unwrap();
        prop_assert!(curve.to_contour().signed_area() > 0.0);
        let center = center_of_mass(&curve).unwrap();
        let d0 = (curve.vertices()[0] - center).norm();
        prop_assert!(curve.vertices().iter().all(|v| (v - center).norm() <= d0 + 1e-12));
        // Idempotent.
        prop_assert_eq!(canonicalize(&curve.to_contour()).unwrap(), curve);
    }

    #[test]
    fn kgon_of_blob_has_k_points(seed in any::<u64>(), k in 3usize..400) {
        let curve = canonicalize(&random_blob(&mut seeded(seed), 150).unwrap()).unwrap();
        let times = select_stopping_times(k, &mut seeded(seed ^ 1)).unwrap();
        let kgon = evaluate(&curve, &times).unwrap();
        prop_assert_eq!(kgon.len(), k);
        prop_assert_eq!(kgon.points()[0], curve.vertices()[0]);
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    let p = |x: f64, y: f64| Complex64::new(x, y);
    assert!(Contour::new(vec![p(0.0, 0.0), p(1.0, 0.0)]).is_err());
    assert!(Contour::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).is_err());
    assert!(Contour::from_raw(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]).is_ok());
    assert!(StoppingTimes::new(vec![0.1, 0.2]).is_err());
    assert!(StoppingTimes::new(vec![0.0, 0.2, 0.2]).is_err());
    assert!(StoppingTimes::new(vec![0.0, 1.0]).is_err());
}
