use std::f64::consts::{PI, SQRT_2, TAU};

use approx::assert_relative_eq;
use elastica_core::curve::{self, CurveGeometry};
use elastica_core::energy::{self, willmore_relation};
use elastica_core::hyperbolic::{ball_in_chart, geodesic_distance, inner};
use elastica_core::{shapes, verify, DiscreteCurve, HPoint, TangentVec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn geom(c: &DiscreteCurve) -> CurveGeometry {
    CurveGeometry::new(c).unwrap()
}

#[test]
fn metric_is_conformal_with_factor_inverse_y_squared() {
    let p = HPoint::new(0.0, 2.0).unwrap();
    let u = TangentVec::new(p, 1.0, 0.0);
    let v = TangentVec::new(p, 0.0, 1.0);
    assert_relative_eq!(inner(&p, &u, &u).unwrap(), 0.25, epsilon = 1e-15);
    assert_eq!(inner(&p, &u, &v).unwrap(), 0.0);
    assert!(HPoint::new(0.0, 0.0).is_err());
}

#[test]
fn distance_along_a_vertical_geodesic_is_log_ratio() {
    let a = HPoint::new(0.0, 1.0).unwrap();
    let b = HPoint::new(0.0, std::f64::consts::E).unwrap();
    assert_relative_eq!(geodesic_distance(&a, &b), 1.0, epsilon = 1e-14);
}

#[test]
fn ball_boundary_is_at_distance_rho() {
    let c = HPoint::new(1.3, 0.7).unwrap();
    let (center, r) = ball_in_chart(&c, 0.8).unwrap();
    for k in 0..16 {
        let th = TAU * k as f64 / 16.0;
        let q = HPoint::new(center.y1() + r * th.cos(), center.y2() + r * th.sin()).unwrap();
        assert_relative_eq!(geodesic_distance(&c, &q), 0.8, epsilon = 1e-12);
    }
}

#[test]
fn clifford_circle_has_length_two_pi() {
    let c = shapes::circle(SQRT_2, 1.0, 256).unwrap();
    assert!((curve::spline_length(&c).unwrap() - TAU).abs() < 1e-6);
}

#[test]
fn curvature_converges_at_second_order() {
    // Euclidean circle of radius r about height c has |κ|_g = c/r.
    let grids = [64usize, 128, 256, 512];
    let errs: Vec<f64> = grids
        .iter()
        .map(|&n| {
            let g = geom(&shapes::circle(2.0, 1.0, n).unwrap());
            g.kappa_norm.iter().map(|k| (k - 2.0).abs()).fold(0.0, f64::max)
        })
        .collect();
    let steps: Vec<f64> = grids.iter().map(|&n| 1.0 / n as f64).collect();
    let p = verify::fitted_order(&steps, &errs);
    assert!((1.8..=2.2).contains(&p), "order {p}");
}

#[test]
fn curvature_is_normal() {
    let g = geom(&shapes::perturbed_circle(2.0, 1.0, 3, 0.1, 256).unwrap());
    for i in 0..256 {
        assert!(g.kappa[i].v[0].is_finite());
        let t = [g.tangent[i].v[0], g.tangent[i].v[1]];
        let k = g.kappa[i].v;
        let y = g.kappa[i].base.y2();
        assert!(((t[0] * k[0] + t[1] * k[1]) / (y * y)).abs() < 1e-10);
    }
}

#[test]
fn willmore_correspondence_on_clifford_circle() {
    let c = shapes::circle(SQRT_2, 1.0, 512).unwrap();
    let w = willmore_relation(&c).unwrap();
    assert!((w.elastic - TAU).abs() <= 1e-3, "{}", w.elastic);
    assert!((w.willmore - 2.0 * PI * PI).abs() <= 1e-2, "{}", w.willmore);
    assert!((w.w_over_e - PI).abs() <= 1e-3);
    assert!((w.two_over_pi_gap - (1.0 / PI - 2.0 / PI)).abs() < 1e-3);
}

#[test]
fn first_variation_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..20 {
        let c = verify::random_curve(128, &mut rng).unwrap();
        let e = verify::check_first_variation(&c, 0.5, 5, k).unwrap();
        assert!(e <= 1e-4, "curve {k}: {e:e}");
    }
}

#[test]
fn fenchel_total_curvature_on_constructed_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut curves = vec![
        shapes::circle(SQRT_2, 1.0, 256).unwrap(),
        shapes::perturbed_circle(2.0, 1.0, 5, 0.2, 256).unwrap(),
        shapes::geodesic_circle(HPoint::new(0.0, 1.0).unwrap(), 3.0, 256).unwrap(),
    ];
    for _ in 0..10 {
        curves.push(verify::random_curve(256, &mut rng).unwrap());
    }
    for c in &curves {
        let g = geom(c);
        assert!(curve::total_abs_curvature(&g) >= TAU * (1.0 - 1e-2));
        let e = energy::elastic_energy(&g);
        assert!(curve::total_length(&g) >= energy::fenchel_length_lower_bound(e).unwrap());
    }
}
