use elastica_core::verify::{self, Family, Measure, SuiteConfig};

#[test]
fn stationary_family_is_exact() {
    let f = Family::stationary();
    assert!(verify::check_line_element_evolution(&f, 256, 0.0, 1e-5).unwrap() <= 1e-10);
    assert!(verify::check_kappa_evolution(&f, 256, 0.0, 1e-5, -1.0).unwrap() <= 1e-10);
}

#[test]
fn translating_circle_residual_is_pure_discretization_error() {
    // An isometry: the time derivative of ds is exactly zero, so only the
    // O(N⁻²) error of the spatial terms remains.
    let f = Family::translating_circle();
    let r: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&n| verify::check_line_element_evolution(&f, n, 0.0, 1e-5).unwrap())
        .collect();
    assert!(r[0] / r[1] > 3.5 && r[1] / r[2] > 3.5, "{r:?}");
}

#[test]
fn breathing_circle_converges_at_second_order_in_space_and_time() {
    let f = Family::breathing_circle();
    let grids = [64usize, 128, 256, 512];
    let steps: Vec<f64> = grids.iter().map(|&n| 1.0 / n as f64).collect();
    let errs: Vec<f64> = grids
        .iter()
        .map(|&n| verify::check_kappa_evolution(&f, n, 0.0, 1e-5, -1.0).unwrap())
        .collect();
    let p = verify::fitted_order(&steps, &errs);
    assert!((1.8..=2.2).contains(&p), "{p}");
}

#[test]
fn suite_records_cover_every_check() {
    let cfg = SuiteConfig { first_variation_curves: 2, ..SuiteConfig::default() };
    let recs = verify::run_suite(&cfg).unwrap();
    for name in [
        "line_element_evolution",
        "kappa_evolution",
        "integration_identity",
        "first_variation",
        "perp_vs_full_derivative",
    ] {
        assert!(recs.iter().any(|r| r.check == name), "{name}");
    }
    for r in &recs {
        assert_eq!(r.pass, r.value >= r.lo && r.value <= r.hi);
        if r.measure != Measure::Residual {
            assert!(r.pass, "{} {} order {}", r.check, r.family, r.value);
        }
    }
}
