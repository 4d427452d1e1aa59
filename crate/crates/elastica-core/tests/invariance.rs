use elastica_core::curve::{self, CurveGeometry};
use elastica_core::energy::{self, EnergyReport};
use elastica_core::{shapes, verify, DiscreteCurve};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const REL: f64 = 1e-10;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL * a.abs().max(b.abs()).max(1e-300)
}

struct Invariants {
    report: EnergyReport,
    norms: Vec<f64>,
}

fn invariants(c: &DiscreteCurve, lambda: f64) -> Invariants {
    let g = CurveGeometry::new(c).unwrap();
    let mut norms = vec![
        energy::lp_norm_kappa(&g, 1.0).unwrap(),
        energy::lp_norm_kappa(&g, 2.0).unwrap(),
        energy::lp_norm_kappa(&g, 4.0).unwrap(),
        energy::lp_norm_kappa(&g, f64::INFINITY).unwrap(),
        energy::sobolev_norm_kappa(&g, 2),
        curve::total_abs_curvature(&g),
    ];
    norms.push(curve::total_length(&g));
    Invariants { report: EnergyReport::new(&g, lambda), norms }
}

fn assert_same(a: &Invariants, b: &Invariants) {
    let (ra, rb) = (&a.report, &b.report);
    for (x, y) in [
        (ra.elastic, rb.elastic),
        (ra.penalized, rb.penalized),
        (ra.length, rb.length),
        (ra.grad_l2, rb.grad_l2),
    ] {
        assert!(close(x, y), "{x:e} vs {y:e}");
    }
    for (x, y) in a.norms.iter().zip(&b.norms) {
        assert!(close(*x, *y), "{x:e} vs {y:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn energies_and_norms_are_isometry_invariant(
        seed in any::<u64>(),
        lambda in 0.0..2.0f64,
        p in -50.0..50.0f64,
        r in prop::sample::select(vec![0.1, 3.0, 10.0]),
    ) {
        let c = verify::random_curve(128, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let base = invariants(&c, lambda);
        assert_same(&base, &invariants(&c.translate_h(p), lambda));
        assert_same(&base, &invariants(&c.dilate(r).unwrap(), lambda));
    }
}

#[test]
fn perturbed_circle_is_invariant_under_catalogue_dilations() {
    let c = shapes::perturbed_circle(2.0, 1.0, 3, 0.05, 256).unwrap();
    let base = invariants(&c, 0.5);
    for r in [0.1, 3.0, 10.0] {
        assert_same(&base, &invariants(&c.dilate(r).unwrap(), 0.5));
    }
}

#[test]
fn verify_checks_are_translation_invariant() {
    // A coarser h keeps the cancellation in the t-difference well above roundoff.
    let h = 1e-3;
    for fam in verify::Family::catalogue() {
        let moved = fam.translate_h(4.5);
        let a = verify::check_line_element_evolution(&fam, 128, 0.0, h).unwrap();
        let b = verify::check_line_element_evolution(&moved, 128, 0.0, h).unwrap();
        assert!((a - b).abs() < 1e-10, "{}: {a:e} {b:e}", fam.name());
        let a = verify::check_kappa_evolution(&fam, 128, 0.0, h, -1.0).unwrap();
        let b = verify::check_kappa_evolution(&moved, 128, 0.0, h, -1.0).unwrap();
        assert!((a - b).abs() < 1e-10, "{}: {a:e} {b:e}", fam.name());
    }
}

#[test]
fn verify_residuals_of_metric_quantities_are_dilation_invariant() {
    // ds and |κ|_g do not change under dilation, so neither do the residuals.
    for fam in verify::Family::catalogue() {
        let a = verify::check_kappa_evolution(&fam, 128, 0.0, 1e-5, -1.0).unwrap();
        let b = verify::check_kappa_evolution(&fam.dilate(3.0), 128, 0.0, 1e-5, -1.0).unwrap();
        assert!((a - b).abs() <= 1e-6 * a.max(1e-12), "{}: {a:e} {b:e}", fam.name());
    }
}
