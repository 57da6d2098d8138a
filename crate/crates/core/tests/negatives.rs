use fusionk_core::fusion::{self, pf_dimensions, FusionTable};
use fusionk_core::model::{self, build_model};
use fusionk_core::{tolerance, Simple};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn table(k: usize) -> FusionTable {
    model::fusion_table(&build_model(k).unwrap()).unwrap()
}

#[test]
fn bumped_coefficient_breaks_frobenius() {
    let mut t = table(0);
    let (x, y, z) = (Simple::Beta(3), Simple::Gamma(3), Simple::Alpha(0));
    t.set(x, y, z, 2).unwrap();
    let v = fusion::verify_frobenius(&t).unwrap_err();
    assert_eq!(v.check, "frobenius");
}

#[test]
fn wrong_g_cubed_fails_the_fg_family() {
    let mut t = table(0);
    t.set(Simple::G, Simple::G, Simple::G, 3).unwrap();
    let report = fusion::crosscheck(&t).unwrap();
    let failing: Vec<_> = report.families.iter().filter(|f| !f.passed()).map(|f| f.family).collect();
    assert!(failing.contains(&"fg"), "{failing:?}");
    assert!(!report.passed());
}

#[test]
fn seeded_corruptions_break_associativity() {
    let base = table(1);
    let entries: Vec<_> = base.entries().filter(|e| !e.0.is_unit() && !e.1.is_unit()).collect();
    let mut rng = StdRng::seed_from_u64(20);
    for _ in 0..10 {
        let &(x, y, z, n) = entries.choose(&mut rng).unwrap();
        let mut t = base.clone();
        t.set(x, y, z, n + 1).unwrap();
        assert!(fusion::verify_associativity(&t).is_err(), "{x}·{y} → {z}");
    }
}

#[test]
fn corrupted_identity_and_graph() {
    let mut t = table(0);
    t.set(Simple::Alpha(0), Simple::Beta(1), Simple::Gamma(1), 1).unwrap();
    assert!(fusion::verify_identity_conjugation(&t).is_err());

    let mut t = table(0);
    t.set(Simple::Beta(3), Simple::Alpha(1), Simple::Beta(2), 0).unwrap();
    assert!(fusion::verify_graph_recovery(&t).is_err());
    let dims = pf_dimensions(0).unwrap();
    assert!(fusion::verify_dimension(&t, &dims, tolerance::DIMENSION).is_err());
}

#[test]
fn perturbed_trace_fails_rounding() {
    let mut m = build_model(2).unwrap();
    m.trace.weights[3] *= 1.0 + 1e-3;
    assert!(model::extract(&m, tolerance::ROUNDING).is_err());
}

#[test]
fn eta_does_not_satisfy_the_xi_identities() {
    let m = build_model(1).unwrap();
    let r = model::xi_residuals(&m, &model::eta(&m));
    assert!(r[0] > 1e-3 && r[1] > 1e-3);
}
