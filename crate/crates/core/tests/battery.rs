use fusionk_core::fusion::{self, pf_dimensions};
use fusionk_core::model::{self, build_model};
use fusionk_core::{tolerance, Simple};

#[test]
fn model_table_passes_every_check_up_to_k10() {
    for k in 0..=10 {
        let m = build_model(k).unwrap();
        model::orthonormality_check(&m, tolerance::ORTHONORMALITY).unwrap();
        let (t, residual) = model::extract(&m, tolerance::ROUNDING).unwrap();
        assert!(residual < tolerance::ROUNDING, "k = {k}: {residual:e}");
        assert_eq!(t.len(), 8 * k + 18);

        fusion::verify_frobenius(&t).unwrap();
        fusion::verify_associativity(&t).unwrap();
        fusion::verify_identity_conjugation(&t).unwrap();
        fusion::verify_graph_recovery(&t).unwrap();
        let dims = pf_dimensions(k).unwrap();
        fusion::verify_dimension(&t, &dims, tolerance::DIMENSION).unwrap();

        let report = fusion::crosscheck(&t).unwrap();
        for family in &report.families {
            assert!(family.passed(), "k = {k}, {}: {:?}", family.family, family.mismatches);
            assert!(family.checked > 0);
        }
        model::xi_identities(&m, tolerance::MODEL_IDENTITY).unwrap();
        model::lemma33_checks(&m, tolerance::MODEL_IDENTITY).unwrap();
    }
}

#[test]
fn spot_values() {
    use Simple::*;
    let t0 = model::fusion_table(&build_model(0).unwrap()).unwrap();
    assert_eq!(t0.get(G, G, G), Some(2));
    assert_eq!(t0.get(Beta(3), Gamma(3), Alpha(0)), Some(1));
    assert_eq!(t0.get(Alpha(1), AlphaBar(1), Alpha(0)), Some(1));
    assert_eq!(t0.get(Alpha(0), Beta(1), Beta(1)), Some(1));
    assert_eq!(t0.get(Alpha(0), Beta(1), Gamma(1)), Some(0));
    assert_eq!(t0.product(Beta(3), Alpha(1)), vec![(Beta(2), 1)]);
    assert_eq!(t0.product(F, AlphaBar(1)), vec![(AlphaBar(3), 1)]);

    let t1 = model::fusion_table(&build_model(1).unwrap()).unwrap();
    let mut got = t1.product(G, AlphaBar(1));
    got.sort();
    let mut want = vec![(AlphaBar(7), 1), (BetaBar2, 1), (GammaBar2, 1)];
    want.sort();
    assert_eq!(got, want);
    assert_eq!(t1.get(F, G, G), t1.get(G, F, G));
    assert_eq!(t1.get(G, G, G), Some(7));
}

#[test]
fn dimensions_of_small_products() {
    // d(α₁)² = d(α₀) + d(α₂) from the α₁ row of Γ_0
    let k = 0;
    let t = model::fusion_table(&build_model(k).unwrap()).unwrap();
    let dims = pf_dimensions(k).unwrap();
    let d = |x: Simple| dims[t.index_of(x).unwrap()];
    let a1 = d(Simple::Alpha(1));
    assert!((a1 * a1 - d(Simple::Alpha(0)) - d(Simple::Alpha(2))).abs() < 1e-12);
    assert_eq!(d(Simple::Alpha(0)), 1.0);
    assert_eq!(d(Simple::AlphaPrime(0)), 1.0);
    let g = d(Simple::G);
    let expansion: f64 = t.product(Simple::G, Simple::G).iter().map(|&(z, n)| n as f64 * d(z)).sum();
    assert!((expansion - g * g).abs() < 1e-9 * g * g);
}

#[test]
fn beta3_power_expansion_up_to_k5() {
    for k in 0..=5 {
        let t = model::fusion_table(&build_model(k).unwrap()).unwrap();
        fusionk_core::closed_form::beta3_power_check(&t).unwrap();
    }
}
