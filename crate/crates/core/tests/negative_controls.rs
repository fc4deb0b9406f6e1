//! Every check must reject a map or operator built to violate it, and accept
//! the unmodified one on the same samples.

mod common;

use std::sync::Arc;

use pcretract::verification::{
    check_composition_continuity, check_cover, check_norm_identity_open_ball, check_operator_properties_with,
    check_piece_continuity, check_retraction_identity, corrupt, CheckStatus, OperatorUnderTest,
};
use pcretract::{build, BuildOptions, ConstructionId, NormKind, PiecewiseMap, ScalarField};

const N: usize = 5000;

fn sphere() -> PiecewiseMap<f64> {
    common::map(ConstructionId::Sphere, 2, NormKind::euclidean())
}

fn fields(phi: &PiecewiseMap<f64>) -> Vec<ScalarField<f64>> {
    ["const:1", "coord:0", "coord:1", "coord:0*coord:1"]
        .iter()
        .map(|s| ScalarField::parse(s, phi.codomain_target().clone(), phi.dim()).unwrap())
        .collect()
}

fn operator_reports(op: OperatorUnderTest) -> Vec<(String, CheckStatus)> {
    let phi = Arc::new(sphere());
    let a = common::retract_sampler(&phi, 4);
    let x = common::domain_sampler(&phi, 5);
    check_operator_properties_with(op, &phi, &fields(&phi), &a, &x, N, 1e-9)
        .unwrap()
        .into_iter()
        .map(|r| (r.check, r.status))
        .collect()
}

fn status(reports: &[(String, CheckStatus)], name: &str) -> CheckStatus {
    reports.iter().find(|(n, _)| n == name).unwrap().1
}

#[test]
fn identity_rejects_a_halved_map() {
    for id in ConstructionId::ALL {
        let m = common::map(id, id.default_dim(), NormKind::euclidean());
        let s = common::retract_sampler(&m, 1);
        assert!(check_retraction_identity(&m, &s, N, 1e-12).unwrap().passed(), "{id}");
        let bad = corrupt::halved(&m);
        assert!(check_retraction_identity(&bad, &s, N, 1e-12).unwrap().failed(), "{id}");
    }
}

#[test]
fn cover_rejects_a_shrinking_witness() {
    for id in ConstructionId::ALL {
        let m = common::map(id, id.default_dim(), NormKind::euclidean());
        let s = common::domain_sampler(&m, 2);
        assert!(check_cover(&m, &s, N, 10).unwrap().passed(), "{id}");
        let bad = corrupt::shrinking_witness(&m, 6).unwrap();
        assert!(check_cover(&bad, &s, N, 10).unwrap().failed(), "{id}");
    }
}

#[test]
fn cover_rejects_the_literal_sphere_witness() {
    let m = build::<f64>(ConstructionId::Sphere, &BuildOptions { paper_witness: true, ..Default::default() }).unwrap();
    let r = check_cover(&m, &common::domain_sampler(&m, 2), N, 10).unwrap();
    assert!(r.failed());
    assert_eq!(r.max_violation, 1.0);
    assert_eq!(r.witness_points, vec![vec![0.0, 0.0]]);
}

#[test]
fn continuity_rejects_a_jump_inside_a_piece() {
    let m = sphere();
    let bad = corrupt::with_jump(&m, 0, 0.6, 1.0).unwrap();
    for n in [2, 5] {
        assert!(check_piece_continuity(&m, n, 7, 20_000, 0.05, 1.0 + 1e-6).unwrap().passed());
        assert!(check_piece_continuity(&bad, n, 7, 20_000, 0.05, 1.0 + 1e-6).unwrap().failed(), "n={n}");
    }
}

#[test]
fn continuity_rejects_an_understated_constant() {
    let m = sphere();
    // piece 2 declares 4 and the best Euclidean constant there is 2
    let r = check_piece_continuity(&m, 2, 7, 20_000, 0.05, 0.25).unwrap();
    assert!(r.failed());
    assert!(r.max_violation > 1.5);
}

#[test]
fn norm_identity_rejects_the_identity() {
    let m = common::map(ConstructionId::OpenBall, 3, NormKind::euclidean());
    let s = common::domain_sampler(&m, 3);
    assert!(check_norm_identity_open_ball(&m, &s, N, 1e-12).unwrap().passed());
    let bad = corrupt::identity_in_place(&m);
    assert!(check_norm_identity_open_ball(&bad, &s, N, 1e-12).unwrap().failed());
    let halved = corrupt::halved(&m);
    assert!(check_norm_identity_open_ball(&halved, &s, N, 1e-12).unwrap().failed());
}

#[test]
fn composition_passes_every_operator_check() {
    let reports = operator_reports(OperatorUnderTest::Composition);
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|(_, s)| *s == CheckStatus::Pass), "{reports:?}");
}

#[test]
fn a_shifted_operator_breaks_linearity_extension_and_isometry() {
    let reports = operator_reports(OperatorUnderTest::Shifted(0.25));
    assert_eq!(status(&reports, "operator_linearity"), CheckStatus::Fail);
    assert_eq!(status(&reports, "operator_extension"), CheckStatus::Fail);
    assert_eq!(status(&reports, "operator_isometry"), CheckStatus::Fail);
    assert_eq!(status(&reports, "operator_positivity"), CheckStatus::Pass);
}

#[test]
fn a_negated_operator_breaks_positivity_and_extension() {
    let reports = operator_reports(OperatorUnderTest::Negated);
    assert_eq!(status(&reports, "operator_positivity"), CheckStatus::Fail);
    assert_eq!(status(&reports, "operator_extension"), CheckStatus::Fail);
    assert_eq!(status(&reports, "operator_linearity"), CheckStatus::Pass);
    assert_eq!(status(&reports, "operator_isometry"), CheckStatus::Pass);
}

#[test]
fn isometry_rejects_a_map_leaving_the_retract() {
    let phi = Arc::new(corrupt::halved(&sphere()));
    let a = common::retract_sampler(&phi, 4);
    let x = common::domain_sampler(&phi, 5);
    let reports = check_operator_properties_with(OperatorUnderTest::Composition, &phi, &fields(&phi), &a, &x, N, 1e-9).unwrap();
    let iso = reports.iter().find(|r| r.check == "operator_isometry").unwrap();
    assert!(iso.failed());
}

#[test]
fn composition_continuity_rejects_a_jump() {
    let phi = Arc::new(sphere());
    let f = &fields(&phi)[1];
    assert!(check_composition_continuity(&phi, f, 3, 1, 20_000, 0.05, 1.0 + 1e-6).unwrap().passed());
    let bad = Arc::new(corrupt::with_jump(&phi, 0, 0.6, 1.0).unwrap());
    assert!(check_composition_continuity(&bad, f, 3, 1, 20_000, 0.05, 1.0 + 1e-6).unwrap().failed());
}
