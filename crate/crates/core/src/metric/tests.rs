use super::*;
use crate::groups::{make_group, random_group_element, GroupId};
use crate::linalg::{expm, from_real, real_matrix};

#[test]
fn identical_elements() {
    for id in [GroupId::Su2, GroupId::So2m(2), GroupId::Sp2m(1), GroupId::Heisenberg(1)] {
        let s = make_group(id).unwrap();
        let g = random_group_element(&s, 1.0, 4).unwrap().element;
        let d = distance_best(&s, &g, &g).unwrap();
        assert!(d.value < 1e-9, "{id}: {}", d.value);
    }
}

#[test]
fn rounding_level_identity_converges() {
    // g⁻¹g for this element is I up to 1e−16, where unshifted QR stalls
    let s = make_group(GroupId::So2m(2)).unwrap();
    let g = random_group_element(&s, 0.6, 204).unwrap().element;
    let d = distance_closed_form(&s, &g, &g).unwrap();
    assert!(d.value < 1e-12 && d.certified_exact);
}

#[test]
fn su2_rotation_angle() {
    let s = make_group(GroupId::Su2).unwrap();
    let alpha = PI / 2.0;
    let g = s.exp(&s.basis[1].scale(alpha)).unwrap();
    let d = distance_closed_form(&s, &g, &s.identity()).unwrap();
    assert!((d.value - alpha).abs() < 1e-12);
    assert!(d.certified_exact);
    assert_eq!(d.kind, MetricKind::ExactClosedForm);
}

#[test]
fn heisenberg_closed_form() {
    let s = make_group(GroupId::Heisenberg(1)).unwrap();
    let g = s.heisenberg_group(&[1.0, 0.0], 0.0).unwrap();
    let h = s.heisenberg_group(&[0.0, 1.0], 0.0).unwrap();
    let d = distance_best(&s, &g, &h).unwrap();
    assert!((d.value - 1.5).abs() < 1e-14);
    assert_eq!(d.kind, MetricKind::ExactClosedForm);
    assert!(!d.certified_exact);
}

#[test]
fn log_bound_examples() {
    let sp = make_group(GroupId::Sp2m(1)).unwrap();
    let h = sp.group_element(expm(&real_matrix(2, &[0.1, 0.0, 0.0, -0.1])).unwrap()).unwrap();
    let d = distance_log_bound(&sp, &sp.identity(), &h).unwrap();
    assert!((d.value - 0.1 * 2f64.sqrt()).abs() < 1e-12);

    let so4 = make_group(GroupId::So2m(2)).unwrap();
    let b21 = crate::groups::so_generator(2, 2, 1).unwrap();
    let h = so4.group_element(expm(&(b21 * crate::linalg::c(0.3))).unwrap()).unwrap();
    let d = distance_log_bound(&so4, &so4.identity(), &h).unwrap();
    assert!((d.value - 0.3).abs() < 1e-12);
}

#[test]
fn closed_form_rejects_non_invariant() {
    let sp = make_group(GroupId::Sp2m(1)).unwrap();
    let g = sp.identity();
    assert!(matches!(distance_closed_form(&sp, &g, &g), Err(Error::NotApplicable(_))));
}

#[test]
fn single_segment_is_log_bound() {
    let sp = make_group(GroupId::Sp2m(1)).unwrap();
    let g = random_group_element(&sp, 1.0, 11).unwrap().element;
    let h = random_group_element(&sp, 1.0, 12).unwrap().element;
    let a = distance_log_bound(&sp, &g, &h).unwrap();
    let opts = RefineOptions { segments: 1, iters: 5, seed: 0 };
    let b = distance_refined(&sp, &g, &h, &opts).unwrap();
    assert!((a.value - b.value).abs() < 1e-12);
}

#[test]
fn refinement_beats_log_on_squeeze_rotation() {
    let sp = make_group(GroupId::Sp2m(1)).unwrap();
    let sq = expm(&real_matrix(2, &[0.8, 0.0, 0.0, -0.8])).unwrap();
    let rot = expm(&from_real(&(crate::groups::omega(1) * 1.2))).unwrap();
    let h = sp.group_element(&sq * &rot).unwrap();
    let g = sp.identity();
    let log = distance_log_bound(&sp, &g, &h).unwrap();
    let mut prev = log.value;
    for k in [2, 4, 8] {
        let r = distance_refined(&sp, &g, &h, &RefineOptions { segments: k, iters: 6, seed: 1 }).unwrap();
        assert!(r.value <= prev + 1e-8, "K={k}: {} > {prev}", r.value);
        assert!(r.witness_residual(&sp, &g, &h).unwrap() < 1e-8);
        prev = r.value;
    }
    assert!(prev <= log.value);
}

#[test]
fn refinement_does_not_beat_geodesic() {
    let su2 = make_group(GroupId::Su2).unwrap();
    for seed in 0..5 {
        let g = random_group_element(&su2, 1.0, seed).unwrap().element;
        let h = random_group_element(&su2, 1.0, seed + 100).unwrap().element;
        let exact = distance_closed_form(&su2, &g, &h).unwrap();
        let r = distance_refined(&su2, &g, &h, &RefineOptions::default()).unwrap();
        assert!(r.value >= exact.value - 1e-6);
        assert!(r.value <= exact.value + 1e-8);
    }
}

#[test]
fn branch_failure_falls_back_to_refinement() {
    let so2 = make_group(GroupId::So2m(1)).unwrap();
    let h = so2.group_element(real_matrix(2, &[-1.0, 0.0, 0.0, -1.0])).unwrap();
    let g = so2.identity();
    assert!(distance_log_bound(&so2, &g, &h).is_err());
    let d = distance_best(&so2, &g, &h).unwrap();
    assert!(d.witness_residual(&so2, &g, &h).unwrap() < 1e-8);
    // B_21 has unit norm and rotates by angle x/√2
    assert!((d.value - PI * 2f64.sqrt()).abs() < 1e-6, "{}", d.value);
}
