use std::sync::Arc;

use grtwist::enriched::module_hom_space;
use grtwist::equivalence::*;
use grtwist::exactmath::{Field, Matrix};
use grtwist::graded::{
    check_algebra_morphism, check_module, check_module_morphism, group_algebra, regular_module,
    shift_module, truncated_polynomial, GradedAlgebra, GradedMorphism,
};
use grtwist::groups::{Group, IntegerWindow};
use grtwist::twist::*;

const Q: Field = Field::Rational;

fn z2() -> Arc<GradedAlgebra> {
    Arc::new(group_algebra(&Group::cyclic(2), Q).unwrap())
}

fn plane() -> Arc<GradedAlgebra> {
    Arc::new(truncated_polynomial(&Group::integers(-12, 12).unwrap(), Q, 2, 3).unwrap())
}

#[test]
fn functor_round_trip() {
    let a = z2();
    let t = cocycle_twist(a.clone(), sign_cocycle(Q)).unwrap();
    let f = zm_forward(&t).unwrap();
    let reg = regular_module(&a);
    let image = f.module(&reg).unwrap();
    assert!(check_module(&image).passed());
    assert_eq!(image.action_table(), regular_module(f.target()).action_table());
    assert_eq!(f.inverse_module(&image).unwrap(), reg);

    // A module map survives twisting unchanged.
    let shifted = shift_module(&reg, 1).unwrap();
    let hs = module_hom_space(&reg, &shifted).unwrap();
    let h = hs.basis_element(0, 0).unwrap();
    let comps = h.blocks.clone();
    let mor = GradedMorphism::new(Q, reg.space().clone(), shifted.space().clone(), comps).unwrap();
    assert!(check_module_morphism(&mor, &reg, &shifted).unwrap().passed());
    assert_eq!(f.morphism(&mor, &reg, &shifted).unwrap(), mor);
}

#[test]
fn identity_functor() {
    let a = z2();
    let f = zm_forward(&TwistingSystem::identity(a.clone())).unwrap();
    let reg = regular_module(&a);
    assert_eq!(f.module(&reg).unwrap(), reg);
}

#[test]
fn push_and_pull() {
    let a = z2();
    let reg = regular_module(&a);
    let s1 = shift_module(&reg, 1).unwrap();
    let hs = module_hom_space(&reg, &reg).unwrap();
    let id = reg.identity_morphism();
    assert!(pushforward(&id, &hs, &hs, 0).unwrap().is_identity());
    assert!(pullback(&id, &hs, &hs, 0).unwrap().is_identity());

    // g = left multiplication by the degree-1 basis element, S_1(A) → A.
    let to = module_hom_space(&s1, &reg).unwrap();
    let from = module_hom_space(&reg, &s1).unwrap();
    let x = module_hom_space(&s1, &s1).unwrap();
    let g_elem = to.basis_element(0, 0).unwrap();
    let g = GradedMorphism::new(Q, s1.space().clone(), reg.space().clone(), g_elem.blocks.clone())
        .unwrap();
    let g_elem2 = from.basis_element(0, 0).unwrap();
    let g2 = GradedMorphism::new(Q, reg.space().clone(), s1.space().clone(), g_elem2.blocks.clone())
        .unwrap();
    // pullback(g) then pullback(g2) agrees with pullback(g ∘ g2).
    let hs_s1_reg = module_hom_space(&s1, &reg).unwrap();
    let p1 = pullback(&g, &hs, &hs_s1_reg, 0).unwrap();
    let p2 = pullback(&g2, &hs_s1_reg, &hs, 0).unwrap();
    let direct = pullback(&g.compose(&g2).unwrap(), &hs, &hs, 0).unwrap();
    assert_eq!(p2.matmul(&p1).unwrap(), direct);
    // pushforward and pullback commute.
    let f1 = pushforward(&g2, &hs, &from, 0).unwrap();
    let a1 = pullback(&g, &from, &x, 0).unwrap();
    let b1 = pullback(&g, &hs, &hs_s1_reg, 0).unwrap();
    let b2 = pushforward(&g2, &hs_s1_reg, &x, 0).unwrap();
    assert_eq!(a1.matmul(&f1).unwrap(), b2.matmul(&b1).unwrap());
}

#[test]
fn trivial_equivalence() {
    let a = z2();
    let data = EquivalenceData::from_twist(&TwistingSystem::identity(a.clone()), None).unwrap();
    assert!(check_equivalence(&data).unwrap().passed());
    assert!(data.phi().values().all(Matrix::is_identity));
    let gt = gamma_twist_phi(&data).unwrap();
    assert!(gt.report.passed(), "{}", gt.report);
    assert!(gt.phi.maps().values().all(Matrix::is_identity));
    let back = backward(&data).unwrap();
    assert!(back.report.passed());
    assert!(tau_table(&back.tau, None).unwrap().values().all(Matrix::is_identity));
    assert!(back.iso.components().values().all(Matrix::is_identity));
}

#[test]
fn sign_cocycle_pipeline() {
    let a = z2();
    let t = cocycle_twist(a.clone(), sign_cocycle(Q)).unwrap();
    let data = EquivalenceData::from_twist(&t, None).unwrap();
    let r = check_equivalence(&data).unwrap();
    assert!(r.passed(), "{r}");
    let back = backward(&data).unwrap();
    assert!(back.report.passed(), "{}", back.report);
    assert!(check_algebra_morphism(&back.iso, &back.twisted, data.target()).unwrap().passed());
    // The recovered twist is τ itself here.
    assert_eq!(tau_table(&back.tau, None).unwrap(), tau_table(&t, None).unwrap());
}

#[test]
fn quantum_plane_pipeline() {
    let a = plane();
    let t = quantum_plane_twist(a.clone(), Q.from_i64(2)).unwrap();
    let w = IntegerWindow::new(-1, 3).unwrap();
    let data = EquivalenceData::from_twist(&t, Some(w)).unwrap();
    let r = check_equivalence(&data).unwrap();
    assert!(r.passed() && r.window_verified, "{r}");
    let back = backward(&data).unwrap();
    assert!(back.report.passed(), "{}", back.report);
    assert!(back.report.window_verified);
    for d in -1..=3 {
        let expected = Matrix::new(
            Q,
            2,
            2,
            vec![Q.one(), Q.zero(), Q.zero(), Q.from_i64(2).pow(d)],
        )
        .unwrap();
        assert_eq!(back.tau.tau(d, 1).unwrap(), expected, "d = {d}");
    }
}
