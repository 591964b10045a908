use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::data::{check_equivalence, EquivalenceData};
use super::transport::{pullback, pushforward, relabel_map};
use crate::enriched::{endo_iso, module_hom_space_at, EndoIso};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::{check_algebra_morphism, GradedAlgebra, GradedMorphism};
use crate::groups::Degree;
use crate::report::{Report, Witness};
use crate::twist::{
    check_phi_family, check_twist_condition, twist_algebra, twist_from_phi, PhiFamily, TwistKind,
    TwistingSystem,
};

/// The φ-family `Γ(B) → Γ(A)` induced by an equivalence, and the twist `T`
/// of `Γ(A)` it determines.
#[derive(Clone, Debug)]
pub struct GammaTwist {
    pub endo_a: EndoIso,
    pub endo_b: EndoIso,
    pub phi: PhiFamily,
    /// `T` on `Γ(A)` and the isomorphism `Γ(B) → Γ(A)^T`, when the family
    /// passes its check.
    pub twist: Option<(TwistingSystem, GradedMorphism)>,
    pub report: Report,
}

fn require(report: Report, what: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} fails: {report}")))
    }
}

/// `φ_d(g) = S_{d⁻¹} ∘ Φ⁻¹ ∘ (t_d⁻¹)_* ∘ (t_{dg})^* ∘ S_d` on `Γ(B)_g`, as a
/// product of coordinate matrices between degree-`e` Hom spaces.
fn phi_entry(
    data: &EquivalenceData,
    gamma_a: &EndoIso,
    gamma_b: &EndoIso,
    d: Degree,
    g: Degree,
) -> Result<Matrix> {
    let grp = data.source().group();
    let e = grp.identity();
    let dg = grp.op(d, g);
    let src = data.entry(dg)?;
    let (t_dg, t_d) = (data.witness(dg)?, data.witness(d)?);
    let (a_side, b_side) = data.spaces(dg, d)?;
    let (sb_dg, sb_d) = (data.shifted_target(dg)?, data.shifted_target(d)?);

    // [[S_{dg}B, S_dB]]_e and [[Φ S_{dg}A, S_dB]]_e.
    let x1 = module_hom_space_at(&sb_dg, &sb_d, &[e])?;
    let x2 = module_hom_space_at(&src.image, &sb_d, &[e])?;

    let s_d = relabel_map(&gamma_b.gamma.homs, g, &x1, e, |p| grp.op(d, p))?;
    let pull = pullback(t_dg, &x1, &x2, e)?;
    let t_d_inv = t_d
        .inverse()
        .map_err(|h| Error::Precondition(format!("t_{d} is singular at degree {h}")))?;
    let push = pushforward(&t_d_inv, &x2, b_side, e)?;
    let phi_inv = data.phi()[&(dg, d)].inverse()?;
    let d_inv = grp.invert(d);
    let s_back = relabel_map(a_side, e, &gamma_a.gamma.homs, g, |p| grp.op(d_inv, p))?;
    s_back
        .matmul(&phi_inv)?
        .matmul(&push)?
        .matmul(&pull)?
        .matmul(&s_d)
}

pub fn gamma_twist_phi(data: &EquivalenceData) -> Result<GammaTwist> {
    require(check_equivalence(data)?, "equivalence data")?;
    let a = data.source();
    let endo_a = endo_iso(a)?;
    let endo_b = endo_iso(data.target())?;
    require(endo_a.report.clone(), "endomorphism isomorphism of the source")?;
    require(endo_b.report.clone(), "endomorphism isomorphism of the target")?;

    let grp = a.group();
    let ds: Vec<Degree> = match (grp.elements(), data.window()) {
        (Some(all), _) => all,
        (None, Some(w)) => (w.lo()..=w.hi()).collect(),
        (None, None) => return Err(Error::Precondition("a d-window is required over Z".into())),
    };
    let support = endo_a.gamma.algebra.support();
    let indices: Vec<(Degree, Degree)> = ds
        .iter()
        .flat_map(|&d| support.iter().map(move |&g| (d, g)))
        .collect();
    let maps = indices
        .into_par_iter()
        .map(|(d, g)| Ok(((d, g), phi_entry(data, &endo_a, &endo_b, d, g)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let phi = PhiFamily::new(
        Arc::new(endo_b.gamma.algebra.clone()),
        Arc::new(endo_a.gamma.algebra.clone()),
        maps,
        data.window(),
    )?;
    let phi_report = check_phi_family(&phi);
    let (twist, recovered) = if phi_report.passed() {
        let (t, iso, r) = twist_from_phi(&phi)?;
        (Some((t, iso)), r)
    } else {
        (None, Report::fail("twist from phi", Witness::new([], "phi family fails")))
    };
    let report = Report::all("gamma twist", vec![phi_report, recovered])
        .windowed(data.window().is_some());
    Ok(GammaTwist {
        endo_a,
        endo_b,
        phi,
        twist,
        report,
    })
}

/// A twist `τ` of `A` with `A^τ ≅ B`, recovered from an equivalence.
#[derive(Clone, Debug)]
pub struct Backward {
    pub gamma: GammaTwist,
    pub tau: TwistingSystem,
    pub twisted: GradedAlgebra,
    /// `A^τ → B`.
    pub iso: GradedMorphism,
    pub report: Report,
}

/// Transports `T` along `φ_A: A → Γ(A)`, `ψ_A: Γ(A) → A`:
/// `τ_d(g) = ψ_A T_d(g) φ_A`, and `A^τ → B` is `ψ_B ∘ ι⁻¹ ∘ φ_A` where
/// `ι: Γ(B) → Γ(A)^T`.
pub fn backward(data: &EquivalenceData) -> Result<Backward> {
    let gamma = gamma_twist_phi(data)?;
    let (big_t, iota) = gamma
        .twist
        .clone()
        .ok_or_else(|| Error::Precondition(format!("no twist recovered: {}", gamma.report)))?;
    let a = data.source();
    let b = data.target();
    let (phi_a, psi_a) = (&gamma.endo_a.phi, &gamma.endo_a.psi);
    let psi_b = &gamma.endo_b.psi;

    let ds = big_t.d_values(data.window())?;
    let mut maps = BTreeMap::new();
    for &d in &ds {
        for g in a.support() {
            let m = psi_a
                .component(g)
                .matmul(&big_t.tau(d, g)?)?
                .matmul(&phi_a.component(g))?;
            maps.insert((d, g), m);
        }
    }
    let tau = TwistingSystem::new(a.clone(), TwistKind::Explicit { maps, window: data.window() })?;
    let cond = check_twist_condition(&tau);
    require(cond.clone(), "recovered twist")?;
    let twisted = twist_algebra(&tau)?;

    let iota_inv = iota
        .inverse()
        .map_err(|g| Error::Precondition(format!("recovered iso singular at {g}")))?;
    let mut comps = BTreeMap::new();
    for g in a.support() {
        let m = psi_b
            .component(g)
            .matmul(&iota_inv.component(g))?
            .matmul(&phi_a.component(g))?;
        comps.insert(g, m);
    }
    let iso = GradedMorphism::new(a.field(), twisted.space().clone(), b.space().clone(), comps)?;
    let invertible = Report::from_failure(
        "invertible",
        iso.inverse().err().map(|g| Witness::new([g], "component singular")),
    );
    let morph = check_algebra_morphism(&iso, &twisted, b)?;
    let report = Report::all(
        "backward",
        vec![gamma.report.clone(), cond, invertible, morph],
    )
    .windowed(data.window().is_some());
    Ok(Backward {
        gamma,
        tau,
        twisted,
        iso,
        report,
    })
}
