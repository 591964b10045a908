use std::collections::BTreeMap;
use std::sync::Arc;

use super::curry::flat;
use super::hom::{compose_homs, eval_block, identity_hom, module_hom_space, ModuleHomSpace};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::{
    check_algebra, check_algebra_morphism, regular_module, GradedAlgebra, GradedMorphism,
    GradedVectorSpace,
};
use crate::groups::Degree;
use crate::report::{Report, Witness};

/// `Γ(A) = [[A,A]]_A` with composition as multiplication and the identity
/// family as unit, written in the canonical kernel bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaAlgebra {
    pub algebra: GradedAlgebra,
    pub homs: ModuleHomSpace,
}

fn require_algebra(a: &GradedAlgebra) -> Result<()> {
    let r = check_algebra(a);
    if !r.passed() {
        return Err(Error::Precondition(format!(
            "input is not an algebra: {}",
            r.witness.map(|w| format!("{:?} {}", w.at, w.reason)).unwrap_or_default()
        )));
    }
    Ok(())
}

pub fn gamma_algebra(a: &Arc<GradedAlgebra>) -> Result<GammaAlgebra> {
    require_algebra(a)?;
    let reg = regular_module(a);
    let homs = module_hom_space(&reg, &reg)?;
    let f = a.field();
    let grp = a.group();
    let space = GradedVectorSpace::new(grp.clone(), homs.dims())?;
    let support = space.support();
    let mut mult = BTreeMap::new();
    for &g in &support {
        for &h in &support {
            let gh = grp.op(g, h);
            let (dg, dh) = (space.dim(g), space.dim(h));
            let mut m = Matrix::zeros(f, space.dim(gh), dg * dh);
            for i in 0..dg {
                let x = homs.basis_element(g, i)?;
                for j in 0..dh {
                    let y = homs.basis_element(h, j)?;
                    let c = homs.coordinates(&compose_homs(&homs, &x, &homs, &y)?)?;
                    m.paste(0, i * dh + j, &c);
                }
            }
            mult.insert((g, h), m);
        }
    }
    let unit = homs.coordinates(&identity_hom(&homs)?)?;
    let algebra = GradedAlgebra::new(f, space, mult, unit)?;
    Ok(GammaAlgebra { algebra, homs })
}

/// The isomorphism `A ≅ Γ(A)` and its verification.
#[derive(Clone, Debug)]
pub struct EndoIso {
    pub gamma: GammaAlgebra,
    /// `φ: A → Γ(A)`, left multiplication.
    pub phi: GradedMorphism,
    /// `ψ: Γ(A) → A`, evaluation at the unit.
    pub psi: GradedMorphism,
    pub report: Report,
}

/// `(m^♭)_g: A_g → ⊕_p Hom(A_{g⁻¹p}, A_p)` in the layout of degree `g`.
fn left_multiplication(a: &GradedAlgebra, homs: &ModuleHomSpace, g: Degree) -> Result<Matrix> {
    let grp = a.group();
    let layout = homs.layout(g);
    let x = a.dim(g);
    let parts = layout
        .blocks()
        .iter()
        .map(|b| flat(&a.mult(g, b.source_degree), x, b.hom.source, b.hom.target))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(layout.blocks().iter().all(|b| grp.op(g, b.source_degree) == b.p));
    Matrix::vstack(a.field(), x, &parts)
}

pub fn endo_iso(a: &Arc<GradedAlgebra>) -> Result<EndoIso> {
    let gamma = gamma_algebra(a)?;
    let homs = &gamma.homs;
    let reg = regular_module(a);
    let f = a.field();

    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    let mut outside = None;
    for g in a.support() {
        let v = left_multiplication(a, homs, g)?;
        match homs.kernel(g).coordinates(&v) {
            Some(c) if homs.dim(g) > 0 => {
                phi.insert(g, c);
            }
            _ => {
                outside = Some(Witness::new([g], "left multiplication is not a module map"));
                break;
            }
        }
    }
    if let Some(w) = outside {
        return Err(Error::NotInKernel(format!("degree {:?}: {}", w.at, w.reason)));
    }
    for g in gamma.algebra.support() {
        let k = homs.kernel(g);
        let ev = eval_block(&homs.layout(g), &reg, &reg, g)?;
        psi.insert(g, ev.matmul(&k.basis().kron(a.unit())?)?);
    }
    let phi = GradedMorphism::new(f, a.space().clone(), gamma.algebra.space().clone(), phi)?;
    let psi = GradedMorphism::new(f, gamma.algebra.space().clone(), a.space().clone(), psi)?;

    let first_non_identity = |m: &GradedMorphism, degrees: Vec<Degree>| {
        degrees
            .into_iter()
            .find(|&g| !m.component(g).is_identity())
            .map(|g| Witness::new([g], "composite is not the identity"))
    };
    let psi_phi = psi.compose(&phi)?;
    let phi_psi = phi.compose(&psi)?;
    let report = Report::all(
        "endomorphism algebra",
        vec![
            Report::pass("lands in kernel"),
            Report::from_failure("psi after phi", first_non_identity(&psi_phi, a.support())),
            Report::from_failure(
                "phi after psi",
                first_non_identity(&phi_psi, gamma.algebra.support()),
            ),
            check_algebra(&gamma.algebra).renamed("gamma is an algebra"),
            check_algebra_morphism(&phi, a, &gamma.algebra)?.renamed("phi is an algebra map"),
            check_algebra_morphism(&psi, &gamma.algebra, a)?.renamed("psi is an algebra map"),
        ],
    );
    Ok(EndoIso {
        gamma,
        phi,
        psi,
        report,
    })
}
