use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::enriched::{compose_homs, identity_hom, module_hom_space_at, HomElement, ModuleHomSpace};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::{
    check_module_morphism, regular_module, shift_module, GradedAlgebra, GradedModule, GradedMorphism,
};
use crate::groups::{Degree, IntegerWindow};
use crate::report::{first_failure, Report, Witness};
use crate::twist::TwistingSystem;

use super::functor::zm_forward;

/// A roster object `S_k(A)` and its image `Φ(S_k(A))`, a module over `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RosterEntry {
    pub shift: Degree,
    pub module: GradedModule,
    pub image: GradedModule,
}

/// A functor between module categories, known on the shifts of `A`:
/// the images `Φ(S_k A)`, the maps `Φ: [[S_k A, S_l A]]_e → [[Φ S_k A, Φ S_l A]]_e`
/// in canonical coordinates (keyed by `(k, l)`), and isomorphisms
/// `t_k: Φ(S_k A) → S_k(B)`.
#[derive(Clone, Debug)]
pub struct EquivalenceData {
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    roster: BTreeMap<Degree, RosterEntry>,
    phi: BTreeMap<(Degree, Degree), Matrix>,
    t: BTreeMap<Degree, GradedMorphism>,
    window: Option<IntegerWindow>,
    spaces: BTreeMap<(Degree, Degree), (ModuleHomSpace, ModuleHomSpace)>,
}

fn rebase(m: &GradedModule, algebra: &Arc<GradedAlgebra>) -> Result<GradedModule> {
    if **m.algebra() != **algebra {
        return Err(Error::Precondition(
            "image module is not over the target algebra".into(),
        ));
    }
    m.over(algebra.clone())
}

fn hom_spaces(
    roster: &BTreeMap<Degree, RosterEntry>,
    keys: Vec<(Degree, Degree)>,
    e: Degree,
) -> Result<BTreeMap<(Degree, Degree), (ModuleHomSpace, ModuleHomSpace)>> {
    keys.into_par_iter()
        .map(|(k, l)| {
            let get = |s: Degree| {
                roster
                    .get(&s)
                    .ok_or_else(|| Error::RosterIncomplete(format!("no roster object S_{s}(A)")))
            };
            let (x, y) = (get(k)?, get(l)?);
            let a_side = module_hom_space_at(&x.module, &y.module, &[e])?;
            let b_side = module_hom_space_at(&x.image, &y.image, &[e])?;
            Ok(((k, l), (a_side, b_side)))
        })
        .collect()
}

impl EquivalenceData {
    /// Builds `S_k(A)` for every roster shift and computes the degree-`e`
    /// Hom spaces that the `phi` matrices act on; shapes are checked here.
    pub fn new(
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        images: BTreeMap<Degree, GradedModule>,
        phi: BTreeMap<(Degree, Degree), Matrix>,
        t: BTreeMap<Degree, GradedMorphism>,
        window: Option<IntegerWindow>,
    ) -> Result<EquivalenceData> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        let grp = source.group().clone();
        if grp.is_finite() && window.is_some() {
            return Err(Error::Precondition("a d-window only applies over Z".into()));
        }
        if !grp.is_finite() && window.is_none() {
            return Err(Error::Precondition("a d-window is required over Z".into()));
        }
        let reg_a = regular_module(&source);
        let reg_b = regular_module(&target);
        let mut roster = BTreeMap::new();
        for (k, image) in images {
            let module = shift_module(&reg_a, k)?;
            let image = rebase(&image, &target)?;
            roster.insert(k, RosterEntry { shift: k, module, image });
        }
        for (&k, tk) in &t {
            let entry = roster
                .get(&k)
                .ok_or_else(|| Error::RosterIncomplete(format!("t_{k} without roster object")))?;
            let sb = shift_module(&reg_b, k)?;
            if tk.source() != entry.image.space() || tk.target() != sb.space() {
                return Err(Error::Precondition(format!(
                    "t_{k} must map the image of S_{k}(A) to S_{k}(B)"
                )));
            }
        }
        let spaces = hom_spaces(&roster, phi.keys().copied().collect(), grp.identity())?;
        let e = grp.identity();
        for (key, m) in &phi {
            let (a_side, b_side) = &spaces[key];
            let expected = (b_side.dim(e), a_side.dim(e));
            if m.shape() != expected {
                return Err(Error::Shape {
                    what: format!("phi {},{}", key.0, key.1),
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(EquivalenceData {
            source,
            target,
            roster,
            phi,
            t,
            window,
            spaces,
        })
    }

    /// The data of the twist functor `M ↦ M^τ` on the shifts of `A` that
    /// the φ-family formula needs. `Φ` is the identity on families, so its
    /// matrices are changes of canonical basis; `t_k` has components
    /// `(t_k)_h = τ_k(k⁻¹h)⁻¹`.
    pub fn from_twist(t: &TwistingSystem, window: Option<IntegerWindow>) -> Result<EquivalenceData> {
        let functor = zm_forward(t)?;
        let a = t.algebra().clone();
        let b = functor.target().clone();
        let grp = a.group().clone();
        let window = if grp.is_finite() { None } else { t.window().or(window) };
        let ds = t.d_values(window)?;
        let support = a.support();
        let mut shifts: BTreeSet<Degree> = ds.iter().copied().collect();
        let mut pairs = BTreeSet::new();
        for &d in &ds {
            for &g in &support {
                let dg = grp.op(d, g);
                shifts.insert(dg);
                pairs.insert((dg, d));
            }
        }
        let reg_a = regular_module(&a);
        let reg_b = regular_module(&b);
        let mut images = BTreeMap::new();
        let mut witnesses = BTreeMap::new();
        for &k in &shifts {
            let sa = shift_module(&reg_a, k)?;
            let image = functor.module(&sa)?;
            let mut comps = BTreeMap::new();
            for h in sa.support() {
                comps.insert(h, t.tau(k, grp.ldiv(k, h))?.inverse()?);
            }
            let sb = shift_module(&reg_b, k)?;
            let tk = GradedMorphism::new(a.field(), image.space().clone(), sb.space().clone(), comps)?;
            images.insert(k, image);
            witnesses.insert(k, tk);
        }
        let mut roster = BTreeMap::new();
        for (k, image) in images {
            let module = shift_module(&reg_a, k)?;
            roster.insert(k, RosterEntry { shift: k, module, image });
        }
        let e = grp.identity();
        let spaces = hom_spaces(&roster, pairs.into_iter().collect(), e)?;
        let mut phi = BTreeMap::new();
        for (&(k, l), (a_side, b_side)) in &spaces {
            let ka = a_side.kernel(e);
            let m = if ka.dim() == 0 {
                Matrix::zeros(a.field(), b_side.dim(e), 0)
            } else {
                b_side.kernel(e).coordinates(ka.basis()).ok_or_else(|| {
                    Error::NotInKernel(format!(
                        "a module map S_{k}(A) → S_{l}(A) is not one after twisting"
                    ))
                })?
            };
            phi.insert((k, l), m);
        }
        Ok(EquivalenceData {
            source: a,
            target: b,
            roster,
            phi,
            t: witnesses,
            window,
            spaces,
        })
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn roster(&self) -> &BTreeMap<Degree, RosterEntry> {
        &self.roster
    }

    pub fn phi(&self) -> &BTreeMap<(Degree, Degree), Matrix> {
        &self.phi
    }

    pub fn shift_witnesses(&self) -> &BTreeMap<Degree, GradedMorphism> {
        &self.t
    }

    pub fn window(&self) -> Option<IntegerWindow> {
        self.window
    }

    /// `[[S_k A, S_l A]]_e` and `[[Φ S_k A, Φ S_l A]]_e`.
    pub fn spaces(&self, k: Degree, l: Degree) -> Result<&(ModuleHomSpace, ModuleHomSpace)> {
        self.spaces
            .get(&(k, l))
            .ok_or_else(|| Error::RosterIncomplete(format!("no Hom map for ({k},{l})")))
    }

    pub fn entry(&self, k: Degree) -> Result<&RosterEntry> {
        self.roster
            .get(&k)
            .ok_or_else(|| Error::RosterIncomplete(format!("no roster object S_{k}(A)")))
    }

    pub fn witness(&self, k: Degree) -> Result<&GradedMorphism> {
        self.t
            .get(&k)
            .ok_or_else(|| Error::RosterIncomplete(format!("no shift witness t_{k}")))
    }

    /// `S_k(B)`.
    pub fn shifted_target(&self, k: Degree) -> Result<GradedModule> {
        shift_module(&regular_module(&self.target), k)
    }

    /// `Φ` applied to a family of `[[S_k A, S_l A]]_e`.
    fn apply(&self, k: Degree, l: Degree, x: &HomElement) -> Result<HomElement> {
        let (a_side, b_side) = self.spaces(k, l)?;
        let c = self.phi[&(k, l)].matmul(&a_side.coordinates(x)?)?;
        b_side.element(x.degree, &c)
    }
}

/// The functor axioms on the roster: every `Φ` map invertible, identities
/// and composites preserved where the data is present, and every `t_k` an
/// invertible module map `Φ(S_k A) → S_k(B)`.
pub fn check_equivalence(data: &EquivalenceData) -> Result<Report> {
    let e = data.source.group().identity();
    let keys: Vec<(Degree, Degree)> = data.phi.keys().copied().collect();
    let invertible = first_failure(&keys, |&(k, l)| {
        data.phi[&(k, l)]
            .inverse()
            .is_err()
            .then(|| Witness::new([k, l], "Hom map not invertible"))
    });

    let shifts: Vec<Degree> = data.t.keys().copied().collect();
    let mut witness_err = None;
    for &k in &shifts {
        let tk = &data.t[&k];
        if tk.inverse().is_err() {
            witness_err = Some(Witness::new([k], "shift witness not invertible"));
            break;
        }
        let r = check_module_morphism(tk, &data.roster[&k].image, &data.shifted_target(k)?)?;
        if !r.passed() {
            witness_err = Some(Witness::new([k], "shift witness not a module map"));
            break;
        }
    }

    let mut ident = None;
    for &(k, l) in keys.iter().filter(|(k, l)| k == l) {
        let (a_side, b_side) = data.spaces(k, l)?;
        let image = data.apply(k, l, &identity_hom(a_side)?)?;
        if image != identity_hom(b_side)? {
            ident = Some(Witness::new([k], "identity not preserved"));
            break;
        }
    }

    let key_set: BTreeSet<(Degree, Degree)> = keys.iter().copied().collect();
    let mut triples = Vec::new();
    for &(k1, k2) in &keys {
        for &(j, k3) in key_set.range((k2, Degree::MIN)..) {
            if j != k2 {
                break;
            }
            if key_set.contains(&(k1, k3)) {
                triples.push((k1, k2, k3));
            }
        }
    }
    let composite = first_failure(&triples, |&(k1, k2, k3)| {
        let run = || -> Result<bool> {
            let (a12, b12) = data.spaces(k1, k2)?;
            let (a23, b23) = data.spaces(k2, k3)?;
            for i in 0..a12.dim(e) {
                let x = a12.basis_element(e, i)?;
                let fx = data.apply(k1, k2, &x)?;
                for j in 0..a23.dim(e) {
                    let y = a23.basis_element(e, j)?;
                    let lhs = data.apply(k1, k3, &compose_homs(a23, &y, a12, &x)?)?;
                    let rhs = compose_homs(b23, &data.apply(k2, k3, &y)?, b12, &fx)?;
                    let (_, b13) = data.spaces(k1, k3)?;
                    if b13.coordinates(&lhs)? != b13.coordinates(&rhs)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };
        match run() {
            Ok(true) => None,
            _ => Some(Witness::new([k1, k2, k3], "composition not preserved")),
        }
    });

    Ok(Report::all(
        "equivalence data",
        vec![
            Report::from_failure("hom maps invertible", invertible),
            Report::from_failure("shift witnesses", witness_err),
            Report::from_failure("identities", ident),
            Report::from_failure("composition", composite),
        ],
    )
    .windowed(data.window.is_some()))
}
