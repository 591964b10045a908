use std::collections::BTreeMap;
use std::sync::Arc;

use super::ops::twist_algebra;
use super::system::{check_twist_condition, TwistKind, TwistingSystem};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::{check_algebra_morphism, GradedAlgebra, GradedMorphism};
use crate::groups::{Degree, IntegerWindow};
use crate::report::{first_failure, Report, Witness};

/// Isomorphisms `φ_d(g): B_g → A_g` that exhibit `B` as a twist of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFamily {
    source: Arc<GradedAlgebra>,
    target: Arc<GradedAlgebra>,
    maps: BTreeMap<(Degree, Degree), Matrix>,
    window: Option<IntegerWindow>,
}

impl PhiFamily {
    /// Shape-checks every `φ_d(g)` and requires all `(d, g)` with `d` in the
    /// group (or the window over `Z`) and `g` in the support.
    pub fn new(
        source: Arc<GradedAlgebra>,
        target: Arc<GradedAlgebra>,
        maps: BTreeMap<(Degree, Degree), Matrix>,
        window: Option<IntegerWindow>,
    ) -> Result<PhiFamily> {
        if source.space() != target.space() {
            return Err(Error::Precondition(
                "source and target must have the same graded dimensions".into(),
            ));
        }
        let group = target.group().clone();
        let window = match (group.is_finite(), window) {
            (true, None) => None,
            (true, Some(_)) => {
                return Err(Error::Precondition("a d-window only applies over Z".into()))
            }
            (false, Some(w)) => Some(w),
            (false, None) => {
                let lo = maps.keys().map(|k| k.0).min().unwrap_or(0).min(0);
                let hi = maps.keys().map(|k| k.0).max().unwrap_or(0).max(0);
                Some(IntegerWindow::new(lo, hi)?)
            }
        };
        let mut kept = BTreeMap::new();
        for ((d, g), m) in maps {
            group.mul(d, g)?;
            let n = target.dim(g);
            if m.shape() != (n, n) {
                return Err(Error::Shape {
                    what: format!("phi {d},{g}"),
                    expected: (n, n),
                    found: m.shape(),
                });
            }
            if m.field() != target.field() {
                return Err(Error::FieldMismatch {
                    left: target.field(),
                    right: m.field(),
                });
            }
            if n > 0 {
                kept.insert((d, g), m);
            }
        }
        let family = PhiFamily {
            source,
            target,
            maps: kept,
            window,
        };
        for d in family.d_values() {
            for g in family.target.support() {
                if !family.maps.contains_key(&(d, g)) {
                    return Err(Error::MissingComponent(format!("phi {d},{g}")));
                }
            }
        }
        if let Some(w) = window {
            for g in family.target.support() {
                if !w.contains(g) {
                    return Err(Error::Precondition(format!(
                        "d-window must cover the support degree {g}"
                    )));
                }
            }
        }
        Ok(family)
    }

    pub fn source(&self) -> &Arc<GradedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.target
    }

    pub fn maps(&self) -> &BTreeMap<(Degree, Degree), Matrix> {
        &self.maps
    }

    pub fn window(&self) -> Option<IntegerWindow> {
        self.window
    }

    fn d_values(&self) -> Vec<Degree> {
        match (self.target.group().elements(), self.window) {
            (Some(all), _) => all,
            (None, Some(w)) => (w.lo()..=w.hi()).collect(),
            (None, None) => Vec::new(),
        }
    }

    fn defined_at(&self, d: Degree) -> bool {
        self.window.is_none_or(|w| w.contains(d))
    }

    /// `φ_d(g)`.
    pub fn phi(&self, d: Degree, g: Degree) -> Result<Matrix> {
        let n = self.target.dim(g);
        if n == 0 {
            return Ok(Matrix::zeros(self.target.field(), 0, 0));
        }
        self.maps
            .get(&(d, g))
            .cloned()
            .ok_or_else(|| Error::MissingComponent(format!("phi {d},{g}")))
    }
}

/// `m^A_{g₁,g₂}(φ_d(g₁) ⊗ φ_{dg₁}(g₂)) = φ_d(g₁g₂) m^B_{g₁,g₂}` and
/// `φ_e(e)u^B = u^A`, after checking invertibility.
pub fn check_phi_family(p: &PhiFamily) -> Report {
    let (a, b) = (&p.target, &p.source);
    let grp = a.group();
    let support = a.support();
    let windowed = p.window.is_some();
    let ds = p.d_values();

    let pairs: Vec<(Degree, Degree)> = ds
        .iter()
        .flat_map(|&d| support.iter().map(move |&g| (d, g)))
        .collect();
    let inv = first_failure(&pairs, |&(d, g)| {
        p.phi(d, g)
            .expect("validated family")
            .inverse()
            .is_err()
            .then(|| Witness::new([d, g], "phi not invertible"))
    });
    if inv.is_some() {
        return Report::all("phi family", vec![Report::from_failure("invertible", inv)])
            .windowed(windowed);
    }

    let mut triples = Vec::new();
    for &d in &ds {
        for &g1 in &support {
            if !p.defined_at(grp.op(d, g1)) {
                continue;
            }
            for &g2 in &support {
                triples.push((d, g1, g2));
            }
        }
    }
    let mult = first_failure(&triples, |&(d, g1, g2)| {
        let phi = |x, y| p.phi(x, y).expect("validated family");
        let lhs = a
            .mult(g1, g2)
            .matmul(&phi(d, g1).kron(&phi(grp.op(d, g1), g2)).unwrap())
            .unwrap();
        let rhs = phi(d, grp.op(g1, g2)).matmul(&b.mult(g1, g2)).unwrap();
        (lhs != rhs).then(|| Witness::new([d, g1, g2], "multiplication square fails"))
    });
    let e = grp.identity();
    let unit = (p.phi(e, e).unwrap().matmul(b.unit()).unwrap() != *a.unit())
        .then(|| Witness::new([e], "unit triangle fails"));
    Report::all(
        "phi family",
        vec![
            Report::pass("invertible"),
            Report::from_failure("multiplication", mult),
            Report::from_failure("unit", unit),
        ],
    )
    .windowed(windowed)
}

/// `φ_d(g) = τ_d(g)·iso_g` for an isomorphism `iso: B → A^τ`. Over `Z` the
/// family lives on the system's window, or on `window` for automorphism
/// systems.
pub fn phi_from_twist(
    t: &TwistingSystem,
    iso: &GradedMorphism,
    b: Arc<GradedAlgebra>,
    window: Option<IntegerWindow>,
) -> Result<PhiFamily> {
    let twisted = twist_algebra(t)?;
    let r = check_algebra_morphism(iso, &b, &twisted)?;
    if !r.passed() {
        return Err(Error::Precondition(format!(
            "iso is not an algebra morphism into the twisted algebra: {}",
            r.witness.map(|w| format!("{:?} {}", w.at, w.reason)).unwrap_or_default()
        )));
    }
    if let Err(g) = iso.inverse() {
        return Err(Error::Precondition(format!("iso is singular at degree {g}")));
    }
    let ds = t.d_values(window)?;
    let mut maps = BTreeMap::new();
    for &d in &ds {
        for g in b.support() {
            maps.insert((d, g), t.tau(d, g)?.matmul(&iso.component(g))?);
        }
    }
    let window = if t.group().is_finite() {
        None
    } else {
        t.window().or(window)
    };
    PhiFamily::new(b, t.algebra().clone(), maps, window)
}

/// `τ_d(g) = φ_d(g)φ_e(g)⁻¹` on `A` together with `φ_g = φ_e(g): B → A^τ`.
/// Both are verified; the combined report is returned alongside.
pub fn twist_from_phi(p: &PhiFamily) -> Result<(TwistingSystem, GradedMorphism, Report)> {
    let r = check_phi_family(p);
    if !r.passed() {
        return Err(Error::Precondition(format!(
            "phi family fails: {}",
            r.witness.map(|w| format!("{:?} {}", w.at, w.reason)).unwrap_or_default()
        )));
    }
    let a = &p.target;
    let e = a.group().identity();
    let mut inv_e = BTreeMap::new();
    let mut iso = BTreeMap::new();
    for g in a.support() {
        let phi_e = p.phi(e, g)?;
        inv_e.insert(g, phi_e.inverse()?);
        iso.insert(g, phi_e);
    }
    let mut maps = BTreeMap::new();
    for d in p.d_values() {
        for g in a.support() {
            maps.insert((d, g), p.phi(d, g)?.matmul(&inv_e[&g])?);
        }
    }
    let t = TwistingSystem::new(a.clone(), TwistKind::Explicit { maps, window: p.window })?;
    let cond = check_twist_condition(&t);
    let twisted = twist_algebra(&t)?;
    let iso = GradedMorphism::new(a.field(), p.source.space().clone(), twisted.space().clone(), iso)?;
    let morph = check_algebra_morphism(&iso, &p.source, &twisted)?;
    let report = Report::all("twist from phi", vec![cond, morph]).windowed(p.window.is_some());
    Ok((t, iso, report))
}
