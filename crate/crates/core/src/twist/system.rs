use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar};
use crate::graded::{check_algebra_morphism, GradedAlgebra, GradedMorphism};
use crate::groups::{Degree, Group, IntegerWindow};
use crate::report::{first_failure, Report, Witness};

/// How the maps `τ_d(g): A_g → A_g` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistKind {
    /// Every `τ_d(g)` given. Over `Z` only for `d` in the window.
    Explicit {
        maps: BTreeMap<(Degree, Degree), Matrix>,
        window: Option<IntegerWindow>,
    },
    /// `τ_d(g) = α(d,g)·id`.
    Cocycle {
        alpha: BTreeMap<(Degree, Degree), Scalar>,
        window: Option<IntegerWindow>,
    },
    /// `τ_d(g) = σ_g^d` for `G = Z` or `G = Z/n` (then `σ^n = id`).
    Automorphism {
        sigma: GradedMorphism,
        order: Option<usize>,
    },
}

/// A twisting system on a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingSystem {
    algebra: Arc<GradedAlgebra>,
    kind: TwistKind,
}

fn support_hull(a: &GradedAlgebra) -> Option<(Degree, Degree)> {
    Some((a.space().min_degree()?, a.space().max_degree()?))
}

impl TwistingSystem {
    /// Validates shapes and completeness. Invertibility and the twisting
    /// condition are left to [`check_twist_condition`].
    pub fn new(algebra: Arc<GradedAlgebra>, kind: TwistKind) -> Result<TwistingSystem> {
        let group = algebra.group().clone();
        let field = algebra.field();
        let kind = match kind {
            TwistKind::Explicit { maps, window } => {
                let window = resolve_window(&group, &algebra, window, maps.keys())?;
                let mut kept = BTreeMap::new();
                for ((d, g), m) in maps {
                    group.mul(d, g)?;
                    let n = algebra.dim(g);
                    if m.shape() != (n, n) {
                        return Err(Error::Shape {
                            what: format!("tau {d},{g}"),
                            expected: (n, n),
                            found: m.shape(),
                        });
                    }
                    if m.field() != field {
                        return Err(Error::FieldMismatch {
                            left: field,
                            right: m.field(),
                        });
                    }
                    if n > 0 {
                        kept.insert((d, g), m);
                    }
                }
                for d in d_range(&group, window) {
                    for g in algebra.support() {
                        if !kept.contains_key(&(d, g)) {
                            return Err(Error::MissingComponent(format!("tau {d},{g}")));
                        }
                    }
                }
                TwistKind::Explicit { maps: kept, window }
            }
            TwistKind::Cocycle { alpha, window } => {
                let window = resolve_window(&group, &algebra, window, alpha.keys())?;
                for (&(d, g), s) in &alpha {
                    group.mul(d, g)?;
                    if s.field() != field {
                        return Err(Error::FieldMismatch {
                            left: field,
                            right: s.field(),
                        });
                    }
                }
                let needed: Vec<Degree> = match group.elements() {
                    Some(all) => all,
                    None => algebra.support(),
                };
                for d in d_range(&group, window) {
                    for &g in &needed {
                        if !alpha.contains_key(&(d, g)) {
                            return Err(Error::MissingComponent(format!("alpha {d},{g}")));
                        }
                    }
                }
                TwistKind::Cocycle { alpha, window }
            }
            TwistKind::Automorphism { sigma, order } => {
                if sigma.source() != algebra.space() || sigma.target() != algebra.space() {
                    return Err(Error::Precondition(
                        "sigma must be an endomorphism of the algebra's space".into(),
                    ));
                }
                let order = match (group.is_finite(), group.cyclic_order(), order) {
                    (false, _, None) => None,
                    (false, _, Some(n)) => {
                        return Err(Error::Precondition(format!(
                            "order {n} given for an automorphism twist over Z"
                        )))
                    }
                    (true, Some(n), None) => Some(n),
                    (true, Some(n), Some(k)) if k == n => Some(n),
                    (true, Some(n), Some(k)) => {
                        return Err(Error::Precondition(format!(
                            "order {k} does not match Z/{n}"
                        )))
                    }
                    (true, None, _) => {
                        return Err(Error::Unsupported(
                            "automorphism twists need G = Z or the standard Z/n".into(),
                        ))
                    }
                };
                TwistKind::Automorphism { sigma, order }
            }
        };
        Ok(TwistingSystem { algebra, kind })
    }

    /// `τ_d(g) = id` everywhere (on the finite group, or on `[0,0]` over `Z`
    /// it is given as the automorphism twist by the identity).
    pub fn identity(algebra: Arc<GradedAlgebra>) -> TwistingSystem {
        let group = algebra.group().clone();
        let kind = if group.is_finite() {
            let mut maps = BTreeMap::new();
            for d in group.elements().expect("finite") {
                for g in algebra.support() {
                    maps.insert((d, g), algebra.id(g));
                }
            }
            TwistKind::Explicit { maps, window: None }
        } else {
            TwistKind::Automorphism {
                sigma: algebra.identity_morphism(),
                order: None,
            }
        };
        TwistingSystem::new(algebra, kind).expect("identity system is well formed")
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn kind(&self) -> &TwistKind {
        &self.kind
    }

    pub fn group(&self) -> &Group {
        self.algebra.group()
    }

    /// The declared `d`-window of a `Z` system; `None` for finite groups and
    /// for automorphism twists (which are defined for every `d`).
    pub fn window(&self) -> Option<IntegerWindow> {
        match &self.kind {
            TwistKind::Explicit { window, .. } | TwistKind::Cocycle { window, .. } => *window,
            TwistKind::Automorphism { .. } => None,
        }
    }

    /// Whether verdicts about this system only cover a finite window of `d`.
    pub fn is_windowed(&self) -> bool {
        self.window().is_some()
    }

    /// The values of `d` a finite check ranges over, given a fallback window
    /// for systems defined on all of `Z`.
    pub fn d_values(&self, fallback: Option<IntegerWindow>) -> Result<Vec<Degree>> {
        if let Some(all) = self.group().elements() {
            return Ok(all);
        }
        let w = self.window().or(fallback).ok_or_else(|| {
            Error::Precondition("a d-window is required over Z".into())
        })?;
        Ok((w.lo()..=w.hi()).collect())
    }

    /// Whether `τ_d(·)` is available.
    pub fn defined_at(&self, d: Degree) -> bool {
        match self.window() {
            Some(w) => w.contains(d),
            None => self.group().contains(d),
        }
    }

    /// `τ_d(g)`.
    pub fn tau(&self, d: Degree, g: Degree) -> Result<Matrix> {
        let a = &self.algebra;
        let n = a.dim(g);
        let f = a.field();
        if n == 0 {
            return Ok(Matrix::zeros(f, 0, 0));
        }
        if !self.defined_at(d) {
            return Err(Error::MissingComponent(format!("tau {d},{g} outside the window")));
        }
        match &self.kind {
            TwistKind::Explicit { maps, .. } => maps
                .get(&(d, g))
                .cloned()
                .ok_or_else(|| Error::MissingComponent(format!("tau {d},{g}"))),
            TwistKind::Cocycle { alpha, .. } => {
                let s = alpha
                    .get(&(d, g))
                    .ok_or_else(|| Error::MissingComponent(format!("alpha {d},{g}")))?;
                Ok(Matrix::identity(f, n).scale(s))
            }
            TwistKind::Automorphism { sigma, .. } => {
                let k = self.group().exponent(d).expect("validated group");
                sigma.component(g).pow(k)
            }
        }
    }

    /// Every stored `τ_d(g)` on the quantification set, as `((d,g), τ)`.
    pub(crate) fn entries(&self, d_values: &[Degree]) -> Result<Vec<((Degree, Degree), Matrix)>> {
        let mut out = Vec::new();
        for &d in d_values {
            for g in self.algebra.support() {
                out.push(((d, g), self.tau(d, g)?));
            }
        }
        Ok(out)
    }

    /// The same system written out explicitly on a window of `d`.
    pub fn materialize(&self, window: Option<IntegerWindow>) -> Result<TwistingSystem> {
        let ds = self.d_values(window)?;
        let maps = self.entries(&ds)?.into_iter().collect();
        let window = if self.group().is_finite() {
            None
        } else {
            self.window().or(window)
        };
        TwistingSystem::new(self.algebra.clone(), TwistKind::Explicit { maps, window })
    }
}

fn resolve_window<'a>(
    group: &Group,
    algebra: &GradedAlgebra,
    window: Option<IntegerWindow>,
    keys: impl Iterator<Item = &'a (Degree, Degree)>,
) -> Result<Option<IntegerWindow>> {
    if group.is_finite() {
        if window.is_some() {
            return Err(Error::Precondition("a d-window only applies over Z".into()));
        }
        return Ok(None);
    }
    let w = match window {
        Some(w) => w,
        None => {
            let ds: Vec<Degree> = keys.map(|&(d, _)| d).collect();
            let lo = ds.iter().copied().min().unwrap_or(0).min(0);
            let hi = ds.iter().copied().max().unwrap_or(0).max(0);
            IntegerWindow::new(lo, hi)?
        }
    };
    if let Some((lo, hi)) = support_hull(algebra) {
        if !w.contains(lo) || !w.contains(hi) {
            return Err(Error::Precondition(format!(
                "d-window [{}, {}] must cover the support [{lo}, {hi}]",
                w.lo(),
                w.hi()
            )));
        }
    }
    Ok(Some(w))
}

fn d_range(group: &Group, window: Option<IntegerWindow>) -> Vec<Degree> {
    match (group.elements(), window) {
        (Some(all), _) => all,
        (None, Some(w)) => (w.lo()..=w.hi()).collect(),
        (None, None) => Vec::new(),
    }
}

/// Verifies the twisting condition
/// `m_{g₁,g₂}(id ⊗ τ_{dg₁}(g₂))(τ_d(g₁) ⊗ id) = τ_d(g₁g₂) m_{g₁,g₂}(id ⊗ τ_{g₁}(g₂))`
/// after checking that every `τ_d(g)` is invertible.
///
/// Over `Z` explicit and cocycle systems are checked for `d` and `dg₁` in the
/// window and the report is flagged window-verified. Automorphism systems
/// are checked through the equivalent reduced criterion: `σ` is an
/// invertible algebra endomorphism (and `σ^n = id` over `Z/n`).
pub fn check_twist_condition(t: &TwistingSystem) -> Report {
    match &t.kind {
        TwistKind::Automorphism { sigma, order } => check_automorphism(t, sigma, *order),
        _ => check_full(t),
    }
}

fn check_automorphism(t: &TwistingSystem, sigma: &GradedMorphism, order: Option<usize>) -> Report {
    let a = &t.algebra;
    let inv = a
        .support()
        .into_iter()
        .find(|&g| sigma.component(g).inverse().is_err())
        .map(|g| Witness::new([g], "sigma component not invertible"));
    let mut parts = vec![Report::from_failure("invertible", inv)];
    parts.push(
        check_algebra_morphism(sigma, a, a)
            .expect("sigma is an endomorphism")
            .renamed("automorphism"),
    );
    if let Some(n) = order {
        let bad = a.support().into_iter().find(|&g| {
            !sigma
                .component(g)
                .pow(n as i64)
                .map(|m| m.is_identity())
                .unwrap_or(false)
        });
        parts.push(Report::from_failure(
            "order",
            bad.map(|g| Witness::new([g], format!("sigma^{n} is not the identity"))),
        ));
    }
    Report::all("twist condition", parts)
}

fn check_full(t: &TwistingSystem) -> Report {
    let a = &t.algebra;
    let grp = t.group();
    let ds = t.d_values(None).expect("finite group or windowed system");
    let support = a.support();
    let windowed = t.is_windowed();

    let mut pairs = Vec::new();
    for &d in &ds {
        for &g in &support {
            pairs.push((d, g));
        }
    }
    let inv = first_failure(&pairs, |&(d, g)| {
        let m = t.tau(d, g).expect("validated system");
        m.inverse()
            .is_err()
            .then(|| Witness::new([d, g], "tau not invertible"))
    });
    if inv.is_some() {
        return Report::all(
            "twist condition",
            vec![Report::from_failure("invertible", inv)],
        )
        .windowed(windowed);
    }

    let mut triples = Vec::new();
    for &d in &ds {
        for &g1 in &support {
            if !t.defined_at(grp.op(d, g1)) {
                continue;
            }
            for &g2 in &support {
                triples.push((d, g1, g2));
            }
        }
    }
    let cond = first_failure(&triples, |&(d, g1, g2)| {
        let g12 = grp.op(g1, g2);
        let m = a.mult(g1, g2);
        let tau = |x, y| t.tau(x, y).expect("validated system");
        let lhs = m
            .matmul(&a.id(g1).kron(&tau(grp.op(d, g1), g2)).unwrap())
            .unwrap()
            .matmul(&tau(d, g1).kron(&a.id(g2)).unwrap())
            .unwrap();
        let rhs = tau(d, g12)
            .matmul(&m)
            .unwrap()
            .matmul(&a.id(g1).kron(&tau(g1, g2)).unwrap())
            .unwrap();
        (lhs != rhs).then(|| Witness::new([d, g1, g2], "twisting condition fails"))
    });
    Report::all(
        "twist condition",
        vec![
            Report::pass("invertible"),
            Report::from_failure("condition", cond),
        ],
    )
    .windowed(windowed)
}

/// The 2-cocycle identity `α(gh,ℓ)α(g,h) = α(g,hℓ)α(h,ℓ)` on all triples of
/// a finite group.
pub fn check_cocycle(group: &Group, alpha: &BTreeMap<(Degree, Degree), Scalar>) -> Result<Report> {
    let elements = group
        .elements()
        .ok_or_else(|| Error::Unsupported("cocycle identity over an infinite group".into()))?;
    for &g in &elements {
        for &h in &elements {
            let v = alpha
                .get(&(g, h))
                .ok_or_else(|| Error::MissingComponent(format!("alpha {g},{h}")))?;
            if v.is_zero() {
                return Err(Error::Precondition(format!("alpha {g},{h} is zero")));
            }
        }
    }
    let mut triples = Vec::new();
    for &g in &elements {
        for &h in &elements {
            for &l in &elements {
                triples.push((g, h, l));
            }
        }
    }
    let al = |x, y| &alpha[&(x, y)];
    let failure = first_failure(&triples, |&(g, h, l)| {
        let lhs = al(group.op(g, h), l) * al(g, h);
        let rhs = al(g, group.op(h, l)) * al(h, l);
        (lhs != rhs).then(|| Witness::new([g, h, l], "cocycle identity fails"))
    });
    Ok(Report::from_failure("cocycle", failure))
}

/// `τ_g(e)⁻¹u = τ_e(e)⁻¹u` for every `g` in the quantification set.
pub fn check_unit_lemma(t: &TwistingSystem) -> Report {
    let a = &t.algebra;
    let e = t.group().identity();
    let fallback = support_hull(a).map(|(_, hi)| {
        IntegerWindow::new(-hi.abs(), hi.abs()).expect("symmetric window")
    });
    let ds = t
        .d_values(fallback.or_else(|| IntegerWindow::new(0, 0).ok()))
        .expect("window available");
    let lhs_at = |g: Degree| -> Option<Matrix> {
        let m = t.tau(g, e).ok()?.inverse().ok()?;
        m.matmul(a.unit()).ok()
    };
    let reference = lhs_at(e);
    let failure = ds.iter().copied().find_map(|g| {
        (lhs_at(g) != reference || reference.is_none())
            .then(|| Witness::new([g], "tau_g(e)^-1 u differs from tau_e(e)^-1 u"))
    });
    Report::from_failure("unit lemma", failure).windowed(!t.group().is_finite())
}
