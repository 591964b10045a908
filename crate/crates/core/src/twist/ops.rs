use std::collections::BTreeMap;
use std::sync::Arc;

use super::system::{check_twist_condition, TwistKind, TwistingSystem};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::{check_algebra, check_module, same_algebra, GradedAlgebra, GradedModule};
use crate::groups::IntegerWindow;
use crate::report::Report;

fn require(report: Report, what: &str) -> Result<()> {
    if report.passed() {
        return Ok(());
    }
    let at = report
        .witness
        .map(|w| format!(" at {:?}: {}", w.at, w.reason))
        .unwrap_or_default();
    Err(Error::Precondition(format!("{what} fails{at}")))
}

/// `A^τ` with `m^τ_{g,h} = m_{g,h}(id ⊗ τ_g(h))` and `u^τ = τ_e(e)⁻¹u`.
/// The twisting condition is checked first and the result is re-checked
/// against the algebra axioms.
pub fn twist_algebra(t: &TwistingSystem) -> Result<GradedAlgebra> {
    require(check_twist_condition(t), "twist condition")?;
    let out = twisted_algebra_unchecked(t)?;
    require(check_algebra(&out), "twisted algebra")?;
    Ok(out)
}

pub(crate) fn twisted_algebra_unchecked(t: &TwistingSystem) -> Result<GradedAlgebra> {
    let a = t.algebra();
    let e = a.group().identity();
    let mut mult = BTreeMap::new();
    for (&(g, h), m) in a.mult_table() {
        mult.insert((g, h), m.matmul(&a.id(g).kron(&t.tau(g, h)?)?)?);
    }
    let unit = t.tau(e, e)?.inverse()?.matmul(a.unit())?;
    GradedAlgebra::new(a.field(), a.space().clone(), mult, unit)
}

/// `M^τ` with `ρ^τ_{g,h} = ρ_{g,h}(id ⊗ τ_g(h))`, a module over `A^τ`.
pub fn twist_module(m: &GradedModule, t: &TwistingSystem) -> Result<GradedModule> {
    if !same_algebra(m.algebra(), t.algebra()) {
        return Err(Error::Precondition(
            "twisting system lives on another algebra".into(),
        ));
    }
    let twisted = Arc::new(twist_algebra(t)?);
    let mut action = BTreeMap::new();
    for (&(g, h), r) in m.action_table() {
        action.insert((g, h), r.matmul(&m.id(g).kron(&t.tau(g, h)?)?)?);
    }
    let out = GradedModule::new(m.space().clone(), twisted, action)?;
    require(check_module(&out), "twisted module")?;
    Ok(out)
}

/// `τ⁻¹`, a twisting system on `A^τ`.
pub fn inverse_twist(t: &TwistingSystem) -> Result<TwistingSystem> {
    let twisted = Arc::new(twist_algebra(t)?);
    let kind = match t.kind() {
        TwistKind::Explicit { maps, window } => {
            let mut inv = BTreeMap::new();
            for (&k, m) in maps {
                inv.insert(k, m.inverse()?);
            }
            TwistKind::Explicit { maps: inv, window: *window }
        }
        TwistKind::Cocycle { alpha, window } => {
            let mut inv = BTreeMap::new();
            for (&k, s) in alpha {
                inv.insert(k, s.inv().ok_or(Error::Singular)?);
            }
            TwistKind::Cocycle { alpha: inv, window: *window }
        }
        TwistKind::Automorphism { sigma, order } => TwistKind::Automorphism {
            sigma: sigma
                .inverse()
                .map_err(|g| Error::Precondition(format!("sigma singular at {g}")))?,
            order: *order,
        },
    };
    TwistingSystem::new(twisted, kind)
}

/// The composite `τσ` on `A`, where `s = σ` lives on `A^τ`. Cocycles
/// multiply, commuting automorphisms compose; anything else is written out
/// explicitly on the common window.
pub fn compose_twists(t: &TwistingSystem, s: &TwistingSystem) -> Result<TwistingSystem> {
    let twisted = twist_algebra(t)?;
    if **s.algebra() != twisted {
        return Err(Error::Precondition(
            "second system must live on the twisted algebra".into(),
        ));
    }
    require(check_twist_condition(s), "second twist condition")?;
    let a = t.algebra().clone();
    let kind = match (t.kind(), s.kind()) {
        (
            TwistKind::Cocycle { alpha: x, window: wx },
            TwistKind::Cocycle { alpha: y, window: wy },
        ) => {
            let window = intersect(*wx, *wy)?;
            let alpha = x
                .iter()
                .filter_map(|(k, v)| y.get(k).map(|w| (*k, v * w)))
                .filter(|((d, _), _)| window.is_none_or(|w| w.contains(*d)))
                .collect();
            TwistKind::Cocycle { alpha, window }
        }
        (
            TwistKind::Automorphism { sigma: x, order },
            TwistKind::Automorphism { sigma: y, .. },
        ) if x.compose(y)? == y.compose(x)? => TwistKind::Automorphism {
            sigma: x.compose(y)?,
            order: *order,
        },
        _ => {
            let window = intersect(t.window(), s.window())?;
            if !a.group().is_finite() && window.is_none() {
                return Err(Error::Unsupported(
                    "composite of non-commuting automorphism twists over Z".into(),
                ));
            }
            let ds = t.d_values(window)?;
            let mut maps = BTreeMap::new();
            for &d in &ds {
                for g in a.support() {
                    maps.insert((d, g), t.tau(d, g)?.matmul(&s.tau(d, g)?)?);
                }
            }
            TwistKind::Explicit { maps, window }
        }
    };
    TwistingSystem::new(a, kind)
}

fn intersect(x: Option<IntegerWindow>, y: Option<IntegerWindow>) -> Result<Option<IntegerWindow>> {
    Ok(match (x, y) {
        (Some(x), Some(y)) => Some(IntegerWindow::new(x.lo().max(y.lo()), x.hi().min(y.hi()))?),
        (w, None) | (None, w) => w,
    })
}

/// `τ_d(g)` as a plain map, for serialization and comparisons.
pub fn tau_table(
    t: &TwistingSystem,
    window: Option<IntegerWindow>,
) -> Result<BTreeMap<(i64, i64), Matrix>> {
    Ok(t.entries(&t.d_values(window)?)?.into_iter().collect())
}
