use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::system::{TwistKind, TwistingSystem};
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar};
use crate::graded::{monomials, GradedAlgebra, GradedMorphism};
use crate::groups::Degree;

/// `α(1,1) = -1`, all other values 1, on `Z/2`.
pub fn sign_cocycle(field: Field) -> BTreeMap<(Degree, Degree), Scalar> {
    let mut alpha = BTreeMap::new();
    for g in 0..2 {
        for h in 0..2 {
            let v = if g == 1 && h == 1 { field.from_i64(-1) } else { field.one() };
            alpha.insert((g, h), v);
        }
    }
    alpha
}

/// The cocycle twist `τ_d(g) = α(d,g)·id` on a finite-group-graded algebra.
pub fn cocycle_twist(
    a: Arc<GradedAlgebra>,
    alpha: BTreeMap<(Degree, Degree), Scalar>,
) -> Result<TwistingSystem> {
    TwistingSystem::new(a, TwistKind::Cocycle { alpha, window: None })
}

fn nonzero<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    let p = match field {
        Field::Prime(p) => p as i64,
        Field::Rational => 0,
    };
    loop {
        let v = if p > 0 {
            field.from_i64(rng.gen_range(1..p))
        } else {
            field.ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)).expect("nonzero den")
        };
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random 2-cocycle on the standard `Z/n`:
/// `α(a,b) = c^{[a+b ≥ n]}·β(a)β(b)/β(a+b)`, with `β(0) = 1` when
/// `normalized` and otherwise an extra constant factor.
pub fn random_cyclic_cocycle<R: Rng>(
    n: usize,
    field: Field,
    normalized: bool,
    rng: &mut R,
) -> BTreeMap<(Degree, Degree), Scalar> {
    let c = nonzero(field, rng);
    let mut beta: Vec<Scalar> = (0..n).map(|_| nonzero(field, rng)).collect();
    beta[0] = field.one();
    let k = if normalized { field.one() } else { nonzero(field, rng) };
    let mut alpha = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let carry = if a + b >= n { c.clone() } else { field.one() };
            let v = &(&(&carry * &beta[a]) * &beta[b]) * &beta[(a + b) % n].inv().expect("nonzero");
            alpha.insert((a as Degree, b as Degree), &v * &k);
        }
    }
    alpha
}

/// On `truncated_polynomial(group, field, nvars, maxdeg)`, the automorphism
/// scaling the monomial `x^e` by `∏ scales[i]^{e_i}`.
pub fn monomial_scaling(a: &GradedAlgebra, nvars: usize, scales: &[Scalar]) -> Result<GradedMorphism> {
    if scales.len() != nvars {
        return Err(Error::Shape {
            what: "scales".into(),
            expected: (nvars, 1),
            found: (scales.len(), 1),
        });
    }
    let f = a.field();
    let mut comps = BTreeMap::new();
    for d in a.support() {
        let basis = monomials(nvars, d as usize);
        if basis.len() != a.dim(d) {
            return Err(Error::Precondition(format!(
                "degree {d} is not a monomial basis in {nvars} variables"
            )));
        }
        let mut m = Matrix::zeros(f, basis.len(), basis.len());
        for (i, mono) in basis.iter().enumerate() {
            let v = mono
                .iter()
                .zip(scales)
                .fold(f.one(), |acc, (&e, s)| &acc * &s.pow(e as i64));
            m.set(i, i, v);
        }
        comps.insert(d, m);
    }
    GradedMorphism::new(f, a.space().clone(), a.space().clone(), comps)
}

/// The quantum-plane twist on a two-variable truncated polynomial algebra:
/// `τ_d = σ^d` with `σ(x) = x`, `σ(y) = q·y`.
pub fn quantum_plane_twist(a: Arc<GradedAlgebra>, q: Scalar) -> Result<TwistingSystem> {
    let sigma = monomial_scaling(&a, 2, &[a.field().one(), q])?;
    let order = match a.group().is_finite() {
        true => return Err(Error::Unsupported("quantum plane twist is over Z".into())),
        false => None,
    };
    TwistingSystem::new(a, TwistKind::Automorphism { sigma, order })
}

