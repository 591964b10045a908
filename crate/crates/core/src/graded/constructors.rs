use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::GradedAlgebra;
use super::module::GradedModule;
use super::space::GradedVectorSpace;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};
use crate::groups::{Degree, Group};

/// The group algebra `k[G]` of a finite group: one basis vector per element.
pub fn group_algebra(group: &Group, field: Field) -> Result<GradedAlgebra> {
    let elements = group
        .elements()
        .ok_or_else(|| Error::Unsupported("group algebra of an infinite group".into()))?;
    let space = GradedVectorSpace::new(group.clone(), elements.iter().map(|&g| (g, 1)).collect())?;
    let one = Matrix::identity(field, 1);
    let mut mult = BTreeMap::new();
    for &g in &elements {
        for &h in &elements {
            mult.insert((g, h), one.clone());
        }
    }
    GradedAlgebra::new(field, space, mult, one)
}

/// Exponent vectors of the monomials of total degree `d` in `nvars`
/// variables, in lexicographic order (`x1^d` first).
pub fn monomials(nvars: usize, d: usize) -> Vec<Vec<usize>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `k[x_1..x_n]` modulo all monomials of degree above `maxdeg`, graded by
/// total degree over a `Z` window containing `[0, maxdeg]`.
pub fn truncated_polynomial(
    group: &Group,
    field: Field,
    nvars: usize,
    maxdeg: usize,
) -> Result<GradedAlgebra> {
    let w = group
        .window()
        .ok_or_else(|| Error::Unsupported("truncated polynomials are graded by Z".into()))?;
    if w.hi() < maxdeg as i64 {
        return Err(Error::WindowTooSmall {
            lo: w.lo(),
            hi: w.hi(),
            support: (0, maxdeg as i64),
        });
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=maxdeg).map(|d| monomials(nvars, d)).collect();
    let space = GradedVectorSpace::new(
        group.clone(),
        bases
            .iter()
            .enumerate()
            .map(|(d, b)| (d as Degree, b.len()))
            .collect(),
    )?;
    let mut mult = BTreeMap::new();
    for a in 0..=maxdeg {
        for b in 0..=maxdeg - a {
            let (ba, bb, bc) = (&bases[a], &bases[b], &bases[a + b]);
            let mut m = Matrix::zeros(field, bc.len(), ba.len() * bb.len());
            for (i, x) in ba.iter().enumerate() {
                for (j, y) in bb.iter().enumerate() {
                    let prod: Vec<usize> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                    let row = bc.iter().position(|z| *z == prod).expect("monomial basis");
                    m.set(row, i * bb.len() + j, field.one());
                }
            }
            mult.insert((a as Degree, b as Degree), m);
        }
    }
    GradedAlgebra::new(field, space, mult, Matrix::identity(field, 1))
}

/// `A` as a right module over itself.
pub fn regular_module(a: &Arc<GradedAlgebra>) -> GradedModule {
    GradedModule::new(a.space().clone(), a.clone(), a.mult_table().clone())
        .expect("multiplication has action shapes")
}

/// `S_g(M)` with `S_g(M)_d = M_{g⁻¹d}` and `ρ_{d,h} = ρ^M_{g⁻¹d,h}`.
pub fn shift_module(m: &GradedModule, g: Degree) -> Result<GradedModule> {
    let space = m.space().shifted(g)?;
    let grp = m.group();
    let action = m
        .action_table()
        .iter()
        .map(|(&(d, h), mat)| ((grp.op(g, d), h), mat.clone()))
        .collect();
    GradedModule::new(space, m.algebra().clone(), action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::algebra::check_algebra;
    use crate::graded::module::check_module;

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 1).len(), 3);
        assert_eq!(monomials(2, 3).len(), 4);
    }

    #[test]
    fn truncated_dims() {
        let z = Group::integers(-1, 5).unwrap();
        let a = truncated_polynomial(&z, Field::Rational, 2, 3).unwrap();
        assert_eq!(a.support(), vec![0, 1, 2, 3]);
        assert_eq!((0..4).map(|d| a.dim(d)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(a.mult(2, 2).shape(), (0, 9));
        let small = Group::integers(0, 2).unwrap();
        assert!(matches!(
            truncated_polynomial(&small, Field::Rational, 2, 3),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn shifts_compose() {
        let s3 = Group::symmetric3();
        let a = Arc::new(group_algebra(&s3, Field::Rational).unwrap());
        let m = regular_module(&a);
        assert_eq!(shift_module(&m, 0).unwrap(), m);
        for g in 0..6 {
            for h in 0..6 {
                let lhs = shift_module(&shift_module(&m, h).unwrap(), g).unwrap();
                let rhs = shift_module(&m, s3.op(g, h)).unwrap();
                assert_eq!(lhs, rhs);
            }
            assert!(check_module(&shift_module(&m, g).unwrap()).passed());
        }
    }

    #[test]
    fn group_algebra_of_integers_is_unsupported() {
        let z = Group::integers(0, 1).unwrap();
        assert!(group_algebra(&z, Field::Rational).is_err());
        let z2 = Group::cyclic(2);
        assert!(check_algebra(&group_algebra(&z2, Field::Prime(7)).unwrap()).passed());
    }
}
