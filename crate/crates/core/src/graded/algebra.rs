use std::borrow::Cow;
use std::collections::BTreeMap;

use super::morphism::GradedMorphism;
use super::space::GradedVectorSpace;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};
use crate::groups::{Degree, Group};
use crate::report::{first_failure, Report, Witness};

/// Shape-checks a table of structure maps `(g, h) ↦ Z_{gh} ← X_g ⊗ Y_h` and
/// drops the empty ones.
pub(crate) fn validate_table(
    field: Field,
    what: &str,
    x: &GradedVectorSpace,
    y: &GradedVectorSpace,
    z: &GradedVectorSpace,
    table: BTreeMap<(Degree, Degree), Matrix>,
) -> Result<BTreeMap<(Degree, Degree), Matrix>> {
    let group = x.group();
    let mut kept = BTreeMap::new();
    for ((g, h), m) in table {
        let gh = group.mul(g, h)?;
        let expected = (z.dim(gh), x.dim(g) * y.dim(h));
        if m.shape() != expected {
            return Err(Error::Shape {
                what: format!("{what} {g},{h}"),
                expected,
                found: m.shape(),
            });
        }
        if m.field() != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: m.field(),
            });
        }
        if expected.0 > 0 && expected.1 > 0 {
            kept.insert((g, h), m);
        }
    }
    for g in x.support() {
        for h in y.support() {
            if z.dim(group.op(g, h)) > 0 && !kept.contains_key(&(g, h)) {
                return Err(Error::MissingComponent(format!("{what} {g},{h}")));
            }
        }
    }
    Ok(kept)
}

pub(crate) fn lookup<'a>(
    table: &'a BTreeMap<(Degree, Degree), Matrix>,
    field: Field,
    rows: usize,
    cols: usize,
    key: (Degree, Degree),
) -> Cow<'a, Matrix> {
    match table.get(&key) {
        Some(m) => Cow::Borrowed(m),
        None => Cow::Owned(Matrix::zeros(field, rows, cols)),
    }
}

/// A `G`-graded algebra: components `A_g`, multiplications
/// `m_{g,h}: A_g ⊗ A_h → A_{gh}` and a unit `u: k → A_e`.
///
/// Construction checks shapes only; the axioms are checked by
/// [`check_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Field,
    space: GradedVectorSpace,
    mult: BTreeMap<(Degree, Degree), Matrix>,
    unit: Matrix,
}

impl GradedAlgebra {
    pub fn new(
        field: Field,
        space: GradedVectorSpace,
        mult: BTreeMap<(Degree, Degree), Matrix>,
        unit: Matrix,
    ) -> Result<GradedAlgebra> {
        let mult = validate_table(field, "mult", &space, &space, &space, mult)?;
        let e = space.group().identity();
        if unit.shape() != (space.dim(e), 1) {
            return Err(Error::Shape {
                what: "unit".into(),
                expected: (space.dim(e), 1),
                found: unit.shape(),
            });
        }
        if unit.field() != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: unit.field(),
            });
        }
        Ok(GradedAlgebra {
            field,
            space,
            mult,
            unit,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn group(&self) -> &Group {
        self.space.group()
    }

    pub fn dim(&self, g: Degree) -> usize {
        self.space.dim(g)
    }

    pub fn support(&self) -> Vec<Degree> {
        self.space.support()
    }

    /// `m_{g,h}`, of shape `dim(gh) × dim(g)·dim(h)`.
    pub fn mult(&self, g: Degree, h: Degree) -> Cow<'_, Matrix> {
        let gh = self.group().op(g, h);
        lookup(
            &self.mult,
            self.field,
            self.dim(gh),
            self.dim(g) * self.dim(h),
            (g, h),
        )
    }

    /// Nonempty multiplication matrices.
    pub fn mult_table(&self) -> &BTreeMap<(Degree, Degree), Matrix> {
        &self.mult
    }

    /// The unit as a column of length `dim(e)`.
    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn identity_morphism(&self) -> GradedMorphism {
        GradedMorphism::identity(self.field, &self.space)
    }

    pub(crate) fn id(&self, g: Degree) -> Matrix {
        Matrix::identity(self.field, self.dim(g))
    }
}

fn triples(support: &[Degree]) -> Vec<(Degree, Degree, Degree)> {
    let mut out = Vec::with_capacity(support.len().pow(3));
    for &g in support {
        for &h in support {
            for &k in support {
                out.push((g, h, k));
            }
        }
    }
    out
}

/// Associativity `m_{gh,k}(m_{g,h} ⊗ id) = m_{g,hk}(id ⊗ m_{h,k})` on all
/// supported triples and two-sided unitality, first failure reported.
pub fn check_algebra(a: &GradedAlgebra) -> Report {
    let grp = a.group();
    let support = a.support();
    let assoc = first_failure(&triples(&support), |&(g, h, k)| {
        let lhs = a
            .mult(grp.op(g, h), k)
            .matmul(&a.mult(g, h).kron(&a.id(k)).unwrap())
            .unwrap();
        let rhs = a
            .mult(g, grp.op(h, k))
            .matmul(&a.id(g).kron(&a.mult(h, k)).unwrap())
            .unwrap();
        (lhs != rhs).then(|| Witness::new([g, h, k], "associativity fails"))
    });
    let e = grp.identity();
    let unit = first_failure(&support, |&g| {
        let id = a.id(g);
        let left = a.mult(e, g).matmul(&a.unit.kron(&id).unwrap()).unwrap();
        if left != id {
            return Some(Witness::new([g], "left unit law fails"));
        }
        let right = a.mult(g, e).matmul(&id.kron(&a.unit).unwrap()).unwrap();
        (right != id).then(|| Witness::new([g], "right unit law fails"))
    });
    Report::all(
        "algebra",
        vec![
            Report::from_failure("associativity", assoc),
            Report::from_failure("unit", unit),
        ],
    )
}

/// `m^B_{g,h}(φ_g ⊗ φ_h) = φ_{gh} m^A_{g,h}` for all supported `g, h`, and
/// `φ_e u^A = u^B`.
pub fn check_algebra_morphism(
    f: &GradedMorphism,
    a: &GradedAlgebra,
    b: &GradedAlgebra,
) -> Result<Report> {
    if f.source() != a.space() || f.target() != b.space() {
        return Err(Error::Precondition(
            "morphism source and target must match the algebras".into(),
        ));
    }
    let grp = a.group();
    let support = a.support();
    let pairs: Vec<(Degree, Degree)> = support
        .iter()
        .flat_map(|&g| support.iter().map(move |&h| (g, h)))
        .collect();
    let mult = first_failure(&pairs, |&(g, h)| {
        let lhs = b
            .mult(g, h)
            .matmul(&f.component(g).kron(&f.component(h)).unwrap())
            .unwrap();
        let rhs = f.component(grp.op(g, h)).matmul(&a.mult(g, h)).unwrap();
        (lhs != rhs).then(|| Witness::new([g, h], "multiplication not preserved"))
    });
    let e = grp.identity();
    let unit = (f.component(e).matmul(a.unit()).unwrap() != *b.unit())
        .then(|| Witness::new([e], "unit not preserved"));
    Ok(Report::all(
        "algebra morphism",
        vec![
            Report::from_failure("multiplicative", mult),
            Report::from_failure("unital", unit),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::constructors::{group_algebra, truncated_polynomial};

    fn with_mult(a: &GradedAlgebra, key: (Degree, Degree), m: Matrix) -> GradedAlgebra {
        let mut mult = a.mult_table().clone();
        mult.insert(key, m);
        GradedAlgebra::new(a.field(), a.space().clone(), mult, a.unit().clone()).unwrap()
    }

    #[test]
    fn group_algebras_pass() {
        for g in [Group::cyclic(2), Group::cyclic(3), Group::symmetric3()] {
            assert!(check_algebra(&group_algebra(&g, Field::Rational).unwrap()).passed());
        }
    }

    #[test]
    fn negated_square_is_still_associative() {
        let a = group_algebra(&Group::cyclic(2), Field::Rational).unwrap();
        let b = with_mult(&a, (1, 1), Matrix::from_i64(Field::Rational, &[vec![-1]]));
        assert!(check_algebra(&b).passed());
    }

    #[test]
    fn zeroed_product_fails_at_first_triple() {
        let a = group_algebra(&Group::cyclic(3), Field::Rational).unwrap();
        let b = with_mult(&a, (1, 1), Matrix::from_i64(Field::Rational, &[vec![0]]));
        let r = check_algebra(&b);
        assert!(!r.passed());
        // (1,1,1) is not a counterexample: both sides vanish there.
        assert_eq!(r.witness.unwrap().at, vec![1, 1, 2]);
    }

    #[test]
    fn truncated_polynomial_passes() {
        let z = Group::integers(0, 3).unwrap();
        let a = truncated_polynomial(&z, Field::Rational, 2, 3).unwrap();
        assert!(check_algebra(&a).passed());
    }

    #[test]
    fn shape_errors() {
        let a = group_algebra(&Group::cyclic(2), Field::Rational).unwrap();
        let mut mult = a.mult_table().clone();
        mult.insert((1, 1), Matrix::identity(Field::Rational, 2));
        let err = GradedAlgebra::new(a.field(), a.space().clone(), mult, a.unit().clone());
        assert!(matches!(err, Err(Error::Shape { .. })));
        let mut mult = a.mult_table().clone();
        mult.remove(&(1, 1));
        let err = GradedAlgebra::new(a.field(), a.space().clone(), mult, a.unit().clone());
        assert!(matches!(err, Err(Error::MissingComponent(_))));
    }

    #[test]
    fn negation_is_an_automorphism() {
        let q = Field::Rational;
        let a = group_algebra(&Group::cyclic(2), q).unwrap();
        let f = GradedMorphism::new(
            q,
            a.space().clone(),
            a.space().clone(),
            BTreeMap::from([
                (0, Matrix::from_i64(q, &[vec![1]])),
                (1, Matrix::from_i64(q, &[vec![-1]])),
            ]),
        )
        .unwrap();
        assert!(check_algebra_morphism(&f, &a, &a).unwrap().passed());
        assert!(check_algebra_morphism(&a.identity_morphism(), &a, &a).unwrap().passed());
        let g = GradedMorphism::new(
            q,
            a.space().clone(),
            a.space().clone(),
            BTreeMap::from([
                (0, Matrix::from_i64(q, &[vec![2]])),
                (1, Matrix::from_i64(q, &[vec![1]])),
            ]),
        )
        .unwrap();
        let r = check_algebra_morphism(&g, &a, &a).unwrap();
        assert!(!r.passed());
        assert!(!r.parts[1].passed());
    }
}
