use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{lookup, validate_table, GradedAlgebra};
use super::morphism::GradedMorphism;
use super::space::GradedVectorSpace;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};
use crate::groups::{Degree, Group};
use crate::report::{first_failure, Report, Witness};

/// A graded right module: `ρ_{g,h}: M_g ⊗ A_h → M_{gh}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    space: GradedVectorSpace,
    algebra: Arc<GradedAlgebra>,
    action: BTreeMap<(Degree, Degree), Matrix>,
}

impl GradedModule {
    pub fn new(
        space: GradedVectorSpace,
        algebra: Arc<GradedAlgebra>,
        action: BTreeMap<(Degree, Degree), Matrix>,
    ) -> Result<GradedModule> {
        if space.group() != algebra.group() {
            return Err(Error::GroupMismatch);
        }
        let action = validate_table(
            algebra.field(),
            "action",
            &space,
            algebra.space(),
            &space,
            action,
        )?;
        Ok(GradedModule {
            space,
            algebra,
            action,
        })
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
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

    /// `ρ_{g,h}`, of shape `dim_M(gh) × dim_M(g)·dim_A(h)`.
    pub fn action(&self, g: Degree, h: Degree) -> Cow<'_, Matrix> {
        let gh = self.group().op(g, h);
        lookup(
            &self.action,
            self.field(),
            self.dim(gh),
            self.dim(g) * self.algebra.dim(h),
            (g, h),
        )
    }

    pub fn action_table(&self) -> &BTreeMap<(Degree, Degree), Matrix> {
        &self.action
    }

    pub fn identity_morphism(&self) -> GradedMorphism {
        GradedMorphism::identity(self.field(), &self.space)
    }

    pub(crate) fn id(&self, g: Degree) -> Matrix {
        Matrix::identity(self.field(), self.dim(g))
    }

    /// Same data over another algebra with identical components.
    pub(crate) fn over(&self, algebra: Arc<GradedAlgebra>) -> Result<GradedModule> {
        GradedModule::new(self.space.clone(), algebra, self.action.clone())
    }
}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Action associativity `ρ_{gh,k}(ρ_{g,h} ⊗ id) = ρ_{g,hk}(id ⊗ m_{h,k})` and
/// `ρ_{g,e}(id ⊗ u) = id` on the support.
pub fn check_module(m: &GradedModule) -> Report {
    let a = &m.algebra;
    let grp = m.group();
    let ms = m.support();
    let asup = a.support();
    let mut triples = Vec::new();
    for &g in &ms {
        for &h in &asup {
            for &k in &asup {
                triples.push((g, h, k));
            }
        }
    }
    let assoc = first_failure(&triples, |&(g, h, k)| {
        let lhs = m
            .action(grp.op(g, h), k)
            .matmul(&m.action(g, h).kron(&a.id(k)).unwrap())
            .unwrap();
        let rhs = m
            .action(g, grp.op(h, k))
            .matmul(&m.id(g).kron(&a.mult(h, k)).unwrap())
            .unwrap();
        (lhs != rhs).then(|| Witness::new([g, h, k], "action associativity fails"))
    });
    let e = grp.identity();
    let unit = first_failure(&ms, |&g| {
        let id = m.id(g);
        let v = m.action(g, e).matmul(&id.kron(a.unit()).unwrap()).unwrap();
        (v != id).then(|| Witness::new([g], "unit acts nontrivially"))
    });
    Report::all(
        "module",
        vec![
            Report::from_failure("associativity", assoc),
            Report::from_failure("unit", unit),
        ],
    )
}

/// `ρ^N_{g,h}(φ_g ⊗ id) = φ_{gh} ρ^M_{g,h}` for all supported `g, h`.
pub fn check_module_morphism(
    f: &GradedMorphism,
    m: &GradedModule,
    n: &GradedModule,
) -> Result<Report> {
    if f.source() != m.space() || f.target() != n.space() {
        return Err(Error::Precondition(
            "morphism source and target must match the modules".into(),
        ));
    }
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    let a = &m.algebra;
    let grp = m.group();
    let pairs: Vec<(Degree, Degree)> = m
        .support()
        .into_iter()
        .flat_map(|g| a.support().into_iter().map(move |h| (g, h)))
        .collect();
    let failure = first_failure(&pairs, |&(g, h)| {
        let lhs = n
            .action(g, h)
            .matmul(&f.component(g).kron(&a.id(h)).unwrap())
            .unwrap();
        let rhs = f.component(grp.op(g, h)).matmul(&m.action(g, h)).unwrap();
        (lhs != rhs).then(|| Witness::new([g, h], "action not preserved"))
    });
    Ok(Report::from_failure("module morphism", failure))
}
