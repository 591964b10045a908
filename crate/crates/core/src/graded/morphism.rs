use std::borrow::Cow;
use std::collections::BTreeMap;

use super::space::GradedVectorSpace;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};
use crate::groups::Degree;

/// A degree-preserving linear map, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    field: Field,
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    components: BTreeMap<Degree, Matrix>,
}

impl GradedMorphism {
    /// Components between zero-dimensional spaces may be omitted.
    pub fn new(
        field: Field,
        source: GradedVectorSpace,
        target: GradedVectorSpace,
        components: BTreeMap<Degree, Matrix>,
    ) -> Result<GradedMorphism> {
        if source.group() != target.group() {
            return Err(Error::GroupMismatch);
        }
        let mut kept = BTreeMap::new();
        for (g, m) in components {
            let expected = (target.dim(g), source.dim(g));
            if m.shape() != expected {
                return Err(Error::Shape {
                    what: format!("component {g}"),
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
                kept.insert(g, m);
            }
        }
        for g in source.support() {
            if target.dim(g) > 0 && !kept.contains_key(&g) {
                return Err(Error::MissingComponent(format!("component {g}")));
            }
        }
        Ok(GradedMorphism {
            field,
            source,
            target,
            components: kept,
        })
    }

    pub fn identity(field: Field, space: &GradedVectorSpace) -> GradedMorphism {
        let components = space
            .dims()
            .iter()
            .map(|(&g, &n)| (g, Matrix::identity(field, n)))
            .collect();
        GradedMorphism {
            field,
            source: space.clone(),
            target: space.clone(),
            components,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    /// The degree-`g` component; empty when either side vanishes.
    pub fn component(&self, g: Degree) -> Cow<'_, Matrix> {
        match self.components.get(&g) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Matrix::zeros(
                self.field,
                self.target.dim(g),
                self.source.dim(g),
            )),
        }
    }

    pub fn components(&self) -> &BTreeMap<Degree, Matrix> {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMorphism) -> Result<GradedMorphism> {
        if inner.target != self.source {
            return Err(Error::Precondition("composable morphisms".into()));
        }
        let mut components = BTreeMap::new();
        for g in inner.source.support() {
            components.insert(g, self.component(g).matmul(&inner.component(g))?);
        }
        GradedMorphism::new(self.field, inner.source.clone(), self.target.clone(), components)
    }

    /// Componentwise inverse; the first singular component is returned as
    /// the error's context.
    pub fn inverse(&self) -> std::result::Result<GradedMorphism, Degree> {
        let degrees: Vec<Degree> = self
            .source
            .support()
            .into_iter()
            .chain(self.target.support())
            .collect();
        let mut components = BTreeMap::new();
        for g in degrees {
            let inv = self.component(g).inverse().map_err(|_| g)?;
            components.insert(g, inv);
        }
        Ok(GradedMorphism {
            field: self.field,
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    /// Same components, reinterpreted between other spaces of equal dims.
    pub fn retarget(
        &self,
        source: GradedVectorSpace,
        target: GradedVectorSpace,
    ) -> Result<GradedMorphism> {
        GradedMorphism::new(self.field, source, target, self.components.clone())
    }
}
