use std::collections::BTreeMap;

use super::curry::HomSpace;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};
use crate::graded::GradedVectorSpace;
use crate::groups::Degree;

/// One summand `Hom(M_{g⁻¹p}, N_p)` of `[[M,N]]_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBlock {
    pub p: Degree,
    pub source_degree: Degree,
    pub hom: HomSpace,
    pub offset: usize,
}

/// `[[M,N]]_g = ⊕_p Hom(M_{g⁻¹p}, N_p)` with nonzero summands in ascending
/// `p`, each flattened as in [`HomSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    degree: Degree,
    blocks: Vec<HomBlock>,
    dim: usize,
}

impl HomLayout {
    pub fn new(m: &GradedVectorSpace, n: &GradedVectorSpace, g: Degree) -> HomLayout {
        let grp = n.group();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for p in n.support() {
            let q = grp.ldiv(g, p);
            let hom = HomSpace::new(m.dim(q), n.dim(p));
            if hom.dim() == 0 {
                continue;
            }
            blocks.push(HomBlock {
                p,
                source_degree: q,
                hom,
                offset,
            });
            offset += hom.dim();
        }
        HomLayout {
            degree: g,
            blocks,
            dim: offset,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[HomBlock] {
        &self.blocks
    }

    pub fn block(&self, p: Degree) -> Option<&HomBlock> {
        self.blocks.iter().find(|b| b.p == p)
    }

    /// Projection of `[[M,N]]_g` onto the summand at `p` (a `dim(hom) × dim`
    /// matrix), zero-rowed when the summand is empty.
    pub fn projection(&self, field: Field, p: Degree) -> Matrix {
        match self.block(p) {
            Some(b) => {
                let mut m = Matrix::zeros(field, b.hom.dim(), self.dim);
                for i in 0..b.hom.dim() {
                    m.set(i, b.offset + i, field.one());
                }
                m
            }
            None => Matrix::zeros(field, 0, self.dim),
        }
    }

    /// Splits a column vector into its blocks.
    pub fn split(&self, v: &Matrix) -> Result<HomElement> {
        if v.shape() != (self.dim, 1) {
            return Err(Error::Shape {
                what: format!("hom vector of degree {}", self.degree),
                expected: (self.dim, 1),
                found: v.shape(),
            });
        }
        let mut blocks = BTreeMap::new();
        for b in &self.blocks {
            let part = v.submatrix(b.offset, b.offset + b.hom.dim(), 0, 1);
            blocks.insert(b.p, b.hom.unflatten(&part)?);
        }
        Ok(HomElement {
            degree: self.degree,
            blocks,
        })
    }

    /// Flattens a family; blocks absent from `h` count as zero.
    pub fn join(&self, field: Field, h: &HomElement) -> Result<Matrix> {
        if h.degree != self.degree {
            return Err(Error::Precondition(format!(
                "element of degree {} in a layout of degree {}",
                h.degree, self.degree
            )));
        }
        for (p, m) in &h.blocks {
            match self.block(*p) {
                Some(b) if m.shape() == (b.hom.target, b.hom.source) => {}
                Some(b) => {
                    return Err(Error::Shape {
                        what: format!("hom block {p}"),
                        expected: (b.hom.target, b.hom.source),
                        found: m.shape(),
                    })
                }
                None if m.is_zero() => {}
                None => {
                    return Err(Error::Precondition(format!(
                        "nonzero block at {p} outside the layout"
                    )))
                }
            }
        }
        let mut v = Matrix::zeros(field, self.dim, 1);
        for b in &self.blocks {
            if let Some(m) = h.blocks.get(&b.p) {
                v.paste(b.offset, 0, &b.hom.flatten(m)?);
            }
        }
        Ok(v)
    }
}

/// A homogeneous element `(f_p: M_{g⁻¹p} → N_p)_p` of the graded Hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub degree: Degree,
    pub blocks: BTreeMap<Degree, Matrix>,
}

impl HomElement {
    /// `f_p`, if stored.
    pub fn block(&self, p: Degree) -> Option<&Matrix> {
        self.blocks.get(&p)
    }
}
