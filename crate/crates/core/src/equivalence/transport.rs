use std::collections::BTreeMap;

use crate::enriched::{HomElement, ModuleHomSpace};
use crate::error::{Error, Result};
use crate::exactmath::Matrix;
use crate::graded::GradedMorphism;
use crate::groups::Degree;

/// The linear map `[[from]]_d → [[to]]_d` in canonical coordinates, given
/// by a transformation of families.
pub(crate) fn coordinate_map(
    from: &ModuleHomSpace,
    d_from: Degree,
    to: &ModuleHomSpace,
    d_to: Degree,
    apply: impl Fn(HomElement) -> Result<HomElement>,
) -> Result<Matrix> {
    let f = from.source().field();
    let mut cols = Vec::new();
    for j in 0..from.dim(d_from) {
        let out = apply(from.basis_element(d_from, j)?)?;
        if out.degree != d_to {
            return Err(Error::Precondition("transport changes the degree".into()));
        }
        cols.push(to.coordinates(&out)?);
    }
    if cols.is_empty() {
        return Ok(Matrix::zeros(f, to.dim(d_to), 0));
    }
    Matrix::hstack(f, to.dim(d_to), &cols)
}

/// `f_*: [[W, M]]_d → [[W, N]]_d`, `h ↦ f ∘ h`, for a module map `f: M → N`.
pub fn pushforward(
    f: &GradedMorphism,
    from: &ModuleHomSpace,
    to: &ModuleHomSpace,
    d: Degree,
) -> Result<Matrix> {
    if from.source() != to.source()
        || f.source() != from.target().space()
        || f.target() != to.target().space()
    {
        return Err(Error::Precondition("pushforward spaces do not match".into()));
    }
    coordinate_map(from, d, to, d, |h| {
        let blocks = h
            .blocks
            .iter()
            .map(|(&p, m)| Ok((p, f.component(p).matmul(m)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(HomElement { degree: d, blocks })
    })
}

/// `g^*: [[M, W]]_d → [[L, W]]_d`, `h ↦ h ∘ g`, for a module map `g: L → M`.
pub fn pullback(
    g: &GradedMorphism,
    from: &ModuleHomSpace,
    to: &ModuleHomSpace,
    d: Degree,
) -> Result<Matrix> {
    if from.target() != to.target()
        || g.target() != from.source().space()
        || g.source() != to.source().space()
    {
        return Err(Error::Precondition("pullback spaces do not match".into()));
    }
    let grp = from.source().group().clone();
    coordinate_map(from, d, to, d, |h| {
        let blocks = h
            .blocks
            .iter()
            .map(|(&p, m)| Ok((p, m.matmul(&g.component(grp.ldiv(d, p)))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(HomElement { degree: d, blocks })
    })
}

/// Reads the families of `[[from]]_{d_from}` as families of `[[to]]_{d_to}`
/// with the summand at `p` moved to `relabel(p)`; the shift maps are of
/// this form.
pub fn relabel_map(
    from: &ModuleHomSpace,
    d_from: Degree,
    to: &ModuleHomSpace,
    d_to: Degree,
    relabel: impl Fn(Degree) -> Degree,
) -> Result<Matrix> {
    coordinate_map(from, d_from, to, d_to, |h| {
        Ok(HomElement {
            degree: d_to,
            blocks: h.blocks.into_iter().map(|(p, m)| (relabel(p), m)).collect(),
        })
    })
}
