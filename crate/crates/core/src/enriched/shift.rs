use std::collections::BTreeSet;

use super::hom::{module_hom_space, ModuleHomSpace};
use super::layout::{HomElement, HomLayout};
use crate::error::Result;
use crate::exactmath::{Matrix, Subspace};
use crate::graded::{shift_module, GradedModule};
use crate::groups::Degree;
use crate::report::{Report, Witness};

fn canonical(space: &ModuleHomSpace, d: Degree) -> (HomLayout, Subspace) {
    let layout = space.layout(d);
    let k = space.kernel(d);
    if k.ambient() == layout.dim() {
        (layout, k)
    } else {
        let z = Subspace::zero(space.source().field(), layout.dim());
        (layout, z)
    }
}

/// The degree-`d` basis of `space`, moved into `layout` with block `p`
/// sent to `relabel(p)`. `None` when the blocks do not fit.
fn transported(
    space: &ModuleHomSpace,
    d: Degree,
    layout: &HomLayout,
    relabel: impl Fn(Degree) -> Degree,
) -> Option<Subspace> {
    let f = space.source().field();
    let k = space.kernel(d);
    let mut cols = Vec::new();
    for j in 0..k.dim() {
        let e = space.basis_element(d, j).ok()?;
        let moved = HomElement {
            degree: layout.degree(),
            blocks: e.blocks.into_iter().map(|(p, m)| (relabel(p), m)).collect(),
        };
        cols.push(layout.join(f, &moved).ok()?);
    }
    if cols.is_empty() {
        return Some(Subspace::zero(f, layout.dim()));
    }
    Some(Subspace::span(&Matrix::hstack(f, layout.dim(), &cols).ok()?))
}

fn compare(
    name: &str,
    lhs: &ModuleHomSpace,
    rhs: &ModuleHomSpace,
    to_rhs: impl Fn(Degree) -> Degree,
    from_rhs: impl Fn(Degree) -> Degree,
    relabel: impl Fn(Degree) -> Degree + Copy,
) -> Report {
    let degrees: BTreeSet<Degree> = lhs
        .degrees()
        .into_iter()
        .chain(rhs.degrees().into_iter().map(&from_rhs))
        .collect();
    let failure = degrees.into_iter().find_map(|d| {
        let (layout, expected) = canonical(lhs, d);
        let got = transported(rhs, to_rhs(d), &layout, relabel);
        (got.as_ref() != Some(&expected))
            .then(|| Witness::new([d], "bases differ after reindexing"))
    });
    Report::from_failure(name, failure)
}

/// The shift identities, as equalities of canonical bases:
/// (a) `[[M, S_g N]]_d = [[M,N]]_{g⁻¹d}`,
/// (b) `[[S_g M, N]]_d = [[M,N]]_{dg}`,
/// (c) `[[S_g M, S_g N]]_d = [[M,N]]_{g⁻¹dg}`,
/// where the summand at `p'` on the right sits at `p = g·p'` on the left in
/// (a) and (c).
pub fn check_shift_props(m: &GradedModule, n: &GradedModule, g: Degree) -> Result<Report> {
    let grp = m.group().clone();
    let (sm, sn) = (shift_module(m, g)?, shift_module(n, g)?);
    let base = module_hom_space(m, n)?;
    let a = module_hom_space(m, &sn)?;
    let b = module_hom_space(&sm, n)?;
    let c = module_hom_space(&sm, &sn)?;
    let gi = grp.invert(g);
    let shift = |p: Degree| grp.op(g, p);
    let parts = vec![
        compare("shifted target", &a, &base, |d| grp.op(gi, d), shift, shift),
        compare(
            "shifted source",
            &b,
            &base,
            |d| grp.op(d, g),
            |d| grp.op(d, gi),
            |p| p,
        ),
        compare(
            "shifted both",
            &c,
            &base,
            |d| grp.op(grp.op(gi, d), g),
            |d| grp.op(grp.op(g, d), gi),
            shift,
        ),
    ];
    Ok(Report::all("shift properties", parts))
}
