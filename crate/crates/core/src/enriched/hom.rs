use std::collections::BTreeMap;

use rayon::prelude::*;

use super::curry::{evaluation, flat};
use super::layout::{HomElement, HomLayout};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Subspace};
use crate::graded::{same_algebra, GradedModule};
use crate::groups::Degree;
use crate::report::{first_failure, Report, Witness};

fn require_same_algebra(m: &GradedModule, n: &GradedModule) -> Result<()> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    Ok(())
}

/// Degrees `g` where `[[M,N]]_g` can be nonzero: all `p·q⁻¹` with
/// `p ∈ supp N`, `q ∈ supp M`.
pub fn hom_degrees(m: &GradedModule, n: &GradedModule) -> Vec<Degree> {
    let grp = m.group();
    let mut out: Vec<Degree> = n
        .support()
        .into_iter()
        .flat_map(|p| m.support().into_iter().map(move |q| grp.op(p, grp.invert(q))))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The summands `(p, h)` of the codomain `⊕ Hom(M_{g⁻¹p} ⊗ A_h, N_{ph})`
/// of `R` and `S`, in ascending order of `g⁻¹p` then `h`.
fn codomain(m: &GradedModule, n: &GradedModule, g: Degree) -> Vec<(Degree, Degree)> {
    let grp = m.group();
    let mut out = Vec::new();
    for q in m.support() {
        let p = grp.op(g, q);
        for h in m.algebra().support() {
            if n.dim(grp.op(p, h)) > 0 {
                out.push((p, h));
            }
        }
    }
    out
}

/// `X ⊗ M_{g⁻¹q} → N_q`, evaluation of the `q`-summand of `X = [[M,N]]_g`.
pub(crate) fn eval_block(layout: &HomLayout, m: &GradedModule, n: &GradedModule, q: Degree) -> Result<Matrix> {
    let f = m.field();
    let src = m.dim(m.group().ldiv(layout.degree(), q));
    let proj = layout.projection(f, q);
    if proj.rows() == 0 {
        return Ok(Matrix::zeros(f, n.dim(q), layout.dim() * src));
    }
    evaluation(f, src, n.dim(q)).matmul(&proj.kron(&Matrix::identity(f, src))?)
}

/// The transposes `R♯, S♯: [[M,N]]_g ⊗ M_{g⁻¹p} ⊗ A_h → N_{ph}` of every
/// codomain summand `(p, h)`:
/// `R♯ = ε(id ⊗ ρ^M)` and `S♯ = ρ^N(ε ⊗ id)`.
pub fn build_rs_sharp(
    m: &GradedModule,
    n: &GradedModule,
    g: Degree,
) -> Result<Vec<((Degree, Degree), Matrix, Matrix)>> {
    require_same_algebra(m, n)?;
    let grp = m.group();
    let a = m.algebra();
    let f = m.field();
    let layout = HomLayout::new(m.space(), n.space(), g);
    let id_x = Matrix::identity(f, layout.dim());
    let mut out = Vec::new();
    for (p, h) in codomain(m, n, g) {
        let q = grp.ldiv(g, p);
        let ph = grp.op(p, h);
        let r = eval_block(&layout, m, n, ph)?.matmul(&id_x.kron(&m.action(q, h))?)?;
        let s = n
            .action(p, h)
            .matmul(&eval_block(&layout, m, n, p)?.kron(&Matrix::identity(f, a.dim(h)))?)?;
        out.push(((p, h), r, s));
    }
    Ok(out)
}

/// `R, S: [[M,N]]_g → ⊕_{p,h} Hom(M_{g⁻¹p} ⊗ A_h, N_{ph})`, the flat
/// transposes of [`build_rs_sharp`], stacked over the summands.
pub fn build_rs(m: &GradedModule, n: &GradedModule, g: Degree) -> Result<(Matrix, Matrix)> {
    let grp = m.group();
    let a = m.algebra();
    let f = m.field();
    let x = HomLayout::new(m.space(), n.space(), g).dim();
    let mut rs = Vec::new();
    let mut ss = Vec::new();
    for ((p, h), r, s) in build_rs_sharp(m, n, g)? {
        let y = m.dim(grp.ldiv(g, p)) * a.dim(h);
        let z = n.dim(grp.op(p, h));
        rs.push(flat(&r, x, y, z)?);
        ss.push(flat(&s, x, y, z)?);
    }
    Ok((Matrix::vstack(f, x, &rs)?, Matrix::vstack(f, x, &ss)?))
}

/// The direct description of `[[M,N]]_g`: families with
/// `f_{ph} ρ^M_{g⁻¹p,h} = ρ^N_{p,h}(f_p ⊗ id)` for all `p, h`, solved as
/// one linear system over the layout basis.
pub fn intertwining_kernel(m: &GradedModule, n: &GradedModule, g: Degree) -> Result<Subspace> {
    require_same_algebra(m, n)?;
    let f = m.field();
    let layout = HomLayout::new(m.space(), n.space(), g);
    let mut columns = Vec::with_capacity(layout.dim());
    for x in 0..layout.dim() {
        let e = layout.split(&Matrix::unit_vector(f, layout.dim(), x))?;
        let mut col = Vec::new();
        for (_, d) in defects(m, n, &e) {
            col.extend(d.entries().iter().cloned());
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let eqs = Matrix::from_fn(f, rows, layout.dim(), |i, j| columns[j][i].clone());
    Ok(eqs.kernel())
}

/// `f_{ph} ρ^M_{g⁻¹p,h} - ρ^N_{p,h}(f_p ⊗ id)` for every summand.
fn defects(m: &GradedModule, n: &GradedModule, e: &HomElement) -> Vec<((Degree, Degree), Matrix)> {
    let grp = m.group();
    let a = m.algebra();
    let fld = m.field();
    let g = e.degree;
    let block = |p: Degree| -> Matrix {
        e.block(p).cloned().unwrap_or_else(|| {
            Matrix::zeros(fld, n.dim(p), m.dim(grp.ldiv(g, p)))
        })
    };
    codomain(m, n, g)
        .into_iter()
        .map(|(p, h)| {
            let q = grp.ldiv(g, p);
            let lhs = block(grp.op(p, h)).matmul(&m.action(q, h)).unwrap();
            let rhs = n
                .action(p, h)
                .matmul(&block(p).kron(&a.id(h)).unwrap())
                .unwrap();
            ((p, h), lhs.sub(&rhs).unwrap())
        })
        .collect()
}

/// The first summand `(p, h)` where `e` fails to intertwine.
pub fn intertwining_failure(m: &GradedModule, n: &GradedModule, e: &HomElement) -> Option<Witness> {
    defects(m, n, e)
        .into_iter()
        .find(|(_, d)| !d.is_zero())
        .map(|((p, h), _)| Witness::new([e.degree, p, h], "family does not intertwine the actions"))
}

/// `[[M,N]]_A`: per degree, the layout and the canonical basis of
/// `ker(R - S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHomSpace {
    source: GradedModule,
    target: GradedModule,
    spaces: BTreeMap<Degree, (HomLayout, Subspace)>,
}

pub fn module_hom_space(m: &GradedModule, n: &GradedModule) -> Result<ModuleHomSpace> {
    module_hom_space_at(m, n, &hom_degrees(m, n))
}

/// [`module_hom_space`] restricted to the listed degrees; every other
/// degree reads as zero.
pub fn module_hom_space_at(
    m: &GradedModule,
    n: &GradedModule,
    degrees: &[Degree],
) -> Result<ModuleHomSpace> {
    require_same_algebra(m, n)?;
    let all = hom_degrees(m, n);
    let wanted: Vec<Degree> = degrees.iter().copied().filter(|g| all.contains(g)).collect();
    let spaces = wanted
        .into_par_iter()
        .map(|g| {
            let (r, s) = build_rs(m, n, g)?;
            let layout = HomLayout::new(m.space(), n.space(), g);
            Ok((g, (layout, r.sub(&s)?.kernel())))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ModuleHomSpace {
        source: m.clone(),
        target: n.clone(),
        spaces,
    })
}

impl ModuleHomSpace {
    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    /// Degrees with a nonzero ambient layout.
    pub fn degrees(&self) -> Vec<Degree> {
        self.spaces.keys().copied().collect()
    }

    pub fn layout(&self, g: Degree) -> HomLayout {
        match self.spaces.get(&g) {
            Some((l, _)) => l.clone(),
            None => HomLayout::new(self.source.space(), self.target.space(), g),
        }
    }

    pub fn kernel(&self, g: Degree) -> Subspace {
        match self.spaces.get(&g) {
            Some((_, k)) => k.clone(),
            None => Subspace::zero(self.source.field(), 0),
        }
    }

    pub fn dim(&self, g: Degree) -> usize {
        self.spaces.get(&g).map_or(0, |(_, k)| k.dim())
    }

    /// Degree-wise dimensions, nonzero only.
    pub fn dims(&self) -> BTreeMap<Degree, usize> {
        self.spaces
            .iter()
            .filter(|(_, (_, k))| k.dim() > 0)
            .map(|(&g, (_, k))| (g, k.dim()))
            .collect()
    }

    /// The `j`-th canonical basis family of degree `g`.
    pub fn basis_element(&self, g: Degree, j: usize) -> Result<HomElement> {
        let (layout, k) = self
            .spaces
            .get(&g)
            .filter(|(_, k)| j < k.dim())
            .ok_or(Error::DegreeOutOfRange(g))?;
        layout.split(&k.vector(j))
    }

    /// The family with the given coordinates (a column) in the basis.
    pub fn element(&self, g: Degree, coords: &Matrix) -> Result<HomElement> {
        let layout = self.layout(g);
        let k = self.kernel(g);
        if coords.shape() != (k.dim(), 1) {
            return Err(Error::Shape {
                what: format!("coordinates in degree {g}"),
                expected: (k.dim(), 1),
                found: coords.shape(),
            });
        }
        if k.dim() == 0 {
            return Ok(HomElement {
                degree: g,
                blocks: BTreeMap::new(),
            });
        }
        layout.split(&k.basis().matmul(coords)?)
    }

    /// Coordinates of a family in the canonical basis.
    pub fn coordinates(&self, e: &HomElement) -> Result<Matrix> {
        let f = self.source.field();
        let v = self.layout(e.degree).join(f, e)?;
        let k = self.kernel(e.degree);
        if v.rows() == 0 {
            return Ok(Matrix::zeros(f, 0, 1));
        }
        k.coordinates(&v).ok_or_else(|| {
            Error::NotInKernel(format!("family of degree {} is not a module map", e.degree))
        })
    }

    /// The degree-`g` part as a flat vector in the layout.
    pub fn vector(&self, e: &HomElement) -> Result<Matrix> {
        self.layout(e.degree).join(self.source.field(), e)
    }
}

/// `(h₁ ∘ h₂)_p = (h₁)_p ∘ (h₂)_{g⁻¹p}` for `h₁ ∈ [[N,P]]_g`,
/// `h₂ ∈ [[M,N]]_h`; the result lies in `[[M,P]]_{gh}`, which is checked.
pub fn compose_homs(
    outer: &ModuleHomSpace,
    h1: &HomElement,
    inner: &ModuleHomSpace,
    h2: &HomElement,
) -> Result<HomElement> {
    if outer.source != inner.target {
        return Err(Error::Precondition("hom spaces are not composable".into()));
    }
    outer.coordinates(h1)?;
    inner.coordinates(h2)?;
    let (m, p) = (&inner.source, &outer.target);
    let grp = m.group();
    let g = h1.degree;
    let degree = grp.op(g, h2.degree);
    let layout = HomLayout::new(m.space(), p.space(), degree);
    let mut blocks = BTreeMap::new();
    for b in layout.blocks() {
        let mid = grp.ldiv(g, b.p);
        if let (Some(x), Some(y)) = (h1.block(b.p), h2.block(mid)) {
            blocks.insert(b.p, x.matmul(y)?);
        }
    }
    let out = HomElement { degree, blocks };
    if let Some(w) = intertwining_failure(m, p, &out) {
        return Err(Error::NotInKernel(format!(
            "composite fails to intertwine at {:?}",
            w.at
        )));
    }
    Ok(out)
}

/// The identity family `(id_{M_p})_p` in degree `e`.
pub fn identity_hom(space: &ModuleHomSpace) -> Result<HomElement> {
    if space.source != space.target {
        return Err(Error::Precondition("identity needs an endomorphism space".into()));
    }
    let m = &space.source;
    let e = m.group().identity();
    let blocks = m.support().into_iter().map(|p| (p, m.id(p))).collect();
    let out = HomElement { degree: e, blocks };
    space.coordinates(&out)?;
    Ok(out)
}

/// For every kernel basis vector `ν` of every degree:
/// `R♯(ν ⊗ id) = S♯(ν ⊗ id)` on each summand.
pub fn check_equalizer_lemma(space: &ModuleHomSpace) -> Result<Report> {
    let (m, n) = (&space.source, &space.target);
    let f = m.field();
    let mut items = Vec::new();
    for g in space.degrees() {
        for ((p, h), r, s) in build_rs_sharp(m, n, g)? {
            items.push((g, p, h, r, s));
        }
    }
    let failure = first_failure(&items, |(g, p, h, r, s)| {
        let k = space.kernel(*g);
        let y = r.cols() / k.ambient().max(1);
        let id = Matrix::identity(f, y);
        (0..k.dim()).find_map(|j| {
            let v = k.vector(j).kron(&id).unwrap();
            (r.matmul(&v).unwrap() != s.matmul(&v).unwrap())
                .then(|| Witness::new([*g, *p, *h], "transposed maps differ on a kernel vector"))
        })
    });
    Ok(Report::from_failure("equalizer lemma", failure))
}
