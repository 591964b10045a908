use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groups::{Degree, Group};

/// A `G`-graded vector space, recorded by the dimension of each component.
///
/// Only nonzero dimensions are stored. Over `Z` the support must fit in the
/// group's window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    group: Group,
    dims: BTreeMap<Degree, usize>,
}

impl GradedVectorSpace {
    pub fn new(group: Group, dims: BTreeMap<Degree, usize>) -> Result<GradedVectorSpace> {
        let s = GradedVectorSpace::unchecked(group, dims);
        for &d in s.dims.keys() {
            if !s.group.contains(d) {
                return Err(Error::DegreeOutOfRange(d));
            }
        }
        if let (Some(w), Some(lo), Some(hi)) = (s.group.window(), s.min_degree(), s.max_degree()) {
            if !w.contains(lo) || !w.contains(hi) {
                return Err(Error::WindowTooSmall {
                    lo: w.lo(),
                    hi: w.hi(),
                    support: (lo, hi),
                });
            }
        }
        Ok(s)
    }

    /// No window check; for derived spaces such as tensor products.
    pub(crate) fn unchecked(group: Group, dims: BTreeMap<Degree, usize>) -> GradedVectorSpace {
        let dims = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        GradedVectorSpace { group, dims }
    }

    /// The zero space.
    pub fn zero(group: Group) -> GradedVectorSpace {
        GradedVectorSpace::unchecked(group, BTreeMap::new())
    }

    /// The tensor unit: one dimension in the identity degree.
    pub fn unit(group: Group) -> GradedVectorSpace {
        let e = group.identity();
        GradedVectorSpace::unchecked(group, BTreeMap::from([(e, 1)]))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    /// Degrees with a nonzero component, ascending.
    pub fn support(&self) -> Vec<Degree> {
        self.dims.keys().copied().collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.dims.keys().next_back().copied()
    }

    /// The shifted space with components `(S_g X)_d = X_{g⁻¹d}`.
    pub fn shifted(&self, g: Degree) -> Result<GradedVectorSpace> {
        if !self.group.contains(g) {
            return Err(Error::DegreeOutOfRange(g));
        }
        let dims = self
            .dims
            .iter()
            .map(|(&d, &n)| (self.group.op(g, d), n))
            .collect();
        GradedVectorSpace::new(self.group.clone(), dims)
    }
}

/// The Cauchy tensor product `(X ⊗̄ Y)_g = ⊕_p X_p ⊗ Y_{p⁻¹g}` with the offset
/// of every block inside its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTensor {
    pub space: GradedVectorSpace,
    /// `(p, g)` ↦ offset of `X_p ⊗ Y_{p⁻¹g}` inside degree `g`.
    pub offsets: BTreeMap<(Degree, Degree), usize>,
}

impl GradedTensor {
    /// Blocks of degree `g` as `(p, offset)`, in ascending `p`.
    pub fn blocks(&self, g: Degree) -> impl Iterator<Item = (Degree, usize)> + '_ {
        self.offsets
            .range((Degree::MIN, g)..)
            .filter(move |((_, d), _)| *d == g)
            .map(|(&(p, _), &o)| (p, o))
    }

    pub fn offset(&self, p: Degree, g: Degree) -> Option<usize> {
        self.offsets.get(&(p, g)).copied()
    }
}

pub fn graded_tensor(x: &GradedVectorSpace, y: &GradedVectorSpace) -> Result<GradedTensor> {
    if x.group != y.group {
        return Err(Error::GroupMismatch);
    }
    let group = &x.group;
    let mut dims: BTreeMap<Degree, usize> = BTreeMap::new();
    let mut offsets = BTreeMap::new();
    for (&p, &dp) in &x.dims {
        for (&q, &dq) in &y.dims {
            let g = group.op(p, q);
            let slot = dims.entry(g).or_insert(0);
            offsets.insert((p, g), *slot);
            *slot += dp * dq;
        }
    }
    Ok(GradedTensor {
        space: GradedVectorSpace::unchecked(group.clone(), dims),
        offsets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(group: &Group, dims: &[(Degree, usize)]) -> GradedVectorSpace {
        GradedVectorSpace::new(group.clone(), dims.iter().copied().collect()).unwrap()
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let s3 = Group::symmetric3();
        let x = space(&s3, &[(0, 2), (3, 1), (5, 4)]);
        let t = graded_tensor(&x, &GradedVectorSpace::unit(s3.clone())).unwrap();
        assert_eq!(t.space, x);
        let t = graded_tensor(&GradedVectorSpace::unit(s3), &x).unwrap();
        assert_eq!(t.space, x);
    }

    #[test]
    fn tensor_over_z2() {
        let z2 = Group::cyclic(2);
        let x = space(&z2, &[(0, 1), (1, 1)]);
        let t = graded_tensor(&x, &x).unwrap();
        assert_eq!(t.space.dim(0), 2);
        assert_eq!(t.space.dim(1), 2);
        assert_eq!(t.blocks(1).collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn tensor_with_zero() {
        let z = Group::integers(-2, 2).unwrap();
        let x = space(&z, &[(-1, 3), (2, 1)]);
        let t = graded_tensor(&x, &GradedVectorSpace::zero(z)).unwrap();
        assert_eq!(t.space.total_dim(), 0);
    }

    #[test]
    fn window_is_enforced() {
        let z = Group::integers(0, 3).unwrap();
        assert!(GradedVectorSpace::new(z.clone(), BTreeMap::from([(4, 1)])).is_err());
        let x = space(&z, &[(0, 1), (2, 1)]);
        assert!(x.shifted(2).is_err());
        assert_eq!(x.shifted(1).unwrap().support(), vec![1, 3]);
    }

    #[test]
    fn group_mismatch() {
        let a = GradedVectorSpace::unit(Group::cyclic(2));
        let b = GradedVectorSpace::unit(Group::cyclic(3));
        assert_eq!(graded_tensor(&a, &b), Err(Error::GroupMismatch));
    }
}
