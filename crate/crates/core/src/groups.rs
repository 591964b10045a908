//! Grading groups: finite groups given by a multiplication table, and the
//! integers with a finite support window.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::report::{Report, Witness};

/// A group element: a table index for finite groups, an integer for `Z`.
pub type Degree = i64;

/// A finite group by multiplication table. Construction only validates the
/// table's shape; the axioms are checked by [`check_group`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    identity: usize,
    table: Vec<Vec<usize>>,
    inverses: Vec<Option<usize>>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} out of range")));
            }
        }
        let inverses = (0..n)
            .map(|g| {
                (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity)
            })
            .collect();
        Ok(FiniteGroup {
            identity,
            table,
            inverses,
        })
    }

    /// The cyclic group `Z/n` with element `k` standing for `k·1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table, 0).expect("cyclic table is well formed")
    }

    /// The symmetric group on three letters, elements in the order
    /// `id, (12), (13), (23), (123), (132)`, composed right to left.
    pub fn symmetric3() -> FiniteGroup {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table, 0).expect("S3 table is well formed")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, g: usize) -> Option<usize> {
        self.inverses.get(g).copied().flatten()
    }
}

/// Verifies identity, inverse and associativity laws, reporting the first
/// counterexample.
pub fn check_group(g: &FiniteGroup) -> Report {
    let n = g.order();
    let t = &g.table;
    let e = g.identity;
    for a in 0..n {
        if t[e][a] != a || t[a][e] != a {
            return Report::fail(
                "group",
                Witness::new([e as Degree, a as Degree], "identity law fails"),
            );
        }
    }
    for a in 0..n {
        if g.inverses[a].is_none() {
            return Report::fail("group", Witness::new([a as Degree], "element has no inverse"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a][b]][c] != t[a][t[b][c]] {
                    return Report::fail(
                        "group",
                        Witness::new(
                            [a as Degree, b as Degree, c as Degree],
                            "associativity fails",
                        ),
                    );
                }
            }
        }
    }
    Report::pass("group")
}

/// The integers, with data allowed to be nonzero only on `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerWindow {
    lo: i64,
    hi: i64,
}

impl IntegerWindow {
    pub fn new(lo: i64, hi: i64) -> Result<IntegerWindow> {
        if lo <= 0 && 0 <= hi {
            Ok(IntegerWindow { lo, hi })
        } else {
            Err(Error::InvalidGroup(format!("window [{lo}, {hi}] must contain 0")))
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Backend {
    Finite(Arc<FiniteGroup>),
    Integers(IntegerWindow),
}

/// A verified grading group. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group(Backend);

impl Group {
    /// Wraps a finite group after checking the group axioms.
    pub fn finite(g: FiniteGroup) -> Result<Group> {
        let r = check_group(&g);
        if !r.passed() {
            let w = r.witness.expect("failing report has a witness");
            return Err(Error::InvalidGroup(format!("{} at {:?}", w.reason, w.at)));
        }
        Ok(Group(Backend::Finite(Arc::new(g))))
    }

    pub fn integers(lo: i64, hi: i64) -> Result<Group> {
        Ok(Group(Backend::Integers(IntegerWindow::new(lo, hi)?)))
    }

    pub fn cyclic(n: usize) -> Group {
        Group::finite(FiniteGroup::cyclic(n)).expect("cyclic groups are groups")
    }

    pub fn symmetric3() -> Group {
        Group::finite(FiniteGroup::symmetric3()).expect("S3 is a group")
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match &self.0 {
            Backend::Finite(g) => Some(g),
            Backend::Integers(_) => None,
        }
    }

    pub fn window(&self) -> Option<IntegerWindow> {
        match &self.0 {
            Backend::Finite(_) => None,
            Backend::Integers(w) => Some(*w),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn identity(&self) -> Degree {
        match &self.0 {
            Backend::Finite(g) => g.identity as Degree,
            Backend::Integers(_) => 0,
        }
    }

    pub fn contains(&self, a: Degree) -> bool {
        match &self.0 {
            Backend::Finite(g) => 0 <= a && (a as usize) < g.order(),
            Backend::Integers(_) => true,
        }
    }

    fn check(&self, a: Degree) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::DegreeOutOfRange(a))
        }
    }

    pub fn mul(&self, a: Degree, b: Degree) -> Result<Degree> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    pub fn inv(&self, a: Degree) -> Result<Degree> {
        self.check(a)?;
        Ok(self.invert(a))
    }

    /// Product of two elements already known to belong to the group.
    pub(crate) fn op(&self, a: Degree, b: Degree) -> Degree {
        match &self.0 {
            Backend::Finite(g) => g.table[a as usize][b as usize] as Degree,
            Backend::Integers(_) => a + b,
        }
    }

    pub(crate) fn invert(&self, a: Degree) -> Degree {
        match &self.0 {
            Backend::Finite(g) => g.inverses[a as usize].expect("verified group") as Degree,
            Backend::Integers(_) => -a,
        }
    }

    /// `a⁻¹ b`, the degree that carries `a` to `b` on the right.
    pub(crate) fn ldiv(&self, a: Degree, b: Degree) -> Degree {
        self.op(self.invert(a), b)
    }

    /// All elements of a finite group, in index order.
    pub fn elements(&self) -> Option<Vec<Degree>> {
        self.as_finite()
            .map(|g| (0..g.order() as Degree).collect())
    }

    /// `Some(n)` when this is `Z/n` with element `k` meaning `k·1`.
    pub fn cyclic_order(&self) -> Option<usize> {
        let g = self.as_finite()?;
        (*g == FiniteGroup::cyclic(g.order())).then_some(g.order())
    }

    /// Integer exponent of an element of `Z` or of standard `Z/n`.
    pub(crate) fn exponent(&self, d: Degree) -> Option<i64> {
        match &self.0 {
            Backend::Integers(_) => Some(d),
            Backend::Finite(_) => self.cyclic_order().map(|_| d),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GroupData {
    Finite {
        order: usize,
        identity: usize,
        table: Vec<Vec<usize>>,
    },
    Integers {
        window: (i64, i64),
    },
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupData::Finite {
            order: self.order(),
            identity: self.identity,
            table: self.table.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match GroupData::deserialize(d)? {
            GroupData::Finite {
                order,
                identity,
                table,
            } => {
                if table.len() != order {
                    return Err(D::Error::custom(format!(
                        "order {order} does not match table with {} rows",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(table, identity).map_err(D::Error::custom)
            }
            GroupData::Integers { .. } => Err(D::Error::custom("expected a finite group")),
        }
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Backend::Finite(g) => g.serialize(s),
            Backend::Integers(w) => GroupData::Integers {
                window: (w.lo, w.hi),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Group {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match GroupData::deserialize(d)? {
            GroupData::Finite {
                order,
                identity,
                table,
            } => {
                if table.len() != order {
                    return Err(D::Error::custom(format!(
                        "order {order} does not match table with {} rows",
                        table.len()
                    )));
                }
                let g = FiniteGroup::from_table(table, identity).map_err(D::Error::custom)?;
                Group::finite(g).map_err(D::Error::custom)
            }
            GroupData::Integers { window: (lo, hi) } => {
                Group::integers(lo, hi).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two_passes() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], 0).unwrap();
        assert!(check_group(&g).passed());
    }

    #[test]
    fn missing_inverse_is_reported() {
        let g = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let r = check_group(&g);
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().at, vec![1]);
    }

    #[test]
    fn s3_is_a_nonabelian_group() {
        let g = FiniteGroup::symmetric3();
        assert!(check_group(&g).passed());
        let s3 = Group::symmetric3();
        assert_ne!(s3.mul(1, 4).unwrap(), s3.mul(4, 1).unwrap());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(s3.mul(a, b).unwrap(), g.table()[a as usize][b as usize] as i64);
            }
        }
    }

    #[test]
    fn backend_operations() {
        let z2 = Group::cyclic(2);
        assert_eq!(z2.mul(1, 1).unwrap(), 0);
        assert_eq!(z2.mul(2, 1), Err(Error::DegreeOutOfRange(2)));
        let z = Group::integers(-3, 3).unwrap();
        assert_eq!(z.inv(5).unwrap(), -5);
        assert_eq!(z.mul(2, 7).unwrap(), 9);
        assert!(Group::integers(1, 3).is_err());
    }

    #[test]
    fn cyclic_order_detection() {
        assert_eq!(Group::cyclic(3).cyclic_order(), Some(3));
        assert_eq!(Group::symmetric3().cyclic_order(), None);
    }

    #[test]
    fn json_round_trip() {
        for g in [Group::cyclic(3), Group::symmetric3(), Group::integers(-2, 5).unwrap()] {
            let s = serde_json::to_string(&g).unwrap();
            assert_eq!(serde_json::from_str::<Group>(&s).unwrap(), g);
        }
        let s = r#"{"kind":"finite","order":2,"identity":0,"table":[[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<Group>(s).is_err());
        assert!(serde_json::from_str::<FiniteGroup>(s).is_ok());
    }
}
