//! The bundled example structures. The JSON files under `fixtures/` are
//! these values written out by `examples/write_fixtures.rs`.

use std::sync::Arc;

use crate::exactmath::Field;
use crate::graded::{group_algebra, truncated_polynomial, GradedAlgebra};
use crate::groups::Group;
use crate::twist::{cocycle_twist, quantum_plane_twist, sign_cocycle, TwistingSystem};

/// The `Z` window every bundled `Z`-graded fixture lives in.
pub const Z_WINDOW: (i64, i64) = (-12, 12);

pub fn integers() -> Group {
    Group::integers(Z_WINDOW.0, Z_WINDOW.1).expect("window is ordered")
}

pub fn z2_algebra(field: Field) -> Arc<GradedAlgebra> {
    Arc::new(group_algebra(&Group::cyclic(2), field).expect("finite group"))
}

pub fn z3_algebra(field: Field) -> Arc<GradedAlgebra> {
    Arc::new(group_algebra(&Group::cyclic(3), field).expect("finite group"))
}

pub fn s3_algebra(field: Field) -> Arc<GradedAlgebra> {
    Arc::new(group_algebra(&Group::symmetric3(), field).expect("finite group"))
}

/// Truncated polynomials over `Q` in `nvars` variables, graded by `Z`.
pub fn truncated(nvars: usize, maxdeg: usize) -> Arc<GradedAlgebra> {
    Arc::new(truncated_polynomial(&integers(), Field::Rational, nvars, maxdeg).expect("fits the window"))
}

/// Sign cocycle on `Q[Z/2]`.
pub fn sign_twist() -> TwistingSystem {
    cocycle_twist(z2_algebra(Field::Rational), sign_cocycle(Field::Rational)).expect("cocycle is complete")
}

/// `y ↦ 2y` on `k[x,y]` truncated above degree 3.
pub fn quantum_plane() -> TwistingSystem {
    let q = Field::Rational.from_i64(2);
    quantum_plane_twist(truncated(2, 3), q).expect("Z-graded fixture")
}

/// Every bundled algebra, by file stem.
pub fn algebras() -> Vec<(&'static str, Arc<GradedAlgebra>)> {
    vec![
        ("z2", z2_algebra(Field::Rational)),
        ("z3", z3_algebra(Field::Rational)),
        ("s3", s3_algebra(Field::Rational)),
        ("poly22", truncated(2, 2)),
        ("poly23", truncated(2, 3)),
    ]
}
