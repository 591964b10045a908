//! The algebra axioms restated for the assembled multiplication
//! `m_g = ⊕_h m_{h,h⁻¹g}` on the Cauchy tensor product, checked directly as
//! ungraded-style identities.

use std::collections::BTreeSet;

use super::algebra::GradedAlgebra;
use super::space::{graded_tensor, GradedTensor};
use crate::exactmath::Matrix;
use crate::groups::Degree;
use crate::report::{Report, Witness};

/// Assembled multiplication `m_g: (A ⊗̄ A)_g → A_g`.
pub fn assembled_mult(a: &GradedAlgebra, t: &GradedTensor, g: Degree) -> Matrix {
    let grp = a.group();
    let f = a.field();
    let mut out = Matrix::zeros(f, a.dim(g), t.space.dim(g));
    for (p, off) in t.blocks(g) {
        out.paste(0, off, &a.mult(p, grp.ldiv(p, g)));
    }
    out
}

/// Verdict of the assembled-data check. The witness is the least failing
/// triple (or degree) so it lines up with [`check_algebra`](super::check_algebra).
pub fn cauchy_algebra_oracle(a: &GradedAlgebra) -> Report {
    let grp = a.group();
    let f = a.field();
    let sp = a.space();
    let t = graded_tensor(sp, sp).expect("same group");
    let left = graded_tensor(&t.space, sp).expect("same group");
    let right = graded_tensor(sp, &t.space).expect("same group");

    let mut failing: BTreeSet<(Degree, Degree, Degree)> = BTreeSet::new();
    for k in left.space.support() {
        let mk = assembled_mult(a, &t, k);
        let (n_left, n_right, n_mid) = (left.space.dim(k), right.space.dim(k), t.space.dim(k));

        // (m ⊗̄ id)_k: ((A⊗̄A)⊗̄A)_k → (A⊗̄A)_k, block-diagonal over q.
        let mut m_id = Matrix::zeros(f, n_mid, n_left);
        for (q, off) in left.blocks(k) {
            // A_q = 0 leaves no block in the target.
            let Some(row) = t.offset(q, k) else { continue };
            let s = grp.ldiv(q, k);
            let block = assembled_mult(a, &t, q).kron(&a.id(s)).unwrap();
            m_id.paste(row, off, &block);
        }
        // (id ⊗̄ m)_k: (A⊗̄(A⊗̄A))_k → (A⊗̄A)_k, block-diagonal over p.
        let mut id_m = Matrix::zeros(f, n_mid, n_right);
        for (p, off) in right.blocks(k) {
            let Some(row) = t.offset(p, k) else { continue };
            let s = grp.ldiv(p, k);
            let block = a.id(p).kron(&assembled_mult(a, &t, s)).unwrap();
            id_m.paste(row, off, &block);
        }
        // Associator ((A_p ⊗ A_r) ⊗ A_s) → (A_p ⊗ (A_r ⊗ A_s)), as a column
        // permutation, remembering which triple each column belongs to.
        let mut assoc = Matrix::zeros(f, n_right, n_left);
        let mut owner = vec![(0, 0, 0); n_left];
        for (q, loff) in left.blocks(k) {
            let s = grp.ldiv(q, k);
            let ds = a.dim(s);
            for (p, toff) in t.blocks(q) {
                let r = grp.ldiv(p, q);
                let dr = a.dim(r);
                let roff = right.offset(p, k).expect("block exists");
                let inner = t.space.dim(grp.ldiv(p, k));
                let inner_off = t.offset(r, grp.ldiv(p, k)).expect("block exists");
                for i in 0..a.dim(p) {
                    for j in 0..dr {
                        for l in 0..ds {
                            let col = loff + (toff + i * dr + j) * ds + l;
                            let row = roff + i * inner + inner_off + j * ds + l;
                            assoc.set(row, col, f.one());
                            owner[col] = (p, r, s);
                        }
                    }
                }
            }
        }
        let lhs = mk.matmul(&m_id).unwrap();
        let rhs = mk.matmul(&id_m).unwrap().matmul(&assoc).unwrap();
        for (col, &triple) in owner.iter().enumerate() {
            if (0..lhs.rows()).any(|row| lhs.get(row, col) != rhs.get(row, col)) {
                failing.insert(triple);
            }
        }
    }
    let assoc = failing
        .first()
        .map(|&(g, h, k)| Witness::new([g, h, k], "associativity fails"));

    let e = grp.identity();
    let mut unit = None;
    for g in sp.support() {
        let id = a.id(g);
        let mg = assembled_mult(a, &t, g);
        let n_mid = t.space.dim(g);
        let mut u_id = Matrix::zeros(f, n_mid, a.dim(g));
        u_id.paste(t.offset(e, g).unwrap_or(0), 0, &a.unit().kron(&id).unwrap());
        if mg.matmul(&u_id).unwrap() != id {
            unit = Some(Witness::new([g], "left unit law fails"));
            break;
        }
        let mut id_u = Matrix::zeros(f, n_mid, a.dim(g));
        id_u.paste(t.offset(g, g).unwrap_or(0), 0, &id.kron(a.unit()).unwrap());
        if mg.matmul(&id_u).unwrap() != id {
            unit = Some(Witness::new([g], "right unit law fails"));
            break;
        }
    }
    Report::all(
        "algebra",
        vec![
            Report::from_failure("associativity", assoc),
            Report::from_failure("unit", unit),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::graded::{check_algebra, group_algebra, truncated_polynomial};
    use crate::groups::Group;

    #[test]
    fn agrees_on_fixtures() {
        let q = Field::Rational;
        let algebras = [
            group_algebra(&Group::cyclic(2), q).unwrap(),
            group_algebra(&Group::symmetric3(), q).unwrap(),
            truncated_polynomial(&Group::integers(-1, 4).unwrap(), q, 2, 3).unwrap(),
        ];
        for a in &algebras {
            assert_eq!(cauchy_algebra_oracle(a), check_algebra(a));
            assert!(cauchy_algebra_oracle(a).passed());
        }
    }

    #[test]
    fn matches_witness_on_broken_algebra() {
        let q = Field::Rational;
        let a = group_algebra(&Group::cyclic(3), q).unwrap();
        let mut mult = a.mult_table().clone();
        mult.insert((1, 1), Matrix::from_i64(q, &[vec![0]]));
        let b = GradedAlgebra::new(q, a.space().clone(), mult, a.unit().clone()).unwrap();
        let r = cauchy_algebra_oracle(&b);
        assert!(!r.passed());
        assert_eq!(r, check_algebra(&b));
    }
}
