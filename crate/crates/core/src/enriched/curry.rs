//! Internal Homs of vector spaces. `[Y,Z]` is the space of `|Z|×|Y|`
//! matrices, with `E_{kl}` (row `k`, column `l`) at flat index `k·|Y| + l`.

use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix};

/// Dimensions of `Hom(k^source, k^target)` and its flat indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomSpace {
    pub source: usize,
    pub target: usize,
}

impl HomSpace {
    pub fn new(source: usize, target: usize) -> HomSpace {
        HomSpace { source, target }
    }

    pub fn dim(&self) -> usize {
        self.source * self.target
    }

    pub fn index(&self, k: usize, l: usize) -> usize {
        k * self.source + l
    }

    /// A `target × source` matrix as a column of length `dim`.
    pub fn flatten(&self, f: &Matrix) -> Result<Matrix> {
        self.expect_shape(f)?;
        Matrix::new(f.field(), self.dim(), 1, f.entries().to_vec())
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(&self, v: &Matrix) -> Result<Matrix> {
        if v.shape() != (self.dim(), 1) {
            return Err(Error::Shape {
                what: "hom vector".into(),
                expected: (self.dim(), 1),
                found: v.shape(),
            });
        }
        Matrix::new(v.field(), self.target, self.source, v.entries().to_vec())
    }

    fn expect_shape(&self, f: &Matrix) -> Result<()> {
        if f.shape() != (self.target, self.source) {
            return Err(Error::Shape {
                what: "hom".into(),
                expected: (self.target, self.source),
                found: f.shape(),
            });
        }
        Ok(())
    }
}

/// Evaluation `ε^Y_Z: [Y,Z] ⊗ Y → Z`, `E_{kl} ⊗ y_j ↦ δ_{lj} z_k`.
pub fn evaluation(field: Field, y: usize, z: usize) -> Matrix {
    let mut e = Matrix::zeros(field, z, z * y * y);
    for k in 0..z {
        for l in 0..y {
            e.set(k, (k * y + l) * y + l, field.one());
        }
    }
    e
}

/// Coevaluation `η^Y_X: X → [Y, X⊗Y]`, `x ↦ (y ↦ x ⊗ y)`.
pub fn coevaluation(field: Field, x: usize, y: usize) -> Matrix {
    let mut e = Matrix::zeros(field, x * y * y, x);
    for i in 0..x {
        for j in 0..y {
            e.set((i * y + j) * y + j, i, field.one());
        }
    }
    e
}

fn check(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Shape {
            what: what.into(),
            expected: (rows, cols),
            found: m.shape(),
        });
    }
    Ok(())
}

/// `ν^♯ = ε ∘ (ν ⊗ id_Y): X⊗Y → Z` for `ν: X → [Y,Z]`.
pub fn sharp(nu: &Matrix, x: usize, y: usize, z: usize) -> Result<Matrix> {
    check(nu, z * y, x, "sharp input")?;
    let f = nu.field();
    evaluation(f, y, z).matmul(&nu.kron(&Matrix::identity(f, y))?)
}

/// `ψ^♭ = [Y,ψ] ∘ η: X → [Y,Z]` for `ψ: X⊗Y → Z`.
pub fn flat(psi: &Matrix, x: usize, y: usize, z: usize) -> Result<Matrix> {
    check(psi, z, x * y, "flat input")?;
    let f = psi.field();
    psi.kron(&Matrix::identity(f, y))?.matmul(&coevaluation(f, x, y))
}
