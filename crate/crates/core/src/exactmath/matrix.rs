use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix over one exact field.
///
/// A matrix `f: k^n -> k^m` has `m` rows and `n` columns. Shapes with a zero
/// side are valid and stand for maps into or out of the zero space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// A column vector.
    pub fn column(field: Field, entries: Vec<Scalar>) -> Matrix {
        let rows = entries.len();
        Matrix::new(field, rows, 1, entries).expect("column entries share the field")
    }

    /// The `i`-th standard basis column of length `n`.
    pub fn unit_vector(field: Field, n: usize, i: usize) -> Matrix {
        Matrix::from_fn(field, n, 1, |r, _| {
            if r == i {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        }
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product. For `f` of shape `m'×m` and `g` of shape `n'×n` the
    /// result has shape `m'n'×mn` and entry `[i·n'+j, k·n+l] = f[i,k]·g[j,l]`.
    pub fn kron(&self, g: &Matrix) -> Result<Matrix> {
        self.same_field(g)?;
        let (np, n) = g.shape();
        Ok(Matrix::from_fn(
            self.field,
            self.rows * np,
            self.cols * n,
            |r, c| {
                let (i, j) = (r / np, r % np);
                let (k, l) = (c / n, c % n);
                self.get(i, k) * g.get(j, l)
            },
        ))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip(rhs, "sub", |a, b| a - b)
    }

    fn zip(
        &self,
        rhs: &Matrix,
        op: &'static str,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix> {
        self.same_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn col(&self, j: usize) -> Matrix {
        self.submatrix(0, self.rows, j, j + 1)
    }

    /// Stacks blocks vertically; all must have `cols` columns.
    pub fn vstack(field: Field, cols: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: b.field,
                });
            }
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    op: "vstack",
                    left: (rows, cols),
                    right: b.shape(),
                });
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Matrix::new(field, rows, cols, entries)
    }

    /// Places blocks side by side; all must have `rows` rows.
    pub fn hstack(field: Field, rows: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let ts: Vec<Matrix> = blocks.iter().map(Matrix::transpose).collect();
        Ok(Matrix::vstack(field, rows, &ts)?.transpose())
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub(crate) fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = self.field;
        let n = self.cols;
        let mut vecs = Vec::new();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, n, vecs)
    }

    /// Kernel basis as a list of column vectors, in canonical form.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let k = self.kernel();
        (0..k.dim()).map(|j| k.basis().col(j)).collect()
    }

    /// Exact inverse; [`Error::Singular`] when none exists.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self.clone(), Matrix::identity(self.field, n)])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    /// `self^k` for square matrices; negative powers go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Matrix> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        if base.rows != base.cols {
            return Err(Error::NotSquare {
                rows: base.rows,
                cols: base.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.matmul(&sq)?;
            }
        }
        Ok(acc)
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.get(r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = m.get(i, j) - &(&factor * m.get(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.matmul(b)
}

pub fn kron(f: &Matrix, g: &Matrix) -> Result<Matrix> {
    f.kron(g)
}

pub fn kernel_basis(m: &Matrix) -> Vec<Matrix> {
    m.kernel_basis()
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    m.inverse()
}

/// A subspace of `k^n` held in canonical form: the basis columns form a
/// matrix in reduced column echelon form, so two equal subspaces have
/// identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonical basis of the span of the given vectors (each of length `n`).
    pub fn from_vectors(field: Field, n: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let rows = vectors.len();
        let flat: Vec<Scalar> = vectors.into_iter().flatten().collect();
        let m = Matrix::new(field, rows, n, flat).expect("vectors of equal length");
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, pivots.len(), 0, n).transpose();
        Subspace { basis, pivots }
    }

    /// Canonical basis of the column span of `m`.
    pub fn span(m: &Matrix) -> Subspace {
        let t = m.transpose();
        let vectors = (0..t.rows())
            .map(|i| (0..t.cols()).map(|j| t.get(i, j).clone()).collect())
            .collect();
        Subspace::from_vectors(m.field(), m.rows(), vectors)
    }

    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace::from_vectors(field, n, Vec::new())
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, j: usize) -> Matrix {
        self.basis.col(j)
    }

    /// Coordinates of the columns of `v` in this basis, or `None` when some
    /// column lies outside the subspace.
    pub fn coordinates(&self, v: &Matrix) -> Option<Matrix> {
        if v.rows() != self.ambient() || v.field() != self.field() {
            return None;
        }
        let c = Matrix::from_fn(v.field(), self.dim(), v.cols(), |i, j| {
            v.get(self.pivots[i], j).clone()
        });
        (self.basis.matmul(&c).ok()? == *v).then_some(c)
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.coordinates(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(Field::Rational, rows)
    }

    #[test]
    fn kron_swap_example() {
        let k = q(&[vec![2]]).kron(&q(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(k, q(&[vec![0, 2], vec![2, 0]]));
    }

    #[test]
    fn kron_with_zero_object() {
        let f = q(&[vec![1, 2], vec![3, 4]]);
        let z = Matrix::zeros(Field::Rational, 0, 0);
        assert_eq!(f.kron(&z).unwrap().shape(), (0, 0));
        let z = Matrix::zeros(Field::Rational, 0, 3);
        assert_eq!(f.kron(&z).unwrap().shape(), (0, 6));
    }

    #[test]
    fn diagonal_product() {
        let f = Field::Rational;
        let a = Matrix::new(
            f,
            2,
            2,
            vec![f.ratio(1, 2).unwrap(), f.zero(), f.zero(), f.from_i64(2)],
        )
        .unwrap();
        let b = Matrix::new(f, 2, 1, vec![f.from_i64(2), f.ratio(1, 2).unwrap()]).unwrap();
        assert_eq!(a.matmul(&b).unwrap(), q(&[vec![1], vec![1]]));
    }

    #[test]
    fn kernel_of_sum_functional() {
        let k = q(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![q(&[vec![1], vec![-1]])]);
    }

    #[test]
    fn kernel_extremes() {
        assert!(Matrix::identity(Field::Rational, 3).kernel_basis().is_empty());
        let k = Matrix::zeros(Field::Rational, 2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(*v, Matrix::unit_vector(Field::Rational, 3, i));
        }
        assert_eq!(Matrix::zeros(Field::Rational, 0, 2).kernel().dim(), 2);
    }

    #[test]
    fn inverses() {
        let s = q(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.inverse().unwrap(), s);
        assert_eq!(Matrix::identity(Field::Rational, 4).inverse().unwrap(), Matrix::identity(Field::Rational, 4));
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).inverse(), Err(Error::Singular));
        assert_eq!(Matrix::zeros(Field::Rational, 0, 0).inverse().unwrap().shape(), (0, 0));
        assert!(matches!(q(&[vec![1, 2]]).inverse(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = q(&[vec![1, 2]]);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch { .. })));
        let b = Matrix::identity(Field::Prime(5), 2);
        assert!(matches!(a.matmul(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.kron(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn powers() {
        let f = Field::Rational;
        let d = q(&[vec![1, 0], vec![0, 2]]);
        assert_eq!(d.pow(3).unwrap(), q(&[vec![1, 0], vec![0, 8]]));
        let half = Matrix::new(f, 2, 2, vec![f.one(), f.zero(), f.zero(), f.ratio(1, 2).unwrap()]).unwrap();
        assert_eq!(d.pow(-1).unwrap(), half);
        assert!(d.pow(0).unwrap().is_identity());
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::span(&q(&[vec![2, 0], vec![2, 1], vec![0, 1]]));
        assert_eq!(s.dim(), 2);
        let v = q(&[vec![1], vec![3], vec![2]]);
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.basis().matmul(&c).unwrap(), v);
        assert!(s.coordinates(&q(&[vec![1], vec![0], vec![0]])).is_none());
    }

    #[test]
    fn serializes_as_strings() {
        let m = q(&[vec![1, -2]]).scale(&Field::Rational.ratio(1, 2).unwrap());
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1/2","-1"]}"#);
    }
}
