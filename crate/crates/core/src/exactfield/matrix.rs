//! Dense matrices over an exact field with Gauss-Jordan kernels.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix. Zero-row and zero-column shapes are allowed and
/// behave as the corresponding zero maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Build from row vectors; all rows must share a length.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert!(
            data.iter().all(|s| s.field() == field),
            "scalar from another field"
        );
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Build from small integers given row by row.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    /// Build from column vectors of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, s) in col.iter().enumerate() {
                m[(i, j)] = s.clone();
            }
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
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
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "product of {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        assert_eq!(self.field, rhs.field, "field mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        let prod = a * b;
                        out.data[i * rhs.cols + j] += &prod;
                    }
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "sum of differently shaped matrices"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "difference of differently shaped matrices"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self += s * rhs`.
    pub fn add_scaled(&mut self, s: &Scalar, rhs: &Matrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r2, c2) = rhs.shape();
        Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |i, j| {
            &self[(i / r2, j / c2)] * &rhs[(i % r2, j % c2)]
        })
    }

    /// Horizontal concatenation with the given row count (needed when the list is empty).
    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row count");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Vertical concatenation with the given column count.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column count");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Overwrite the block starting at `(r0, c0)` with `m`.
    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(
            r0 + m.rows <= self.rows && c0 + m.cols <= self.cols,
            "block out of range"
        );
        for i in 0..m.rows {
            for j in 0..m.cols {
                self[(r0 + i, c0 + j)] = m[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)].clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self[(i, cols[j])].clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| {
            self[(rows[i], j)].clone()
        })
    }

    /// Reduced row echelon form and strictly increasing pivot columns.
    /// Pivoting takes the first nonzero entry, so results are reproducible.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv();
            if !inv.is_one() {
                for j in c..cols {
                    let v = &self.data[r * cols + j];
                    if !v.is_zero() {
                        self.data[r * cols + j] = v * &inv;
                    }
                }
            }
            let pivot_row: Vec<(usize, Scalar)> = (c..cols)
                .filter(|&j| !self.data[r * cols + j].is_zero())
                .map(|j| (j, self.data[r * cols + j].clone()))
                .collect();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let prod = &factor * v;
                    self.data[i * cols + j] -= &prod;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k[(f, t)] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                let v = &r[(i, f)];
                if !v.is_zero() {
                    k[(pc, t)] = -v;
                }
            }
        }
        k
    }

    /// Rows form a basis of the left null space (`result * self = 0`).
    pub fn left_kernel_basis(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Particular solution of `self * x = b`, or `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for k in 0..b.cols {
                x[(pc, k)] = r[(i, n + k)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let x = self.solve(&id).ok()??;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Columns of `self` forming a basis of its column space (a maximal
    /// independent set chosen left to right).
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Columns completing the columns of `self` (assumed independent) to a
    /// basis of the ambient space, drawn from the standard basis.
    pub fn complement_columns(&self) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        let aug = Matrix::hstack(self.field, n, &[self, &id]);
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= self.cols)
            .map(|&p| p - self.cols)
            .collect();
        id.select_columns(&extra)
    }

    /// A left inverse `l` with `l * self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let (_, rows) = self.transpose().rref();
        if rows.len() != self.cols {
            return None;
        }
        let inv = self.select_rows(&rows).inverse()?;
        let mut l = Matrix::zeros(self.field, self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l[(i, r)] = inv[(i, k)].clone();
            }
        }
        Some(l)
    }

    /// Coordinates of the quotient `K^n / span(self)` for independent
    /// columns: returns `(projection, lift)` where `projection` has the
    /// columns of `self` in its kernel and `projection * lift = I`.
    pub fn quotient_maps(&self) -> (Matrix, Matrix) {
        let n = self.rows;
        let comp = self.complement_columns();
        let full = Matrix::hstack(self.field, n, &[self, &comp]);
        let inv = full
            .inverse()
            .expect("subspace basis and complement form a basis");
        let proj = inv.submatrix(self.cols..n, 0..n);
        (proj, comp)
    }

    /// True when every column of `other` lies in the column space of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        if other.cols == 0 {
            return true;
        }
        matches!(self.solve(other), Ok(Some(_)))
    }

    /// Nilpotency test for square matrices.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(Q, 2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let z = Matrix::zeros(Q, 3, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(Q, 2, 2, &[2, 4, 1, 2]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(Q, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernels() {
        assert_eq!(Matrix::identity(Q, 4).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel_basis().rank(), 3);
        let f2 = FieldSpec::Prime(2);
        let k = Matrix::from_i64(f2, 1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(f2, 2, 1, &[1, 1]));
    }

    #[test]
    fn solving() {
        let b = Matrix::from_i64(Q, 2, 1, &[5, -7]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(Q, 2, 2).solve(&b).unwrap(), None);
        let x = Matrix::from_i64(Q, 1, 1, &[2])
            .solve(&Matrix::from_i64(Q, 1, 1, &[3]))
            .unwrap()
            .unwrap();
        assert_eq!(x[(0, 0)], Q.from_fraction(3, 2).unwrap());
        assert!(Matrix::identity(Q, 2)
            .solve(&Matrix::zeros(Q, 3, 1))
            .is_err());
    }

    #[test]
    fn inverse_and_complement() {
        let m = Matrix::from_i64(Q, 2, 2, &[1, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_i64(Q, 2, 2, &[1, 1, 1, 1]).inverse().is_none());
        let sub = Matrix::from_i64(Q, 3, 1, &[1, 1, 0]);
        let c = sub.complement_columns();
        assert_eq!(c.cols(), 2);
        assert_eq!(Matrix::hstack(Q, 3, &[&sub, &c]).rank(), 3);
    }
}
