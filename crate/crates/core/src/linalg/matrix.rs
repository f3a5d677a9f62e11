// Copyright 2026 The vqsvd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::ops::{Index, IndexMut};

use crate::error::{dim, input, Result};
use crate::scalar::{c, cone, czero, Real, C};

/// Complex dense matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Real> {
    rows: usize,
    cols: usize,
    entries: Vec<C<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<C<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return input(format!("matrix shape {rows}x{cols} has an empty side"));
        }
        if entries.len() != rows * cols {
            return dim(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            ));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[T]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| c(x, T::zero())).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix sides must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| czero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { cone() } else { czero() })
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { c(values[i], T::zero()) } else { czero() })
    }

    /// Stacks column vectors side by side.
    pub fn from_columns(columns: &[Vec<C<T>>]) -> Result<Self> {
        let Some(first) = columns.first() else {
            return input("no columns supplied");
        };
        let rows = first.len();
        if columns.iter().any(|col| col.len() != rows) {
            return dim("columns have differing lengths");
        }
        Self::new(
            rows,
            columns.len(),
            (0..rows * columns.len())
                .map(|k| columns[k % columns.len()][k / columns.len()])
                .collect(),
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[C<T>]) {
        assert_eq!(col.len(), self.rows, "column length");
        for (i, &z) in col.iter().enumerate() {
            self[(i, j)] = z;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == T::zero())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Adds `s * other` in place.
    pub fn axpy(&mut self, s: C<T>, other: &Self) {
        assert!(self.rows == other.rows && self.cols == other.cols, "axpy shape mismatch");
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a += s * b;
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn try_dot(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == czero() {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn dot(&self, other: &Self) -> Self {
        self.try_dot(other).expect("matrix product shape")
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(x.len(), self.cols, "matvec length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(czero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `self† x` without materializing the adjoint.
    pub fn adjoint_matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(x.len(), self.rows, "adjoint matvec length");
        let mut out = vec![czero(); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * xi;
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Frobenius norm of `self† self − I`.
    pub fn unitarity_error(&self) -> T {
        let g = self.adjoint().dot(self);
        super::frobenius_norm(&g.try_sub(&Self::identity(self.cols)).expect("square gram"))
    }

    /// Zero-pads to `rows x cols` (top-left block keeps the data).
    pub fn padded(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows && cols >= self.cols, "padding cannot shrink");
        Self::from_fn(rows, cols, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)]
            } else {
                czero()
            }
        })
    }

    /// Top-left `rows x cols` block.
    pub fn cropped(&self, rows: usize, cols: usize) -> Self {
        assert!(rows <= self.rows && cols <= self.cols, "crop larger than matrix");
        Self::from_fn(rows, cols, |i, j| self[(i, j)])
    }

    /// Converts to another scalar width.
    pub fn cast<S: Real>(&self) -> DenseMatrix<S> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|&z| crate::scalar::cast_complex(z))
                .collect(),
        }
    }
}

impl<T: Real> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    assert_eq!(a.len(), b.len(), "inner product length");
    a.iter()
        .zip(b)
        .fold(czero(), |acc, (&x, &y)| acc + x.conj() * y)
}

pub fn norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Returns `v / ‖v‖`, or `None` for a zero vector.
pub fn normalized<T: Real>(v: &[C<T>]) -> Option<Vec<C<T>>> {
    let n = norm(v);
    if n == T::zero() {
        return None;
    }
    Some(v.iter().map(|&z| z / n).collect())
}

/// Computational basis vector `e_j` of dimension `n`.
pub fn basis_vector<T: Real>(n: usize, j: usize) -> Vec<C<T>> {
    let mut v = vec![czero(); n];
    v[j] = cone();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        assert!(DenseMatrix::<f64>::new(2, 2, vec![czero(); 3]).is_err());
        assert!(DenseMatrix::<f64>::new(0, 2, vec![]).is_err());
        assert!(DenseMatrix::<f64>::new(1, 2, vec![czero(); 2]).is_ok());
    }

    #[test]
    fn product_and_adjoint() {
        let a = DenseMatrix::<f64>::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let p = a.dot(&a.adjoint());
        // a a† = [[2, 2], [2, 4]]
        assert_eq!(p[(0, 0)], c(2.0, 0.0));
        assert_eq!(p[(0, 1)], c(2.0, 0.0));
        assert_eq!(p[(1, 1)], c(4.0, 0.0));
        assert!(a.try_dot(&DenseMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn columns_roundtrip() {
        let m = DenseMatrix::<f64>::from_fn(3, 2, |i, j| c(i as f64, j as f64));
        let cols: Vec<_> = (0..2).map(|j| m.column(j)).collect();
        assert_eq!(DenseMatrix::from_columns(&cols).unwrap(), m);
    }

    #[test]
    fn adjoint_matvec_matches_explicit() {
        let m = DenseMatrix::<f64>::from_fn(3, 2, |i, j| c(i as f64 + 1.0, j as f64 - i as f64));
        let x = vec![c(1.0, 2.0), c(-1.0, 0.5), c(0.0, 1.0)];
        let a = m.adjoint_matvec(&x);
        let b = m.adjoint().matvec(&x);
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).norm() < 1e-14);
        }
    }
}
