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

//! Dense complex linear algebra and the classical SVD reference.

mod io;
mod matrix;
mod svd;

pub use io::{parse_matrix, read_matrix_file, write_matrix, write_matrix_file};
pub use matrix::{basis_vector, inner, norm, normalized, DenseMatrix};
pub use svd::{classical_svd, hermitian_eigenvalues, SvdTriple, RANK_THRESHOLD};

use crate::error::{dim, input, Result};
use crate::scalar::{c, Real, C};

/// `sqrt(Σ |a_ij|²)`.
pub fn frobenius_norm<T: Real>(m: &DenseMatrix<T>) -> T {
    m.entries().iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `Σ_{j<t} values_j · lefts_j · rights_j†`.
pub fn reconstruct_rank_t<T: Real>(
    values: &[T],
    lefts: &[Vec<C<T>>],
    rights: &[Vec<C<T>>],
    t: usize,
) -> Result<DenseMatrix<T>> {
    if t > values.len() || t > lefts.len() || t > rights.len() {
        return dim(format!(
            "rank {t} exceeds supplied triples ({}, {}, {})",
            values.len(),
            lefts.len(),
            rights.len()
        ));
    }
    let (Some(l0), Some(r0)) = (lefts.first(), rights.first()) else {
        return input("no vectors supplied to fix the output shape");
    };
    let (rows, cols) = (l0.len(), r0.len());
    if lefts.iter().any(|v| v.len() != rows) || rights.iter().any(|v| v.len() != cols) {
        return dim("singular vectors have inconsistent lengths");
    }
    let mut out = DenseMatrix::zeros(rows, cols);
    for j in 0..t {
        let (d, u, v) = (values[j], &lefts[j], &rights[j]);
        for (i, &ui) in u.iter().enumerate() {
            let s = ui * d;
            for (k, &vk) in v.iter().enumerate() {
                out[(i, k)] += s * vk.conj();
            }
        }
    }
    Ok(out)
}

/// Right polar decomposition `M = W P` from the SVD: `W = U V†`, `P = V D V†`.
pub fn polar_decompose<T: Real>(m: &DenseMatrix<T>) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
    if !m.is_square() {
        return input(format!(
            "polar decomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        ));
    }
    let svd = classical_svd(m)?;
    Ok(polar_from_factors(
        &svd.singular_values,
        &svd.left,
        &svd.right,
    ))
}

/// `(U V†, V diag(d) V†)` for square factor matrices.
pub fn polar_from_factors<T: Real>(
    values: &[T],
    left: &DenseMatrix<T>,
    right: &DenseMatrix<T>,
) -> (DenseMatrix<T>, DenseMatrix<T>) {
    let w = left.dot(&right.adjoint());
    let scaled = DenseMatrix::from_fn(right.rows(), right.cols(), |i, j| {
        right[(i, j)] * c(values[j], T::zero())
    });
    let p = scaled.dot(&right.adjoint());
    // Symmetrize away rounding so P is Hermitian to the last bit.
    let p_herm = DenseMatrix::from_fn(p.rows(), p.cols(), |i, j| {
        (p[(i, j)] + p[(j, i)].conj()) * T::lit(0.5)
    });
    (w, p_herm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::czero;

    fn real(rows: usize, cols: usize, v: &[f64]) -> DenseMatrix<f64> {
        DenseMatrix::from_real(rows, cols, v).unwrap()
    }

    #[test]
    fn svd_identity() {
        let s = classical_svd(&DenseMatrix::<f64>::identity(2)).unwrap();
        assert_eq!(s.singular_values, vec![1.0, 1.0]);
    }

    #[test]
    fn svd_nilpotent() {
        // M M† = diag(1, 0) so d = (1, 0)
        let s = classical_svd(&real(2, 2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert!((s.singular_values[0] - 1.0).abs() < 1e-15);
        assert!(s.singular_values[1].abs() < 1e-15);
        assert_eq!(s.rank(), 1);
        assert!(s.left.unitarity_error() < 1e-12);
        assert!(s.right.unitarity_error() < 1e-12);
    }

    #[test]
    fn svd_diagonal_gives_basis_vectors() {
        let m = DenseMatrix::<f64>::diag(&[3.0, 2.0, 1.0, 0.5]);
        let s = classical_svd(&m).unwrap();
        assert_eq!(s.singular_values, vec![3.0, 2.0, 1.0, 0.5]);
        assert!(s.left.max_abs_diff(&DenseMatrix::identity(4)) < 1e-15);
        assert!(s.right.max_abs_diff(&DenseMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn svd_rejects_non_finite() {
        let m = real(1, 2, &[1.0, f64::NAN]);
        assert!(classical_svd(&m).is_err());
    }

    #[test]
    fn svd_wide_and_tall() {
        let m = real(2, 3, &[1.0, 2.0, 0.0, 0.0, 1.0, -1.0]);
        let s = classical_svd(&m).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-13);
        let s = classical_svd(&m.transpose()).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m.transpose()) < 1e-13);
    }

    #[test]
    fn svd_phase_convention() {
        let m = DenseMatrix::<f64>::from_fn(3, 3, |i, j| c((i + 2 * j) as f64, (i * j) as f64 - 1.0));
        let s = classical_svd(&m).unwrap();
        for j in 0..3 {
            let v = s.right_vector(j);
            let lead = v.iter().find(|z| z.norm() > 1e-8).unwrap();
            assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);
        }
    }

    #[test]
    fn frobenius_examples() {
        assert!((frobenius_norm(&DenseMatrix::<f64>::identity(2)) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(frobenius_norm(&DenseMatrix::<f64>::zeros(3, 2)), 0.0);
        assert_eq!(frobenius_norm(&real(2, 2, &[0.0, 1.0, 0.0, 0.0])), 1.0);
    }

    #[test]
    fn reconstruct_examples() {
        let e = |n, j| basis_vector::<f64>(n, j);
        let zero = reconstruct_rank_t(&[3.0], &[e(2, 0)], &[e(2, 0)], 0).unwrap();
        assert_eq!(zero, DenseMatrix::zeros(2, 2));

        let full = reconstruct_rank_t(&[3.0, 2.0], &[e(2, 0), e(2, 1)], &[e(2, 0), e(2, 1)], 2)
            .unwrap();
        assert_eq!(full, DenseMatrix::diag(&[3.0, 2.0]));

        let m = DenseMatrix::diag(&[3.0, 2.0, 1.0, 0.5]);
        let s = classical_svd(&m).unwrap();
        let r = reconstruct_rank_t(&s.singular_values, &s.left_vectors(), &s.right_vectors(), 2)
            .unwrap();
        assert!(r.max_abs_diff(&DenseMatrix::diag(&[3.0, 2.0, 0.0, 0.0])) < 1e-15);
        let dist = frobenius_norm(&m.try_sub(&r).unwrap());
        assert!((dist - (1.0f64 + 0.25).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reconstruct_errors() {
        let v = vec![basis_vector::<f64>(2, 0)];
        assert!(reconstruct_rank_t(&[1.0], &v, &v, 2).is_err());
        let short = vec![vec![czero::<f64>(); 3]];
        let two = vec![basis_vector::<f64>(2, 0), basis_vector(3, 1)];
        assert!(reconstruct_rank_t(&[1.0, 1.0], &two, &two, 1).is_err());
        assert!(reconstruct_rank_t(&[1.0], &short, &v, 1).is_ok());
    }

    #[test]
    fn polar_examples() {
        let (w, p) = polar_decompose(&DenseMatrix::<f64>::identity(3)).unwrap();
        assert!(w.max_abs_diff(&DenseMatrix::identity(3)) < 1e-15);
        assert!(p.max_abs_diff(&DenseMatrix::identity(3)) < 1e-15);

        let (w, p) = polar_decompose(&real(2, 2, &[0.0, -2.0, 2.0, 0.0])).unwrap();
        assert!(w.max_abs_diff(&real(2, 2, &[0.0, -1.0, 1.0, 0.0])) < 1e-14);
        assert!(p.max_abs_diff(&DenseMatrix::diag(&[2.0, 2.0])) < 1e-14);

        let (w, p) = polar_decompose(&DenseMatrix::<f64>::diag(&[3.0, 2.0])).unwrap();
        assert!(w.max_abs_diff(&DenseMatrix::identity(2)) < 1e-15);
        assert!(p.max_abs_diff(&DenseMatrix::diag(&[3.0, 2.0])) < 1e-15);

        assert!(polar_decompose(&DenseMatrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn hermitian_spectrum() {
        let h = DenseMatrix::<f64>::new(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        assert!(hermitian_eigenvalues(&real(2, 2, &[0.0, 1.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn single_precision_instantiation() {
        let m = DenseMatrix::<f32>::from_fn(3, 3, |i, j| c((i * 3 + j) as f32, 0.5));
        let s = classical_svd(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-4);
    }
}
