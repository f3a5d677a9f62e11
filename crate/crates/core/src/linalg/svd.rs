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

//! One-sided Jacobi SVD and a symmetric Jacobi eigensolver.
//!
//! Both are plain cyclic-sweep implementations sized for matrices up to a
//! few dozen rows; no blocking, no pivot ordering heuristics.

use super::matrix::{inner, norm, DenseMatrix};
use crate::error::{input, Result};
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 80;

/// Singular values below `RANK_THRESHOLD * d_1` count as zero.
pub const RANK_THRESHOLD: f64 = 1e-12;

/// Thin SVD `M = Σ_j d_j u_j v_j†` with `k = min(rows, cols)` triples.
#[derive(Debug, Clone)]
pub struct SvdTriple<T: Real> {
    /// Non-increasing, non-negative.
    pub singular_values: Vec<T>,
    /// `rows x k`, orthonormal columns.
    pub left: DenseMatrix<T>,
    /// `cols x k`, orthonormal columns.
    pub right: DenseMatrix<T>,
}

impl<T: Real> SvdTriple<T> {
    pub fn len(&self) -> usize {
        self.singular_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singular_values.is_empty()
    }

    pub fn left_vector(&self, j: usize) -> Vec<C<T>> {
        self.left.column(j)
    }

    pub fn right_vector(&self, j: usize) -> Vec<C<T>> {
        self.right.column(j)
    }

    pub fn left_vectors(&self) -> Vec<Vec<C<T>>> {
        (0..self.len()).map(|j| self.left_vector(j)).collect()
    }

    pub fn right_vectors(&self) -> Vec<Vec<C<T>>> {
        (0..self.len()).map(|j| self.right_vector(j)).collect()
    }

    /// Number of singular values above `RANK_THRESHOLD * d_1`.
    pub fn rank(&self) -> usize {
        let Some(&top) = self.singular_values.first() else {
            return 0;
        };
        let cut = top * T::lit(RANK_THRESHOLD);
        self.singular_values
            .iter()
            .filter(|&&d| d > cut && d > T::zero())
            .count()
    }

    /// `U D V†`.
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        super::reconstruct_rank_t(
            &self.singular_values,
            &self.left_vectors(),
            &self.right_vectors(),
            self.len(),
        )
        .expect("consistent triple")
    }
}

/// Full thin SVD of `m` by one-sided Jacobi rotations.
///
/// Right vectors are phase-fixed so their first non-negligible component is
/// real and positive; this makes the output deterministic.
pub fn classical_svd<T: Real>(m: &DenseMatrix<T>) -> Result<SvdTriple<T>> {
    if !m.is_finite() {
        return input("matrix has non-finite entries");
    }
    if m.rows() < m.cols() {
        // M† = V D U†
        let t = classical_svd(&m.adjoint())?;
        let mut out = SvdTriple {
            singular_values: t.singular_values,
            left: t.right,
            right: t.left,
        };
        fix_phases(&mut out);
        return Ok(out);
    }
    Ok(jacobi_tall(m))
}

fn jacobi_tall<T: Real>(m: &DenseMatrix<T>) -> SvdTriple<T> {
    let (rows, n) = (m.rows(), m.cols());
    let mut a: Vec<Vec<C<T>>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C<T>>> = (0..n)
        .map(|j| super::matrix::basis_vector(n, j))
        .collect();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm(&a[p]).powi(2);
                let beta = norm(&a[q]).powi(2);
                let gamma = inner(&a[p], &a[q]);
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                rotate(&mut a, p, q, phase, cs, sn);
                rotate(&mut v, p, q, phase, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<T> = a.iter().map(|col| norm(col)).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite norms"));

    let values: Vec<T> = order.iter().map(|&j| norms[j]).collect();
    let cut = values[0] * T::lit(RANK_THRESHOLD);
    let mut lefts: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for (&j, &d) in order.iter().zip(&values) {
        if d > cut && d > T::zero() {
            lefts.push(a[j].iter().map(|&z| z / d).collect());
        } else {
            lefts.push(complete_basis(&lefts, rows));
        }
    }
    let rights: Vec<Vec<C<T>>> = order.iter().map(|&j| v[j].clone()).collect();

    let mut out = SvdTriple {
        singular_values: values,
        left: DenseMatrix::from_columns(&lefts).expect("columns"),
        right: DenseMatrix::from_columns(&rights).expect("columns"),
    };
    fix_phases(&mut out);
    out
}

// a_p' = c a_p - s e^{-iφ} a_q,  a_q' = s a_p + c e^{-iφ} a_q
// where ⟨a_p|a_q⟩ = |γ| e^{iφ}; zeroes the rotated pair's inner product.
fn rotate<T: Real>(cols: &mut [Vec<C<T>>], p: usize, q: usize, phase: C<T>, cs: T, sn: T) {
    let ph = phase.conj();
    let (lo, hi) = cols.split_at_mut(q);
    let (ap, aq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in ap.iter_mut().zip(aq.iter_mut()) {
        let b = ph * *y;
        let xp = *x * cs - b * sn;
        let yq = *x * sn + b * cs;
        *x = xp;
        *y = yq;
    }
}

/// Gram-Schmidt: first standard basis vector not in the span of `existing`.
fn complete_basis<T: Real>(existing: &[Vec<C<T>>], n: usize) -> Vec<C<T>> {
    let mut best: Option<(T, Vec<C<T>>)> = None;
    for k in 0..n {
        let mut w = super::matrix::basis_vector::<T>(n, k);
        // two passes for numerical orthogonality
        for _ in 0..2 {
            for e in existing {
                let proj = inner(e, &w);
                for (wi, &ei) in w.iter_mut().zip(e) {
                    *wi -= proj * ei;
                }
            }
        }
        let nw = norm(&w);
        if nw > T::lit(0.5) {
            return w.into_iter().map(|z| z / nw).collect();
        }
        if best.as_ref().map_or(true, |(b, _)| nw > *b) {
            best = Some((nw, w));
        }
    }
    let (nw, w) = best.expect("n > 0");
    w.into_iter().map(|z| z / nw).collect()
}

fn fix_phases<T: Real>(svd: &mut SvdTriple<T>) {
    let tol = T::epsilon().sqrt();
    for j in 0..svd.len() {
        let rv = svd.right.column(j);
        let Some(&lead) = rv.iter().find(|z| z.norm() > tol) else {
            continue;
        };
        let fix = (lead / lead.norm()).conj();
        let lv = svd.left.column(j);
        svd.right
            .set_column(j, &rv.iter().map(|&z| z * fix).collect::<Vec<_>>());
        svd.left
            .set_column(j, &lv.iter().map(|&z| z * fix).collect::<Vec<_>>());
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Runs symmetric Jacobi on the real embedding `[[Re, -Im], [Im, Re]]`,
/// whose spectrum is the Hermitian spectrum with every value doubled.
pub fn hermitian_eigenvalues<T: Real>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return input("eigenvalues need a square matrix");
    }
    if !m.is_finite() {
        return input("matrix has non-finite entries");
    }
    let n = m.rows();
    let scale = super::frobenius_norm(m).max(T::one());
    if m.max_abs_diff(&m.adjoint()) > T::lit(1e-8) * scale {
        return input("matrix is not Hermitian");
    }
    let big = 2 * n;
    let mut s = vec![T::zero(); big * big];
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            s[i * big + j] = z.re;
            s[(i + n) * big + j + n] = z.re;
            s[(i + n) * big + j] = z.im;
            s[i * big + j + n] = -z.im;
        }
    }
    let mut vals = symmetric_jacobi_eigenvalues(&mut s, big);
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(vals.into_iter().step_by(2).collect())
}

fn symmetric_jacobi_eigenvalues<T: Real>(s: &mut [T], n: usize) -> Vec<T> {
    let two = T::lit(2.0);
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i * n + j] * s[i * n + j])
            .sum();
        let diag: T = (0..n).map(|i| s[i * n + i] * s[i * n + i]).sum();
        if off <= T::epsilon() * T::epsilon() * (diag + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = s[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = s[k * n + p];
                    let akq = s[k * n + q];
                    s[k * n + p] = cs * akp - sn * akq;
                    s[k * n + q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = s[p * n + k];
                    let aqk = s[q * n + k];
                    s[p * n + k] = cs * apk - sn * aqk;
                    s[q * n + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}
