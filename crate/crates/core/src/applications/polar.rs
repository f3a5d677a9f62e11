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

use super::require_circuit_size;
use crate::error::{input, Result};
use crate::lcu::{lcu_reconstruct, pauli_decompose, LcuDecomposition};
use crate::linalg::{frobenius_norm, hermitian_eigenvalues, polar_from_factors, DenseMatrix};
use crate::scalar::creal;
use crate::solver::{run, SingularTriplets, VqsvdConfig};

/// `M ≈ W P` with residual diagnostics.
#[derive(Debug, Clone)]
pub struct PolarOutput {
    pub w: DenseMatrix<f64>,
    pub p: DenseMatrix<f64>,
    /// `‖W P − M‖_F`.
    pub product_residual: f64,
    /// `‖W P − M‖_F / ‖M‖_F`, or the absolute value for `M = 0`.
    pub relative_product_residual: f64,
    /// `‖W†W − I‖_F`.
    pub unitarity_residual: f64,
    pub min_eigenvalue_p: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn diagnose(m: &DenseMatrix<f64>, w: DenseMatrix<f64>, p: DenseMatrix<f64>) -> Result<PolarOutput> {
    let product_residual = frobenius_norm(&w.dot(&p).try_sub(m)?);
    let scale = frobenius_norm(m);
    Ok(PolarOutput {
        relative_product_residual: if scale > 0.0 {
            product_residual / scale
        } else {
            product_residual
        },
        product_residual,
        unitarity_residual: w.unitarity_error(),
        min_eigenvalue_p: hermitian_eigenvalues(&p)?[0],
        w,
        p,
        iterations: 0,
        converged: true,
    })
}

/// `W = Û V̂†`, `P = V̂ diag(m) V̂†` from a complete set of triples.
pub fn polar_from_triplets(
    m: &DenseMatrix<f64>,
    triplets: &SingularTriplets<f64>,
) -> Result<PolarOutput> {
    if !m.is_square() || triplets.len() != m.rows() {
        return input(format!(
            "polar decomposition needs all {} triples of a square matrix, got {}",
            m.rows(),
            triplets.len()
        ));
    }
    let u = DenseMatrix::from_columns(&triplets.lefts)?;
    let v = DenseMatrix::from_columns(&triplets.rights)?;
    let (w, p) = polar_from_factors(&triplets.values, &u, &v);
    diagnose(m, w, p)
}

/// Learns every triple of `lcu` and composes the polar factors.
pub fn polar_via_vqsvd(lcu: &LcuDecomposition<f64>, config: &VqsvdConfig) -> Result<PolarOutput> {
    if config.rank < lcu.dim() {
        return input(format!(
            "polar decomposition needs rank {} (all triples), got {}",
            lcu.dim(),
            config.rank
        ));
    }
    let result = run(lcu, config)?;
    let mut out = polar_from_triplets(&lcu_reconstruct(lcu), &result.triplets())?;
    out.iterations = result.iterations;
    out.converged = result.converged;
    Ok(out)
}

/// Polar factors of any square matrix.
///
/// Sides that are not a power of two of at least 4 are completed to
/// `diag(M, s·I)` with `s = ‖M‖_F / √n`, which keeps full rank; the
/// factors of `M` are the leading blocks. `config.rank` must be at least
/// the side of `M` and is raised to the padded side.
pub fn polar_via_vqsvd_matrix(m: &DenseMatrix<f64>, config: &VqsvdConfig) -> Result<PolarOutput> {
    let n = m.rows();
    if !m.is_square() {
        return input(format!("polar decomposition needs a square matrix, got {}x{}", n, m.cols()));
    }
    if config.rank < n {
        return input(format!("polar decomposition needs rank {n} (all triples), got {}", config.rank));
    }
    let side = n.next_power_of_two().max(4);
    let mut padded = m.padded(side, side);
    let s = frobenius_norm(m) / (n as f64).sqrt();
    for i in n..side {
        padded[(i, i)] = creal(if s > 0.0 { s } else { 1.0 });
    }
    require_circuit_size(&padded)?;
    let mut cfg = config.clone();
    if cfg.rank != side {
        cfg.rank = side;
        cfg.weights = None;
    }
    let full = polar_via_vqsvd(&pauli_decompose(&padded)?, &cfg)?;
    if side == n {
        return Ok(full);
    }
    let mut out = diagnose(m, full.w.cropped(n, n), full.p.cropped(n, n))?;
    out.iterations = full.iterations;
    out.converged = full.converged;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{AnsatzSpec, RotationMode};
    use crate::linalg::{basis_vector, polar_decompose};

    fn cfg(rank: usize, seed: u64) -> VqsvdConfig {
        let mut c = VqsvdConfig::new(rank, AnsatzSpec::hardware_efficient(20, RotationMode::Real));
        c.max_iterations = 1500;
        c.tolerance = 1e-12;
        c.seed = seed;
        c
    }

    #[test]
    fn exact_diagonal_factors() {
        let m = DenseMatrix::<f64>::diag(&[3.0, 2.0]);
        let t = SingularTriplets {
            values: vec![3.0, 2.0],
            lefts: vec![basis_vector(2, 0), basis_vector(2, 1)],
            rights: vec![basis_vector(2, 0), basis_vector(2, 1)],
        };
        let out = polar_from_triplets(&m, &t).unwrap();
        assert!(out.w.max_abs_diff(&DenseMatrix::identity(2)) < 1e-15);
        assert!(out.p.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn refuses_partial_rank() {
        let lcu = pauli_decompose(&DenseMatrix::<f64>::identity(4)).unwrap();
        assert!(polar_via_vqsvd(&lcu, &cfg(3, 0)).is_err());
    }

    #[test]
    fn rotation_matrix_matches_reference() {
        let m = DenseMatrix::<f64>::from_real(2, 2, &[0.0, -2.0, 2.0, 0.0]).unwrap();
        let out = polar_via_vqsvd_matrix(&m, &cfg(2, 7)).unwrap();
        let (w, p) = polar_decompose(&m).unwrap();
        assert!(out.w.max_abs_diff(&w) < 1e-6, "{:?}", out.w);
        assert!(out.p.max_abs_diff(&p) < 1e-6, "{:?}", out.p);
        assert!(out.unitarity_residual < 1e-6 && out.min_eigenvalue_p > -1e-6);
    }
}
