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

//! Drivers built on the solver: image compression, recommendation
//! projection, polar decomposition and the ansatz benchmark.
//!
//! Everything here works in `f64`.

mod bench;
mod compress;
mod pgm;
mod polar;
mod recommend;

pub use bench::{benchmark_ansatz, BenchSettings, BenchmarkEntry, BenchmarkTable};
pub use compress::{compress_image, compress_with_factors, CompressionReport};
pub use pgm::{
    parse_pgm, read_pgm_file, write_pgm_ascii, write_pgm_binary, write_pgm_file, GrayImage,
};
pub use polar::{polar_from_triplets, polar_via_vqsvd, polar_via_vqsvd_matrix, PolarOutput};
pub use recommend::{recommend, recommend_with_vectors, RecommendationOutput};

use crate::error::{input, Result};
use crate::linalg::{classical_svd, frobenius_norm, DenseMatrix};
use crate::scalar::C;

/// `‖Σ_{j≤t} m_j û_j v̂_j† − M‖_F` for `t = 1..=values.len()`.
pub fn distance_curve(
    m: &DenseMatrix<f64>,
    values: &[f64],
    lefts: &[Vec<C<f64>>],
    rights: &[Vec<C<f64>>],
) -> Result<Vec<f64>> {
    if values.len() != lefts.len() || values.len() != rights.len() {
        return input("values and vector families differ in length");
    }
    if lefts.iter().any(|u| u.len() != m.rows()) || rights.iter().any(|v| v.len() != m.cols()) {
        return input("vector lengths do not match the matrix");
    }
    let mut residual = m.clone();
    let mut out = Vec::with_capacity(values.len());
    for ((&mj, u), v) in values.iter().zip(lefts).zip(rights) {
        for (i, &ui) in u.iter().enumerate() {
            let s = ui * mj;
            for (k, &vk) in v.iter().enumerate() {
                residual[(i, k)] -= s * vk.conj();
            }
        }
        out.push(frobenius_norm(&residual));
    }
    Ok(out)
}

/// Best rank-`t` distances `sqrt(Σ_{j>t} d_j²)` for `t = 1..=t_max`.
pub fn classical_distance_curve(m: &DenseMatrix<f64>, t_max: usize) -> Result<Vec<f64>> {
    let d = classical_svd(m)?.singular_values;
    Ok((1..=t_max)
        .map(|t| d.iter().skip(t).map(|x| x * x).sum::<f64>().sqrt())
        .collect())
}

fn require_circuit_size(m: &DenseMatrix<f64>) -> Result<usize> {
    let n = m.rows();
    if !m.is_square() || !n.is_power_of_two() || n < 4 {
        return input(format!(
            "need a square power-of-two matrix of side at least 4, got {}x{}",
            m.rows(),
            m.cols()
        ));
    }
    Ok(n)
}
