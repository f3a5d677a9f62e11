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

use std::fmt::Write as _;

use super::{classical_distance_curve, require_circuit_size, GrayImage};
use crate::error::{input, Result};
use crate::lcu::pauli_decompose;
use crate::linalg::{frobenius_norm, reconstruct_rank_t};
use crate::scalar::C;
use crate::solver::{run, VqsvdConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct CompressionReport {
    pub rank: usize,
    pub side: usize,
    /// Ansatz blocks per circuit.
    pub depth: usize,
    /// `‖M_re − M‖_F` before clamping.
    pub final_distance: f64,
    /// Distance of the clamped image.
    pub clamped_distance: f64,
    /// Best rank-`T` distance.
    pub classical_distance: f64,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
    pub negative_m: bool,
}

impl CompressionReport {
    /// `T / (2·side)`.
    pub fn bookkeeping_ratio(&self) -> f64 {
        self.rank as f64 / (2 * self.side) as f64
    }

    /// `T(2·side + 1) / side²`: numbers kept over pixels.
    pub fn storage_ratio(&self) -> f64 {
        (self.rank * (2 * self.side + 1)) as f64 / (self.side * self.side) as f64
    }

    pub fn distance_ratio(&self) -> f64 {
        if self.classical_distance == 0.0 {
            if self.final_distance == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            self.final_distance / self.classical_distance
        }
    }

    pub fn above_floor(&self) -> bool {
        self.final_distance >= self.classical_distance - 1e-9
    }

    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "rank = {}", self.rank);
        let _ = writeln!(s, "side = {}", self.side);
        let _ = writeln!(s, "depth = {}", self.depth);
        let _ = writeln!(s, "final_distance = {:.16e}", self.final_distance);
        let _ = writeln!(s, "clamped_distance = {:.16e}", self.clamped_distance);
        let _ = writeln!(s, "classical_distance = {:.16e}", self.classical_distance);
        let _ = writeln!(s, "distance_ratio = {:.16e}", self.distance_ratio());
        let _ = writeln!(s, "bookkeeping_ratio = {:.16e}", self.bookkeeping_ratio());
        let _ = writeln!(s, "storage_ratio = {:.16e}", self.storage_ratio());
        let _ = writeln!(s, "iterations = {}", self.iterations);
        let _ = writeln!(s, "converged = {}", self.converged);
        let _ = writeln!(s, "negative_m = {}", self.negative_m);
        let _ = writeln!(s, "seed = {}", self.seed);
        s
    }
}

struct RunMeta {
    depth: usize,
    iterations: usize,
    converged: bool,
    seed: u64,
    negative_m: bool,
}

fn assemble(
    image: &GrayImage,
    values: &[f64],
    lefts: &[Vec<C<f64>>],
    rights: &[Vec<C<f64>>],
    meta: RunMeta,
) -> Result<(CompressionReport, GrayImage)> {
    let m = image.to_matrix();
    let t = values.len();
    let rebuilt = reconstruct_rank_t(values, lefts, rights, t)?;
    let out = GrayImage::from_matrix(&rebuilt);
    let report = CompressionReport {
        rank: t,
        side: image.width(),
        depth: meta.depth,
        final_distance: frobenius_norm(&rebuilt.try_sub(&m)?),
        clamped_distance: frobenius_norm(&out.to_matrix().try_sub(&m)?),
        classical_distance: classical_distance_curve(&m, t)?[t - 1],
        iterations: meta.iterations,
        converged: meta.converged,
        seed: meta.seed,
        negative_m: meta.negative_m,
    };
    Ok((report, out))
}

/// Learns `config.rank` triples of the image and rebuilds it from them.
///
/// A run that stops at `max_iterations` still yields an image; the report
/// carries `converged = false`.
pub fn compress_image(
    image: &GrayImage,
    config: &VqsvdConfig,
) -> Result<(CompressionReport, GrayImage)> {
    let m = image.to_matrix();
    require_circuit_size(&m)?;
    let lcu = pauli_decompose(&m)?;
    let result = run(&lcu, config)?;
    let t = result.triplets();
    assemble(
        image,
        &t.values,
        &t.lefts,
        &t.rights,
        RunMeta {
            depth: config.u_ansatz.blocks,
            iterations: result.iterations,
            converged: result.converged,
            seed: config.seed,
            negative_m: result.has_negative_m(),
        },
    )
}

/// Rebuilds the image from supplied triples instead of a training run.
pub fn compress_with_factors(
    image: &GrayImage,
    values: &[f64],
    lefts: &[Vec<C<f64>>],
    rights: &[Vec<C<f64>>],
) -> Result<(CompressionReport, GrayImage)> {
    if values.is_empty() || image.width() != image.height() {
        return input("need a square image and at least one triple");
    }
    assemble(
        image,
        values,
        lefts,
        rights,
        RunMeta {
            depth: 0,
            iterations: 0,
            converged: true,
            seed: 0,
            negative_m: values.iter().any(|&v| v < 0.0),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{AnsatzSpec, RotationMode};
    use crate::linalg::classical_svd;

    #[test]
    fn constant_image_is_rank_one() {
        let img = GrayImage::new(4, 4, vec![0.6; 16]).unwrap();
        let mut cfg = VqsvdConfig::new(1, AnsatzSpec::hardware_efficient(4, RotationMode::Real));
        cfg.max_iterations = 1000;
        cfg.tolerance = 1e-12;
        cfg.seed = 1;
        let (r, out) = compress_image(&img, &cfg).unwrap();
        assert!(r.classical_distance < 1e-12);
        assert!(r.final_distance < 1e-3, "{}", r.final_distance);
        assert!(r.above_floor());
        assert!(out.pixels().iter().all(|p| (p - 0.6).abs() < 1e-3));
    }

    #[test]
    fn full_rank_oracle_factors_are_exact() {
        let px: Vec<f64> = (0..64).map(|k| ((k * 37) % 64) as f64 / 63.0).collect();
        let img = GrayImage::new(8, 8, px).unwrap();
        let s = classical_svd(&img.to_matrix()).unwrap();
        let (r, out) =
            compress_with_factors(&img, &s.singular_values, &s.left_vectors(), &s.right_vectors())
                .unwrap();
        assert!(r.final_distance < 1e-8);
        assert!((r.bookkeeping_ratio() - 0.5).abs() < 1e-15);
        assert!((r.storage_ratio() - 8.0 * 17.0 / 64.0).abs() < 1e-15);
        for (a, b) in out.pixels().iter().zip(img.pixels()) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!(r.to_key_value().contains("converged = true\n"));
    }
}
