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

//! End-to-end runs through the public API, including an `f32` instantiation.

use vqsvd_core::circuit::{AnsatzSpec, RotationMode};
use vqsvd_core::estimator::EstimatorConfig;
use vqsvd_core::lcu::pauli_decompose;
use vqsvd_core::linalg::DenseMatrix;
use vqsvd_core::solver::{convergence_csv, extract_vectors, run, VqsvdConfig};
use vqsvd_core::verification::{BoundSource, QualityReport};
use vqsvd_core::{Lcu, Lcu32, Matrix32};

fn diag() -> Lcu {
    pauli_decompose(&DenseMatrix::diag(&[3.0, 2.0, 1.0, 0.5])).unwrap()
}

fn config(seed: u64) -> VqsvdConfig {
    let mut c = VqsvdConfig::new(4, AnsatzSpec::hardware_efficient(20, RotationMode::Real));
    c.max_iterations = 500;
    c.seed = seed;
    c
}

#[test]
fn converged_run_passes_quality_checks() {
    let r = run(&diag(), &config(11)).unwrap();
    assert!(r.converged);
    let t = r.triplets();
    let m = DenseMatrix::diag(&[3.0, 2.0, 1.0, 0.5]);
    let q = QualityReport::assess(&m, &t, BoundSource::Oracle, None).unwrap();
    assert!(q.epsilon_d_ok() && q.epsilon_v_ok());
    for (j, u) in t.lefts.iter().enumerate() {
        assert!(u[j].norm() > 0.99);
    }
}

#[test]
fn extracted_vectors_are_orthonormal() {
    let mut cfg = config(2);
    cfg.max_iterations = 15;
    let r = run(&diag(), &cfg).unwrap();
    let (us, vs) = extract_vectors(&r, 4);
    for fam in [&us, &vs] {
        for i in 0..4 {
            for j in 0..4 {
                let z = vqsvd_core::linalg::inner(&fam[i], &fam[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((z.re - want).abs() < 1e-8 && z.im.abs() < 1e-8);
            }
        }
    }
}

#[test]
fn same_seed_same_trajectory() {
    let mut cfg = config(5);
    cfg.max_iterations = 40;
    cfg.estimator = EstimatorConfig::shots(200, 5);
    let a = run(&diag(), &cfg).unwrap();
    let b = run(&diag(), &cfg).unwrap();
    assert_eq!(convergence_csv(&a), convergence_csv(&b));
    assert_eq!(a.alpha, b.alpha);
}

#[test]
fn final_history_entry_matches_exact_loss_in_exact_mode() {
    let r = run(&diag(), &config(3)).unwrap();
    let weighted: f64 = r
        .basis_order
        .iter()
        .zip(&r.m_values)
        .map(|(&j, &m)| r.weights[j] * m)
        .sum();
    assert!((r.final_loss() - weighted).abs() < 1e-10);
}

#[test]
fn single_precision_run_recovers_spectrum() {
    let m: Matrix32 = DenseMatrix::diag(&[3.0f32, 2.0, 1.0, 0.5]);
    let lcu: Lcu32 = pauli_decompose(&m).unwrap();
    let r = run(&lcu, &config(1)).unwrap();
    let err: f32 = r
        .m_values
        .iter()
        .zip([3.0f32, 2.0, 1.0, 0.5])
        .map(|(a, b)| (a - b).abs())
        .sum();
    assert!(err < 0.1, "{:?}", r.m_values);
}
