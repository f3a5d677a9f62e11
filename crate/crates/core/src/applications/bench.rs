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

use super::{classical_distance_curve, distance_curve, require_circuit_size};
use crate::circuit::{AnsatzKind, AnsatzSpec, RotationMode};
use crate::error::Result;
use crate::lcu::pauli_decompose;
use crate::linalg::DenseMatrix;
use crate::solver::{run, VqsvdConfig};

/// Protocol knobs; defaults are 200 iterations at learning rate 0.05.
#[derive(Debug, Clone)]
pub struct BenchSettings {
    pub mode: RotationMode,
    pub seed: u64,
    pub max_iterations: usize,
    pub learning_rate: f64,
    pub candidates: Vec<AnsatzKind>,
}

impl BenchSettings {
    pub fn new(mode: RotationMode, seed: u64) -> Self {
        Self {
            mode,
            seed,
            max_iterations: 200,
            learning_rate: 0.05,
            candidates: AnsatzKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkEntry {
    pub kind: AnsatzKind,
    pub blocks: usize,
    pub params_per_circuit: usize,
    /// Both circuits together.
    pub params_total: usize,
    /// `‖M_re^{(t)} − M‖_F` for `t = 1..=T`.
    pub distances: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkTable {
    pub entries: Vec<BenchmarkEntry>,
    pub classical: Vec<f64>,
}

impl BenchmarkTable {
    /// `t,<candidate>…,classical` with one row per truncation rank.
    pub fn distances_csv(&self) -> String {
        let mut s = String::from("t");
        for e in &self.entries {
            let _ = write!(s, ",{}", e.kind.label());
        }
        s.push_str(",classical\n");
        for (i, c) in self.classical.iter().enumerate() {
            let _ = write!(s, "{}", i + 1);
            for e in &self.entries {
                let _ = write!(s, ",{:.16e}", e.distances[i]);
            }
            let _ = writeln!(s, ",{c:.16e}");
        }
        s
    }

    /// One row per candidate with its parameter counts and final distance.
    pub fn summary_csv(&self) -> String {
        let mut s = String::from(
            "candidate,blocks,params_per_circuit,params_total,final_distance,iterations,converged\n",
        );
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{},{},{},{},{:.16e},{},{}",
                e.kind.label(),
                e.blocks,
                e.params_per_circuit,
                e.params_total,
                e.distances.last().copied().unwrap_or(0.0),
                e.iterations,
                e.converged
            );
        }
        s
    }
}

/// Runs every candidate at its equal-budget block count with full rank,
/// weights `(T, …, 1)` and a shared seed.
pub fn benchmark_ansatz(m: &DenseMatrix<f64>, settings: &BenchSettings) -> Result<BenchmarkTable> {
    let n = require_circuit_size(m)?;
    let lcu = pauli_decompose(m)?;
    let mut entries = Vec::with_capacity(settings.candidates.len());
    for &kind in &settings.candidates {
        let spec = AnsatzSpec {
            kind,
            blocks: kind.equal_budget_blocks(),
            mode: settings.mode,
        };
        let mut cfg = VqsvdConfig::new(n, spec);
        cfg.max_iterations = settings.max_iterations;
        cfg.learning_rate = settings.learning_rate;
        cfg.seed = settings.seed;
        // run the full budget; the table compares fixed-iteration outcomes
        cfg.tolerance = 0.0;
        let result = run(&lcu, &cfg)?;
        let t = result.triplets();
        let params = result.u_circuit.param_count();
        entries.push(BenchmarkEntry {
            kind,
            blocks: spec.blocks,
            params_per_circuit: params,
            params_total: params + result.v_circuit.param_count(),
            distances: distance_curve(m, &t.values, &t.lefts, &t.rights)?,
            iterations: result.iterations,
            converged: result.converged,
        });
    }
    Ok(BenchmarkTable {
        entries,
        classical: classical_distance_curve(m, n)?,
    })
}
