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

use serde::{Deserialize, Serialize};

use super::ParamCircuit;
use crate::error::{input, Result};
use crate::scalar::Real;

/// Single-qubit rotation used at every `U` box of an ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationMode {
    /// `Ry(α)`, enough for real matrices.
    Real,
    /// `Rz(θ) Ry(φ) Rz(ϕ)`, a general single-qubit rotation.
    Complex,
}

impl RotationMode {
    pub fn slots_per_rotation(self) -> usize {
        match self {
            RotationMode::Real => 1,
            RotationMode::Complex => 3,
        }
    }
}

/// Block templates.
///
/// * `A`: rotation column, then CNOT chain `0→1, 1→2, …`
/// * `B`: dressed CNOTs: for each adjacent pair, rotations on both
///   qubits, CNOT, rotations on both again
/// * `C`: `A` plus a wrap-around CNOT `last→0`
/// * `D`: rotation column, CNOT chain, rotation column, then CNOTs from
///   the last qubit onto every other qubit
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzKind {
    A,
    B,
    C,
    D,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 4] = [AnsatzKind::A, AnsatzKind::B, AnsatzKind::C, AnsatzKind::D];

    pub fn label(self) -> char {
        match self {
            AnsatzKind::A => 'a',
            AnsatzKind::B => 'b',
            AnsatzKind::C => 'c',
            AnsatzKind::D => 'd',
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(AnsatzKind::A),
            "b" | "B" => Ok(AnsatzKind::B),
            "c" | "C" => Ok(AnsatzKind::C),
            "d" | "D" => Ok(AnsatzKind::D),
            other => input(format!("unknown ansatz candidate `{other}` (expected a, b, c or d)")),
        }
    }

    /// Block counts giving 24 real-mode parameters on three qubits.
    pub fn equal_budget_blocks(self) -> usize {
        match self {
            AnsatzKind::A | AnsatzKind::C => 8,
            AnsatzKind::B => 3,
            AnsatzKind::D => 4,
        }
    }
}

/// Serializable recipe for a circuit: template, block count and rotation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    pub blocks: usize,
    pub mode: RotationMode,
}

impl AnsatzSpec {
    pub fn hardware_efficient(depth: usize, mode: RotationMode) -> Self {
        Self {
            kind: AnsatzKind::A,
            blocks: depth,
            mode,
        }
    }

    pub fn build<T: Real>(&self, n_qubits: usize) -> Result<ParamCircuit<T>> {
        ansatz_candidate(self.kind, n_qubits, self.blocks, self.mode)
    }
}

fn rotation<T: Real>(c: &mut ParamCircuit<T>, q: usize, mode: RotationMode) {
    match mode {
        RotationMode::Real => {
            c.ry(q);
        }
        RotationMode::Complex => {
            c.rz(q).ry(q).rz(q);
        }
    }
}

/// `depth` repetitions of template `A`.
pub fn ansatz_hardware_efficient<T: Real>(
    n_qubits: usize,
    depth: usize,
    mode: RotationMode,
) -> Result<ParamCircuit<T>> {
    ansatz_candidate(AnsatzKind::A, n_qubits, depth, mode)
}

pub fn ansatz_candidate<T: Real>(
    kind: AnsatzKind,
    n_qubits: usize,
    blocks: usize,
    mode: RotationMode,
) -> Result<ParamCircuit<T>> {
    if n_qubits < 2 {
        return input(format!("ansatz needs at least 2 qubits, got {n_qubits}"));
    }
    if blocks == 0 {
        return input("ansatz needs at least one block");
    }
    let mut c = ParamCircuit::new(n_qubits);
    for _ in 0..blocks {
        match kind {
            AnsatzKind::A | AnsatzKind::C => {
                (0..n_qubits).for_each(|q| rotation(&mut c, q, mode));
                (0..n_qubits - 1).for_each(|q| {
                    c.cnot(q, q + 1);
                });
                if kind == AnsatzKind::C {
                    c.cnot(n_qubits - 1, 0);
                }
            }
            AnsatzKind::B => {
                for q in 0..n_qubits - 1 {
                    rotation(&mut c, q, mode);
                    rotation(&mut c, q + 1, mode);
                    c.cnot(q, q + 1);
                    rotation(&mut c, q, mode);
                    rotation(&mut c, q + 1, mode);
                }
            }
            AnsatzKind::D => {
                (0..n_qubits).for_each(|q| rotation(&mut c, q, mode));
                (0..n_qubits - 1).for_each(|q| {
                    c.cnot(q, q + 1);
                });
                (0..n_qubits).for_each(|q| rotation(&mut c, q, mode));
                (0..n_qubits - 1).for_each(|q| {
                    c.cnot(n_qubits - 1, q);
                });
            }
        }
    }
    Ok(c)
}
