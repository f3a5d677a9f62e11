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

//! Dense statevector simulation of parameterized circuits.
//!
//! Rotations follow `R_P(θ) = exp(-iθP/2)`, so shifting an angle by `π`
//! right-multiplies the gate by `-iP`. The solver's gradient rule relies on
//! this.

mod ansatz;
pub mod kernels;
mod state;

pub use ansatz::{ansatz_candidate, ansatz_hardware_efficient, AnsatzKind, AnsatzSpec, RotationMode};
pub use state::StateVector;

use std::fmt;
use std::str::FromStr;

use crate::error::{dim, input, Error, Result};
use crate::linalg::{inner, DenseMatrix};
use crate::scalar::{c, Real, C};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T: Real> {
    Ry { qubit: usize, slot: usize },
    Rz { qubit: usize, slot: usize },
    Cnot { control: usize, target: usize },
    Fixed { matrix: DenseMatrix<T>, qubits: Vec<usize> },
}

impl<T: Real> Gate<T> {
    pub fn slot(&self) -> Option<usize> {
        match self {
            Gate::Ry { slot, .. } | Gate::Rz { slot, .. } => Some(*slot),
            _ => None,
        }
    }

    fn apply(&self, amps: &mut [C<T>], n: usize, params: &[T], inverse: bool) {
        let sign = if inverse { -T::one() } else { T::one() };
        match self {
            Gate::Ry { qubit, slot } => {
                kernels::apply_1q(amps, n, *qubit, kernels::ry_matrix(sign * params[*slot]))
            }
            Gate::Rz { qubit, slot } => {
                kernels::apply_1q(amps, n, *qubit, kernels::rz_matrix(sign * params[*slot]))
            }
            Gate::Cnot { control, target } => kernels::apply_cnot(amps, n, *control, *target),
            Gate::Fixed { matrix, qubits } => {
                if inverse {
                    kernels::apply_multi(amps, n, qubits, &matrix.adjoint())
                } else {
                    kernels::apply_multi(amps, n, qubits, matrix)
                }
            }
        }
    }

    /// Applies the rotation generator `P` (Y or Z) on the gate's qubit.
    fn apply_generator(&self, amps: &mut [C<T>], n: usize) {
        match self {
            Gate::Ry { qubit, .. } => kernels::apply_1q(amps, n, *qubit, kernels::pauli_y()),
            Gate::Rz { qubit, .. } => kernels::apply_1q(amps, n, *qubit, kernels::pauli_z()),
            _ => unreachable!("generator requested for an unparameterized gate"),
        }
    }
}

/// Ordered gate list over `n_qubits` with `param_count` angle slots, each
/// slot owned by exactly one gate.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCircuit<T: Real> {
    n_qubits: usize,
    gates: Vec<Gate<T>>,
    param_count: usize,
}

impl<T: Real> ParamCircuit<T> {
    /// Empty circuit; grow it with the builder methods.
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "circuit needs at least one qubit");
        Self {
            n_qubits,
            gates: Vec::new(),
            param_count: 0,
        }
    }

    /// Validating constructor for externally assembled gate lists.
    pub fn from_gates(n_qubits: usize, gates: Vec<Gate<T>>, param_count: usize) -> Result<Self> {
        if n_qubits == 0 {
            return input("circuit needs at least one qubit");
        }
        let mut used = vec![false; param_count];
        let q_ok = |q: usize| -> Result<()> {
            if q >= n_qubits {
                return input(format!("qubit {q} out of range for {n_qubits} qubits"));
            }
            Ok(())
        };
        for g in &gates {
            match g {
                Gate::Ry { qubit, slot } | Gate::Rz { qubit, slot } => {
                    q_ok(*qubit)?;
                    match used.get_mut(*slot) {
                        None => return input(format!("slot {slot} >= param_count {param_count}")),
                        Some(true) => return input(format!("slot {slot} used twice")),
                        Some(u) => *u = true,
                    }
                }
                Gate::Cnot { control, target } => {
                    q_ok(*control)?;
                    q_ok(*target)?;
                    if control == target {
                        return input("CNOT control equals target");
                    }
                }
                Gate::Fixed { matrix, qubits } => {
                    for &q in qubits {
                        q_ok(q)?;
                    }
                    let mut sorted = qubits.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != qubits.len() || qubits.is_empty() {
                        return input("fixed gate qubits must be distinct and non-empty");
                    }
                    if !matrix.is_square() || matrix.rows() != 1 << qubits.len() {
                        return dim("fixed gate matrix does not match its qubit count");
                    }
                    if matrix.unitarity_error() > T::lit(1e-8) {
                        return input("fixed gate matrix is not unitary");
                    }
                }
            }
        }
        if let Some(s) = used.iter().position(|u| !u) {
            return input(format!("slot {s} is never used"));
        }
        Ok(Self {
            n_qubits,
            gates,
            param_count,
        })
    }

    pub fn ry(&mut self, qubit: usize) -> &mut Self {
        assert!(qubit < self.n_qubits, "qubit out of range");
        self.gates.push(Gate::Ry {
            qubit,
            slot: self.param_count,
        });
        self.param_count += 1;
        self
    }

    pub fn rz(&mut self, qubit: usize) -> &mut Self {
        assert!(qubit < self.n_qubits, "qubit out of range");
        self.gates.push(Gate::Rz {
            qubit,
            slot: self.param_count,
        });
        self.param_count += 1;
        self
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        assert!(control < self.n_qubits && target < self.n_qubits && control != target);
        self.gates.push(Gate::Cnot { control, target });
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    fn check_params(&self, params: &[T]) -> Result<()> {
        if params.len() != self.param_count {
            return input(format!(
                "{} parameters supplied, circuit has {}",
                params.len(),
                self.param_count
            ));
        }
        Ok(())
    }

    /// Runs the circuit on raw amplitudes. Parameter length is the caller's job.
    pub fn apply_in_place(&self, params: &[T], amps: &mut [C<T>]) {
        debug_assert_eq!(params.len(), self.param_count);
        debug_assert_eq!(amps.len(), self.dim());
        for g in &self.gates {
            g.apply(amps, self.n_qubits, params, false);
        }
    }

    /// Runs the inverse circuit on raw amplitudes.
    pub fn apply_inverse_in_place(&self, params: &[T], amps: &mut [C<T>]) {
        for g in self.gates.iter().rev() {
            g.apply(amps, self.n_qubits, params, true);
        }
    }

    /// `C(θ)|j⟩` for the first `count` basis states.
    pub fn columns(&self, params: &[T], count: usize) -> Vec<Vec<C<T>>> {
        (0..count)
            .map(|j| {
                let mut v = crate::linalg::basis_vector(self.dim(), j);
                self.apply_in_place(params, &mut v);
                v
            })
            .collect()
    }

    /// For every slot `s` and input `j`: `⟨C(θ + π e_s) ψ_j | target_j⟩`.
    ///
    /// One backward sweep per input instead of one circuit run per slot:
    /// walking the gates in reverse, the state before gate `g` and the
    /// back-propagated target are both available, and the shifted circuit
    /// only differs by an inserted `-iP` at `g`.
    pub fn shifted_overlaps(
        &self,
        params: &[T],
        inputs: &[Vec<C<T>>],
        targets: &[Vec<C<T>>],
    ) -> Vec<Vec<C<T>>> {
        assert_eq!(inputs.len(), targets.len(), "inputs vs targets");
        let n = self.n_qubits;
        let mut out = vec![vec![crate::scalar::czero(); inputs.len()]; self.param_count];
        for (j, (psi, target)) in inputs.iter().zip(targets).enumerate() {
            let mut phi = psi.clone();
            self.apply_in_place(params, &mut phi);
            let mut lam = target.clone();
            let mut tmp = vec![crate::scalar::czero(); phi.len()];
            for g in self.gates.iter().rev() {
                g.apply(&mut phi, n, params, true);
                g.apply(&mut lam, n, params, true);
                if let Some(slot) = g.slot() {
                    tmp.copy_from_slice(&phi);
                    g.apply_generator(&mut tmp, n);
                    // ⟨-iPφ|λ⟩ = i⟨Pφ|λ⟩
                    out[slot][j] = c(T::zero(), T::one()) * inner(&tmp, &lam);
                }
            }
        }
        out
    }
}

/// `C(θ)|input⟩`.
pub fn apply_circuit<T: Real>(
    circuit: &ParamCircuit<T>,
    params: &[T],
    input_state: &StateVector<T>,
) -> Result<StateVector<T>> {
    circuit.check_params(params)?;
    if input_state.n_qubits() != circuit.n_qubits {
        return dim(format!(
            "{}-qubit state into a {}-qubit circuit",
            input_state.n_qubits(),
            circuit.n_qubits
        ));
    }
    let mut amps = input_state.amplitudes().to_vec();
    circuit.apply_in_place(params, &mut amps);
    Ok(StateVector::from_raw(circuit.n_qubits, amps))
}

/// Dense matrix of `C(θ)`; column `j` is `C(θ)|j⟩`.
pub fn realize_unitary<T: Real>(circuit: &ParamCircuit<T>, params: &[T]) -> Result<DenseMatrix<T>> {
    circuit.check_params(params)?;
    DenseMatrix::from_columns(&circuit.columns(params, circuit.dim()))
}

impl<T: Real> fmt::Display for ParamCircuit<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match g {
                Gate::Ry { qubit, slot } => writeln!(f, "RY {qubit} {slot}")?,
                Gate::Rz { qubit, slot } => writeln!(f, "RZ {qubit} {slot}")?,
                Gate::Cnot { control, target } => writeln!(f, "CNOT {control} {target}")?,
                Gate::Fixed { qubits, .. } => {
                    let qs: Vec<String> = qubits.iter().map(|q| q.to_string()).collect();
                    writeln!(f, "FIXED {}", qs.join(" "))?
                }
            }
        }
        Ok(())
    }
}

impl<T: Real> FromStr for ParamCircuit<T> {
    type Err = Error;

    /// Parses the `RY q slot` / `RZ q slot` / `CNOT c t` listing. The qubit
    /// count is the largest index seen plus one.
    fn from_str(s: &str) -> Result<Self> {
        let mut gates = Vec::new();
        let mut max_q = 0;
        let mut slots = 0;
        for (i, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || Error::Parse {
                line: i + 1,
                reason: format!("unrecognized gate line `{line}`"),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums: Vec<usize> = toks[1..]
                .iter()
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let g = match (toks[0], nums.as_slice()) {
                ("RY", &[qubit, slot]) => Gate::Ry { qubit, slot },
                ("RZ", &[qubit, slot]) => Gate::Rz { qubit, slot },
                ("CNOT", &[control, target]) => Gate::Cnot { control, target },
                _ => return Err(bad()),
            };
            if let Some(slot) = g.slot() {
                slots = slots.max(slot + 1);
            }
            max_q = max_q.max(nums[0]);
            if let Gate::Cnot { target, .. } = g {
                max_q = max_q.max(target);
            }
            gates.push(g);
        }
        Self::from_gates(max_q + 1, gates, slots)
    }
}
