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

use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{c, czero, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Phase of `P|b⟩` relative to `|b ⊕ flip⟩`, as powers of `i`.
    fn phase_power(self, bit: bool) -> u8 {
        match (self, bit) {
            (Pauli::I | Pauli::X, _) | (Pauli::Z, false) => 0,
            (Pauli::Y, false) => 1,
            (Pauli::Z, true) => 2,
            (Pauli::Y, true) => 3,
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; qubit 0 is the leftmost
/// character and the most significant bit of the basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
    flip_mask: usize,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Result<Self> {
        if ops.is_empty() {
            return input("Pauli string must act on at least one qubit");
        }
        let n = ops.len();
        let flip_mask = ops
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0usize, |m, (q, _)| m | (1 << (n - 1 - q)));
        Ok(Self { ops, flip_mask })
    }

    pub fn n_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// `P|col⟩ = phase · |col ⊕ mask⟩`; returns `(row, phase)`.
    #[inline]
    pub fn action<T: Real>(&self, col: usize) -> (usize, C<T>) {
        let n = self.ops.len();
        let power = self
            .ops
            .iter()
            .enumerate()
            .map(|(q, p)| p.phase_power(col >> (n - 1 - q) & 1 == 1))
            .sum::<u8>()
            % 4;
        let phase = match power {
            0 => c(T::one(), T::zero()),
            1 => c(T::zero(), T::one()),
            2 => c(-T::one(), T::zero()),
            _ => c(T::zero(), -T::one()),
        };
        (col ^ self.flip_mask, phase)
    }

    pub fn apply<T: Real>(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.dim(), "Pauli string dimension");
        let mut out = vec![czero(); v.len()];
        for (col, &x) in v.iter().enumerate() {
            let (row, ph) = self.action::<T>(col);
            out[row] = ph * x;
        }
        out
    }

    pub fn to_matrix<T: Real>(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for col in 0..self.dim() {
            let (row, ph) = self.action(col);
            m[(row, col)] = ph;
        }
        m
    }

    /// All `4^n` strings, lexicographic in `I < X < Y < Z`, qubit 0 leftmost.
    pub fn enumerate(n_qubits: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n_qubits)).map(move |idx| {
            let ops = (0..n_qubits)
                .map(|q| Pauli::ALL[(idx >> (2 * (n_qubits - 1 - q))) & 3])
                .collect();
            PauliString::new(ops).expect("non-empty")
        })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ops.iter().try_for_each(|p| write!(f, "{}", p.symbol()))
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Input(format!("invalid Pauli symbol `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_matrices() {
        let y: DenseMatrix<f64> = "Y".parse::<PauliString>().unwrap().to_matrix();
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        let z: DenseMatrix<f64> = "Z".parse::<PauliString>().unwrap().to_matrix();
        assert_eq!(z, DenseMatrix::diag(&[1.0, -1.0]));
    }

    #[test]
    fn kron_ordering() {
        let p: PauliString = "XZ".parse().unwrap();
        let x: DenseMatrix<f64> = "X".parse::<PauliString>().unwrap().to_matrix();
        let z: DenseMatrix<f64> = "Z".parse::<PauliString>().unwrap().to_matrix();
        assert_eq!(p.to_matrix::<f64>(), x.kron(&z));
    }

    #[test]
    fn enumeration_order() {
        let labels: Vec<String> = PauliString::enumerate(2).map(|p| p.to_string()).collect();
        assert_eq!(&labels[..5], &["II", "IX", "IY", "IZ", "XI"]);
        assert_eq!(labels.len(), 16);
    }

    #[test]
    fn hermitian_and_unitary() {
        for p in PauliString::enumerate(2) {
            let m: DenseMatrix<f64> = p.to_matrix();
            assert_eq!(m, m.adjoint());
            assert!(m.unitarity_error() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_labels() {
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }
}
