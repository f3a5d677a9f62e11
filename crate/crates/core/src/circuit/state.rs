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

use crate::error::{input, Result};
use crate::linalg::{norm, DenseMatrix};
use crate::scalar::{czero, Real, C};

/// Normalized `n`-qubit state; qubit 0 is the most significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> StateVector<T> {
    /// Accepts amplitudes whose norm is 1 within `1e-8`.
    pub fn new(amplitudes: Vec<C<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return input(format!("state length {len} is not 2^n with n >= 1"));
        }
        let nrm = norm(&amplitudes);
        if (nrm - T::one()).abs() > T::lit(1e-8).max(T::epsilon() * T::lit(64.0)) {
            return input(format!("state is not normalized (norm {nrm})"));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Rescales an arbitrary non-zero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C<T>>) -> Result<Self> {
        let Some(v) = crate::linalg::normalized(&amplitudes) else {
            return input("cannot normalize the zero vector");
        };
        Self::new(v)
    }

    /// Computational basis state `|j⟩`.
    pub fn basis(n_qubits: usize, j: usize) -> Self {
        assert!(j < 1 << n_qubits, "basis index out of range");
        let mut amplitudes = vec![czero(); 1 << n_qubits];
        amplitudes[j] = crate::scalar::cone();
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C<T>> {
        self.amplitudes
    }

    pub fn norm(&self) -> T {
        norm(&self.amplitudes)
    }

    /// `W|ψ⟩` for a dense `W`; the result is renormalized against rounding.
    pub fn apply_matrix(&self, w: &DenseMatrix<T>) -> Result<Self> {
        if !w.is_square() || w.rows() != self.dim() {
            return crate::error::dim(format!(
                "{}x{} operator on a {}-dimensional state",
                w.rows(),
                w.cols(),
                self.dim()
            ));
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: w.matvec(&self.amplitudes),
        })
    }

    pub(crate) fn from_raw(n_qubits: usize, amplitudes: Vec<C<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        Self {
            n_qubits,
            amplitudes,
        }
    }
}
