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

//! In-place gate kernels on raw amplitude slices.

use crate::linalg::DenseMatrix;
use crate::scalar::{c, czero, Real, C};

#[inline]
fn bit(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

/// Applies the 2x2 matrix `[[a, b], [c, d]]` to `qubit`.
pub fn apply_1q<T: Real>(amps: &mut [C<T>], n_qubits: usize, qubit: usize, m: [C<T>; 4]) {
    let stride = bit(n_qubits, qubit);
    let [a, b, cc, d] = m;
    let mut base = 0;
    while base < amps.len() {
        for i in base..base + stride {
            let x0 = amps[i];
            let x1 = amps[i + stride];
            amps[i] = a * x0 + b * x1;
            amps[i + stride] = cc * x0 + d * x1;
        }
        base += 2 * stride;
    }
}

/// `exp(-iθY/2)`.
pub fn ry_matrix<T: Real>(theta: T) -> [C<T>; 4] {
    let half = theta * T::lit(0.5);
    let (s, co) = half.sin_cos();
    [c(co, T::zero()), c(-s, T::zero()), c(s, T::zero()), c(co, T::zero())]
}

/// `exp(-iθZ/2)`.
pub fn rz_matrix<T: Real>(theta: T) -> [C<T>; 4] {
    let half = theta * T::lit(0.5);
    let (s, co) = half.sin_cos();
    [c(co, -s), czero(), czero(), c(co, s)]
}

pub fn pauli_y<T: Real>() -> [C<T>; 4] {
    [czero(), c(T::zero(), -T::one()), c(T::zero(), T::one()), czero()]
}

pub fn pauli_z<T: Real>() -> [C<T>; 4] {
    [c(T::one(), T::zero()), czero(), czero(), c(-T::one(), T::zero())]
}

pub fn apply_cnot<T: Real>(amps: &mut [C<T>], n_qubits: usize, control: usize, target: usize) {
    let cb = bit(n_qubits, control);
    let tb = bit(n_qubits, target);
    for i in 0..amps.len() {
        if i & cb != 0 && i & tb == 0 {
            amps.swap(i, i | tb);
        }
    }
}

/// Applies a `2^k x 2^k` matrix to `qubits` (first listed = most significant).
pub fn apply_multi<T: Real>(
    amps: &mut [C<T>],
    n_qubits: usize,
    qubits: &[usize],
    m: &DenseMatrix<T>,
) {
    let k = qubits.len();
    let sub = 1usize << k;
    let bits: Vec<usize> = qubits.iter().map(|&q| bit(n_qubits, q)).collect();
    let mask = bits.iter().fold(0, |acc, b| acc | b);
    let offsets: Vec<usize> = (0..sub)
        .map(|s| {
            (0..k)
                .filter(|&i| s >> (k - 1 - i) & 1 == 1)
                .fold(0, |acc, i| acc | bits[i])
        })
        .collect();
    let mut gathered = vec![czero(); sub];
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (g, &off) in gathered.iter_mut().zip(&offsets) {
            *g = amps[base | off];
        }
        let out = m.matvec(&gathered);
        for (&o, &off) in out.iter().zip(&offsets) {
            amps[base | off] = o;
        }
    }
}
