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

//! Variational quantum singular value decomposition on a dense statevector
//! simulator.
//!
//! A matrix is written as a linear combination of unitaries, two
//! parameterized circuits `U(α)` and `V(β)` are trained to maximize the
//! weighted loss `Σ_j q_j Re⟨ψ_j|U† M V|ψ_j⟩`, and the trained circuit
//! columns give the leading singular vectors. Verification, image
//! compression, recommendation and polar decomposition drivers sit on top.
//!
//! The numerical core is generic over [`Real`] (`f32`/`f64`); the aliases
//! below fix the double-precision instantiation used by the drivers.

pub mod applications;
pub mod circuit;
pub mod error;
pub mod estimator;
pub mod lcu;
pub mod linalg;
pub mod scalar;
pub mod solver;
pub mod verification;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type Matrix = linalg::DenseMatrix<f64>;
pub type Matrix32 = linalg::DenseMatrix<f32>;
pub type Svd = linalg::SvdTriple<f64>;
pub type Lcu = lcu::LcuDecomposition<f64>;
pub type Lcu32 = lcu::LcuDecomposition<f32>;
pub type StateVector = circuit::StateVector<f64>;
pub type Circuit = circuit::ParamCircuit<f64>;
pub type Result64 = solver::VqsvdResult<f64>;
pub type QualityReport = verification::QualityReport<f64>;
