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

//! Loss-term estimators: exact overlaps, simulated Hadamard tests, and
//! importance-sampled LCU terms.
//!
//! The Hadamard test is simulated from its outcome distribution: the
//! ancilla reads 0 with probability `(1 + Re⟨ψ|W|ψ⟩)/2`, so the circuit with
//! a controlled-`W` never needs to be built. Every random draw is seeded from
//! `(config.seed, stream, term)`, which makes results independent of
//! evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::circuit::{ParamCircuit, StateVector};
use crate::error::{dim, input, Result};
use crate::lcu::{importance_sample_terms, LcuDecomposition};
use crate::linalg::{basis_vector, inner, DenseMatrix};
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorMode {
    Exact,
    Shots,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub mode: EstimatorMode,
    /// Hadamard-test repetitions per term (shots mode).
    pub shots_per_term: u64,
    /// Sampled unitaries per matrix element (sampled mode).
    pub term_samples: usize,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self::exact()
    }
}

impl EstimatorConfig {
    pub fn exact() -> Self {
        Self {
            mode: EstimatorMode::Exact,
            shots_per_term: 0,
            term_samples: 0,
            seed: 0,
        }
    }

    pub fn shots(shots_per_term: u64, seed: u64) -> Self {
        Self {
            mode: EstimatorMode::Shots,
            shots_per_term,
            term_samples: 0,
            seed,
        }
    }

    pub fn sampled(term_samples: usize, seed: u64) -> Self {
        Self {
            mode: EstimatorMode::Sampled,
            shots_per_term: 0,
            term_samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            EstimatorMode::Shots if self.shots_per_term == 0 => {
                input("shots mode needs shots_per_term >= 1")
            }
            EstimatorMode::Sampled if self.term_samples == 0 => {
                input("sampled mode needs term_samples >= 1")
            }
            _ => Ok(()),
        }
    }
}

/// SplitMix64 finalizer, used to derive independent seeds.
pub fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(seed: u64, stream: u64, term: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(mix_seed(seed, stream), term))
}

/// `(Re, Im)` of `⟨ψ|φ⟩` where `φ = W|ψ⟩` has already been applied.
pub fn exact_re_im<T: Real>(psi: &StateVector<T>, w_applied: &StateVector<T>) -> Result<(T, T)> {
    if psi.dim() != w_applied.dim() {
        return dim(format!("{} vs {} amplitudes", psi.dim(), w_applied.dim()));
    }
    let z = inner(psi.amplitudes(), w_applied.amplitudes());
    Ok((z.re, z.im))
}

/// Mean of `shots` ±1 outcomes whose `+1` probability is `(1 + x) / 2`.
fn pm_one_mean<R: rand::Rng>(x: f64, shots: u64, rng: &mut R) -> f64 {
    let p0 = ((1.0 + x) * 0.5).clamp(0.0, 1.0);
    let zeros = Binomial::new(shots, p0).expect("valid binomial").sample(rng);
    (2.0 * zeros as f64 - shots as f64) / shots as f64
}

/// Ancilla `|+⟩`, controlled-W, H, measure: outcome 0 ↦ +1, outcome 1 ↦ −1.
pub(crate) fn hadamard_re_from_overlap<R: rand::Rng>(z_re: f64, shots: u64, rng: &mut R) -> f64 {
    pm_one_mean(z_re, shots, rng)
}

/// Ancilla `(|0⟩ + i|1⟩)/√2`, controlled-W, H. The ancilla reads 0 with
/// probability `(1 − Im z)/2`, so the ±1 mean is negated to estimate `+Im z`.
pub(crate) fn hadamard_im_from_overlap<R: rand::Rng>(z_im: f64, shots: u64, rng: &mut R) -> f64 {
    -pm_one_mean(-z_im, shots, rng)
}

fn check_test_inputs<T: Real>(psi: &StateVector<T>, w: &DenseMatrix<T>, shots: u64) -> Result<C<T>> {
    if shots == 0 {
        return input("Hadamard test needs at least one shot");
    }
    let phi = psi.apply_matrix(w)?;
    Ok(inner(psi.amplitudes(), phi.amplitudes()))
}

/// Shot estimate of `Re⟨ψ|W|ψ⟩`.
pub fn hadamard_test_re<T: Real>(
    psi: &StateVector<T>,
    w: &DenseMatrix<T>,
    shots: u64,
    seed: u64,
) -> Result<T> {
    let z = check_test_inputs(psi, w, shots)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(T::lit(hadamard_re_from_overlap(z.re.as_f64(), shots, &mut rng)))
}

/// Shot estimate of `Im⟨ψ|W|ψ⟩`.
pub fn hadamard_test_im<T: Real>(
    psi: &StateVector<T>,
    w: &DenseMatrix<T>,
    shots: u64,
    seed: u64,
) -> Result<T> {
    let z = check_test_inputs(psi, w, shots)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(T::lit(hadamard_im_from_overlap(z.im.as_f64(), shots, &mut rng)))
}

/// Estimates `Re⟨u|M|v⟩` for already prepared `u = U|ψ_j⟩`, `v = V|ψ_j⟩`.
///
/// `dense` is the realized `M` used by exact mode; it falls back to
/// term-by-term application when absent. `stream` distinguishes independent
/// estimates sharing one config seed.
pub fn estimate_element<T: Real>(
    lcu: &LcuDecomposition<T>,
    dense: Option<&DenseMatrix<T>>,
    u: &[C<T>],
    v: &[C<T>],
    config: &EstimatorConfig,
    stream: u64,
) -> Result<T> {
    match config.mode {
        EstimatorMode::Exact => {
            let mv = match dense {
                Some(m) => m.matvec(v),
                None => lcu.apply(v),
            };
            Ok(inner(u, &mv).re)
        }
        EstimatorMode::Shots => {
            let shots = config.shots_per_term;
            let mut total = 0.0;
            // fixed term order keeps the sum bit-identical for a given seed
            for (k, t) in lcu.terms().iter().enumerate() {
                let z = inner(u, &t.unitary.apply(v));
                let mut rng = rng_for(config.seed, stream, k as u64);
                let (cre, cim) = (t.coefficient.re.as_f64(), t.coefficient.im.as_f64());
                if cre != 0.0 {
                    total += cre * hadamard_re_from_overlap(z.re.as_f64(), shots, &mut rng);
                }
                if cim != 0.0 {
                    total -= cim * hadamard_im_from_overlap(z.im.as_f64(), shots, &mut rng);
                }
            }
            Ok(T::lit(total))
        }
        EstimatorMode::Sampled => {
            let samples = sampled_term_values(lcu, u, v, config.term_samples, config.seed, stream)?;
            let n = samples.len() as f64;
            Ok(T::lit(samples.iter().sum::<f64>() / n))
        }
    }
}

/// Estimates the complex element `⟨u|M|v⟩`.
///
/// Shots mode runs a Re and an Im Hadamard test per term; sampled mode
/// averages `‖c‖₁ · e^{i arg c_k} ⟨u|A_k|v⟩` over sampled terms.
pub fn estimate_element_complex<T: Real>(
    lcu: &LcuDecomposition<T>,
    dense: Option<&DenseMatrix<T>>,
    u: &[C<T>],
    v: &[C<T>],
    config: &EstimatorConfig,
    stream: u64,
) -> Result<C<T>> {
    match config.mode {
        EstimatorMode::Exact => {
            let mv = match dense {
                Some(m) => m.matvec(v),
                None => lcu.apply(v),
            };
            Ok(inner(u, &mv))
        }
        EstimatorMode::Shots => {
            let shots = config.shots_per_term;
            let (mut re, mut im) = (0.0, 0.0);
            for (k, t) in lcu.terms().iter().enumerate() {
                let z = inner(u, &t.unitary.apply(v));
                let mut rng = rng_for(config.seed, stream, k as u64);
                let zr = hadamard_re_from_overlap(z.re.as_f64(), shots, &mut rng);
                let zi = hadamard_im_from_overlap(z.im.as_f64(), shots, &mut rng);
                let (cre, cim) = (t.coefficient.re.as_f64(), t.coefficient.im.as_f64());
                re += cre * zr - cim * zi;
                im += cre * zi + cim * zr;
            }
            Ok(crate::scalar::c(T::lit(re), T::lit(im)))
        }
        EstimatorMode::Sampled => {
            let mut rng = rng_for(config.seed, stream, u64::MAX);
            let picks = importance_sample_terms(lcu, config.term_samples, &mut rng)?;
            let l1 = lcu.l1_norm();
            let mut acc = crate::scalar::czero::<T>();
            for &k in &picks {
                let t = &lcu.terms()[k];
                let phase = t.coefficient / t.coefficient.norm();
                acc += phase * inner(u, &t.unitary.apply(v)) * l1;
            }
            Ok(acc / T::lit(picks.len() as f64))
        }
    }
}

/// Individual importance-sampling draws `‖c‖₁ · Re(e^{i arg c_k} ⟨u|A_k|v⟩)`.
///
/// Each draw is bounded by `‖c‖₁` in modulus and their mean is unbiased for
/// `Re⟨u|M|v⟩`.
pub fn sampled_term_values<T: Real>(
    lcu: &LcuDecomposition<T>,
    u: &[C<T>],
    v: &[C<T>],
    count: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<f64>> {
    let mut rng = rng_for(seed, stream, u64::MAX);
    let picks = importance_sample_terms(lcu, count, &mut rng)?;
    let l1 = lcu.l1_norm().as_f64();
    let mut cache: Vec<Option<f64>> = vec![None; lcu.len()];
    Ok(picks
        .into_iter()
        .map(|k| {
            *cache[k].get_or_insert_with(|| {
                let t = &lcu.terms()[k];
                let phase = t.coefficient / t.coefficient.norm();
                let z = inner(u, &t.unitary.apply(v));
                l1 * (phase * z).re.as_f64()
            })
        })
        .collect())
}

/// `m_j ≈ Re⟨ψ_j|U(α)† M V(β)|ψ_j⟩` with `ψ_j = |j⟩`.
pub fn matrix_element<T: Real>(
    lcu: &LcuDecomposition<T>,
    u: (&ParamCircuit<T>, &[T]),
    v: (&ParamCircuit<T>, &[T]),
    j: usize,
    config: &EstimatorConfig,
) -> Result<T> {
    config.validate()?;
    if lcu.is_empty() {
        return input("matrix element of an empty LCU");
    }
    let n = lcu.dim();
    if u.0.dim() != n || v.0.dim() != n {
        return dim(format!(
            "circuits act on {} and {} amplitudes, matrix has dimension {n}",
            u.0.dim(),
            v.0.dim()
        ));
    }
    if j >= n {
        return input(format!("basis index {j} >= dimension {n}"));
    }
    let psi = StateVector::from_raw(u.0.n_qubits(), basis_vector(n, j));
    let uj = crate::circuit::apply_circuit(u.0, u.1, &psi)?;
    let vj = crate::circuit::apply_circuit(v.0, v.1, &psi)?;
    estimate_element(lcu, None, uj.amplitudes(), vj.amplitudes(), config, j as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::ParamCircuit;
    use crate::lcu::pauli_decompose;
    use crate::scalar::c;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn state(v: &[(f64, f64)]) -> StateVector<f64> {
        StateVector::new(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn exact_re_im_examples() {
        let zero = StateVector::<f64>::basis(1, 0);
        let one = StateVector::<f64>::basis(1, 1);
        assert_eq!(exact_re_im(&zero, &zero).unwrap(), (1.0, 0.0));
        assert_eq!(exact_re_im(&zero, &one).unwrap(), (0.0, 0.0));
        let plus_i = state(&[(FRAC_1_SQRT_2, 0.0), (0.0, FRAC_1_SQRT_2)]);
        let (re, im) = exact_re_im(&zero, &plus_i).unwrap();
        assert!((re - FRAC_1_SQRT_2).abs() < 1e-15 && im == 0.0);
        assert!(exact_re_im(&zero, &StateVector::basis(2, 0)).is_err());
    }

    #[test]
    fn identity_hadamard_tests_are_deterministic() {
        let psi = state(&[(0.6, 0.0), (0.0, 0.8)]);
        let id = DenseMatrix::identity(2);
        assert_eq!(hadamard_test_re(&psi, &id, 17, 3).unwrap(), 1.0);
        assert!(hadamard_test_re(&psi, &id, 0, 3).is_err());
    }

    #[test]
    fn im_test_sign() {
        let s_gate = DenseMatrix::<f64>::new(2, 2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
            .unwrap();
        let zero = StateVector::basis(1, 0);
        let one = StateVector::basis(1, 1);
        // Im⟨0|S|0⟩ = 0: fair coin, std error 0.01 at 1e4 shots
        assert!(hadamard_test_im(&zero, &s_gate, 10_000, 1).unwrap().abs() < 0.05);
        // Im⟨1|S|1⟩ = 1: deterministic outcome
        assert_eq!(hadamard_test_im(&one, &s_gate, 100, 1).unwrap(), 1.0);
    }

    #[test]
    fn plus_state_z_concentrates_near_zero() {
        let plus = state(&[(FRAC_1_SQRT_2, 0.0), (FRAC_1_SQRT_2, 0.0)]);
        let z = DenseMatrix::diag(&[1.0, -1.0]);
        let est = hadamard_test_re(&plus, &z, 10_000, 11).unwrap();
        // std error 0.01
        assert!(est.abs() < 0.05, "{est}");
    }

    #[test]
    fn element_examples() {
        let diag = pauli_decompose(&DenseMatrix::<f64>::diag(&[3.0, 2.0])).unwrap();
        let empty_u = ParamCircuit::<f64>::new(1);
        let cfg = EstimatorConfig::exact();
        let m0 = matrix_element(&diag, (&empty_u, &[]), (&empty_u, &[]), 0, &cfg).unwrap();
        assert!((m0 - 3.0).abs() < 1e-15);

        let nil = pauli_decompose(&DenseMatrix::<f64>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap())
            .unwrap();
        let m0 = matrix_element(&nil, (&empty_u, &[]), (&empty_u, &[]), 0, &cfg).unwrap();
        assert!(m0.abs() < 1e-15);

        // top singular pair of M is u = |0⟩, v = |1⟩; V = Ry(π) sends |0⟩ to |1⟩
        let mut ry = ParamCircuit::<f64>::new(1);
        ry.ry(0);
        let m0 = matrix_element(&nil, (&empty_u, &[]), (&ry, &[std::f64::consts::PI]), 0, &cfg)
            .unwrap();
        assert!((m0 - 1.0).abs() < 1e-15);
        assert!(matrix_element(&nil, (&empty_u, &[]), (&empty_u, &[]), 2, &cfg).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(EstimatorConfig::shots(0, 1).validate().is_err());
        assert!(EstimatorConfig::sampled(0, 1).validate().is_err());
        assert!(EstimatorConfig::shots(10, 1).validate().is_ok());
    }
}
