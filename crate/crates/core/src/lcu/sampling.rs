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

use rand::Rng;
use rand_distr::{Distribution, WeightedIndex};

use super::LcuDecomposition;
use crate::error::{input, Result};
use crate::scalar::Real;

/// Draws `count` term indices i.i.d. with `P(k) = |c_k| / ‖c‖₁`.
///
/// Coefficient phases are not part of the weight; callers fold
/// `c_k / |c_k|` into the sampled unitary.
pub fn importance_sample_terms<T: Real, R: Rng + ?Sized>(
    lcu: &LcuDecomposition<T>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if lcu.is_empty() || lcu.l1_norm() <= T::zero() {
        return input("cannot sample from an LCU whose coefficients are all zero");
    }
    let weights: Vec<f64> = lcu.terms().iter().map(|t| t.coefficient.norm().as_f64()).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| crate::Error::Input(e.to_string()))?;
    Ok((0..count).map(|_| dist.sample(rng)).collect())
}

/// Number of sampled terms for precision `epsilon` with failure probability
/// `delta`: `ceil(2 ‖c‖₁² ln(2/δ) / ε²)` (Hoeffding, samples bounded by ‖c‖₁).
pub fn sample_count(l1: f64, epsilon: f64, delta: f64) -> Result<u64> {
    if !(l1.is_finite() && l1 >= 0.0) {
        return input(format!("l1 norm must be finite and non-negative, got {l1}"));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return input(format!("epsilon must be positive, got {epsilon}"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return input(format!("delta must lie in (0, 1), got {delta}"));
    }
    Ok((2.0 * l1 * l1 * (2.0 / delta).ln() / (epsilon * epsilon)).ceil() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcu::{LcuTerm, Unitary};
    use crate::scalar::c;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lcu(coeffs: &[f64]) -> LcuDecomposition<f64> {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, &x)| LcuTerm {
                coefficient: c(x, 0.0),
                unitary: Unitary::Shift {
                    dim: coeffs.len(),
                    k,
                },
            })
            .collect();
        LcuDecomposition::new(coeffs.len(), terms).unwrap()
    }

    #[test]
    fn single_term_and_empty_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(importance_sample_terms(&lcu(&[2.0]), 10, &mut rng).unwrap(), vec![0; 10]);
        assert!(importance_sample_terms(&lcu(&[2.0]), 0, &mut rng).unwrap().is_empty());
        assert!(importance_sample_terms(&lcu(&[0.0, 0.0]), 3, &mut rng).is_err());
    }

    #[test]
    fn frequencies_follow_weights() {
        // |c| = (1, 3): term 1 has probability 0.75; binomial std at 1e5 draws ≈ 0.0014
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = importance_sample_terms(&lcu(&[1.0, -3.0]), 100_000, &mut rng).unwrap();
        let freq = draws.iter().filter(|&&k| k == 1).count() as f64 / 1e5;
        assert!((freq - 0.75).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn deterministic_given_seed() {
        let l = lcu(&[1.0, 2.0, 3.0]);
        let a = importance_sample_terms(&l, 50, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = importance_sample_terms(&l, 50, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_count_examples() {
        assert_eq!(sample_count(0.0, 0.1, 0.05).unwrap(), 0);
        // 2*4*ln(40)/0.01 = 2951.10...
        assert_eq!(sample_count(2.0, 0.1, 0.05).unwrap(), 2952);
        let a = sample_count(3.0, 0.2, 0.01).unwrap() as f64;
        let b = sample_count(3.0, 0.1, 0.01).unwrap() as f64;
        assert!((b / a - 4.0).abs() < 1e-2);
        assert!(sample_count(1.0, 0.0, 0.1).is_err());
        assert!(sample_count(1.0, 0.1, 1.0).is_err());
        assert!(sample_count(-1.0, 0.1, 0.5).is_err());
    }
}
