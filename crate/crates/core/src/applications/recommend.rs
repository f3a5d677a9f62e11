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

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::require_circuit_size;
use crate::error::{dim, input, Error, Result};
use crate::lcu::pauli_decompose;
use crate::linalg::{inner, norm, DenseMatrix};
use crate::scalar::{czero, C};
use crate::solver::{run, VqsvdConfig};

/// Projection of one customer's preferences onto the learned item subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct RecommendationOutput {
    /// `ξ_t = ⟨v_t|b⟩`.
    pub coefficients: Vec<C<f64>>,
    /// `G = sqrt(Σ |ξ_t|²)`.
    pub normalization: f64,
    /// `|⟨i|b̂⟩|²` per item.
    pub probabilities: Vec<f64>,
    /// Seeded draws from `probabilities`.
    pub samples: Vec<usize>,
}

/// `b = A†|row⟩ / ‖A†|row⟩‖`, so that `b` lies in the span of the right
/// singular vectors.
fn preference_state(a: &DenseMatrix<f64>, row: usize) -> Result<Vec<C<f64>>> {
    if row >= a.rows() {
        return input(format!("row {row} out of range for {} rows", a.rows()));
    }
    let b: Vec<C<f64>> = a.row(row).iter().map(|z| z.conj()).collect();
    let n = norm(&b);
    if n == 0.0 {
        return input(format!("row {row} is zero"));
    }
    Ok(b.into_iter().map(|z| z / n).collect())
}

/// Projects row `row` onto `span{rights}` and measures the normalized result.
pub fn recommend_with_vectors(
    a: &DenseMatrix<f64>,
    rights: &[Vec<C<f64>>],
    row: usize,
    samples: usize,
    seed: u64,
) -> Result<RecommendationOutput> {
    if rights.is_empty() {
        return input("need at least one right vector");
    }
    if rights.iter().any(|v| v.len() != a.cols()) {
        return dim(format!("right vectors must have length {}", a.cols()));
    }
    let b = preference_state(a, row)?;
    let xi: Vec<C<f64>> = rights.iter().map(|v| inner(v, &b)).collect();
    let g = xi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if g < 1e-12 {
        return Err(Error::Degenerate(format!(
            "row {row} is orthogonal to the learned subspace (G = {g:e})"
        )));
    }
    let mut b_hat = vec![czero(); a.cols()];
    for (x, v) in xi.iter().zip(rights) {
        for (o, vi) in b_hat.iter_mut().zip(v) {
            *o += x * vi / g;
        }
    }
    let probabilities: Vec<f64> = b_hat.iter().map(|z| z.norm_sqr()).collect();
    let drawn = if samples == 0 {
        Vec::new()
    } else {
        let dist = WeightedIndex::new(&probabilities)
            .map_err(|e| Error::Degenerate(format!("cannot sample items: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| dist.sample(&mut rng)).collect()
    };
    Ok(RecommendationOutput {
        coefficients: xi,
        normalization: g,
        probabilities,
        samples: drawn,
    })
}

/// Learns the top `config.rank` right singular vectors of `a` and
/// recommends for customer `row`.
pub fn recommend(
    a: &DenseMatrix<f64>,
    config: &VqsvdConfig,
    row: usize,
    samples: usize,
) -> Result<RecommendationOutput> {
    require_circuit_size(a)?;
    preference_state(a, row)?;
    let result = run(&pauli_decompose(a)?, config)?;
    let t = result.triplets();
    recommend_with_vectors(a, &t.rights, row, samples, config.seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{AnsatzSpec, RotationMode};
    use crate::linalg::basis_vector;
    use crate::scalar::creal;

    #[test]
    fn diagonal_preferences_recommend_own_item() {
        let a = DenseMatrix::<f64>::diag(&[3.0, 2.0, 1.0, 0.5]);
        let rights: Vec<_> = (0..2).map(|j| basis_vector(4, j)).collect();
        let r = recommend_with_vectors(&a, &rights, 0, 10, 1).unwrap();
        assert!((r.coefficients[0].re - 1.0).abs() < 1e-15 && r.coefficients[1].norm() == 0.0);
        assert_eq!(r.probabilities, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(r.samples.iter().all(|&s| s == 0));
    }

    #[test]
    fn rank_one_projection() {
        let u = [0.5, -0.5, 0.5, 0.5];
        let v = [0.6, 0.0, 0.8, 0.0];
        let a = DenseMatrix::from_fn(4, 4, |i, j| creal(u[i] * v[j]));
        let vv: Vec<_> = v.iter().map(|&x| creal(x)).collect();
        let r = recommend_with_vectors(&a, &[vv], 1, 0, 0).unwrap();
        for (p, x) in r.probabilities.iter().zip(v) {
            assert!((p - x * x).abs() < 1e-12);
        }
        assert!((r.normalization - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let a = DenseMatrix::<f64>::diag(&[1.0, 0.0, 1.0, 1.0]);
        let rights = vec![basis_vector(4, 0)];
        assert!(matches!(recommend_with_vectors(&a, &rights, 1, 0, 0), Err(Error::Input(_))));
        assert!(matches!(recommend_with_vectors(&a, &rights, 2, 0, 0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn learned_vectors_project_diagonal_row() {
        let a = DenseMatrix::<f64>::diag(&[3.0, 2.0, 1.0, 0.5]);
        let mut cfg = VqsvdConfig::new(2, AnsatzSpec::hardware_efficient(10, RotationMode::Real));
        cfg.max_iterations = 400;
        cfg.seed = 3;
        let r = recommend(&a, &cfg, 1, 0).unwrap();
        assert!(r.probabilities[1] > 0.99, "{:?}", r.probabilities);
    }
}
