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

//! Weighted-loss training of the two circuits.
//!
//! The loss is `L(α, β) = Σ_j q_j Re⟨ψ_j|U(α)† M V(β)|ψ_j⟩` over the first
//! `T` basis states with strictly decreasing weights. Its maximum over all
//! unitaries is `Σ_j q_j d_j`, attained when the circuit columns are the
//! singular vectors in descending order.
//!
//! Gradients use the single-point shift `∂L/∂θ = ½ L(θ + π)`, valid for
//! every angle in either circuit because all rotations are
//! `exp(−iθP/2)`.

mod adam;
pub mod optimize;

pub use adam::{Adam, AdamSettings};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{AnsatzSpec, ParamCircuit};
use crate::error::{dim, input, Result};
use crate::estimator::{estimate_element, mix_seed, EstimatorConfig, EstimatorMode};
use crate::lcu::{lcu_reconstruct, LcuDecomposition};
use crate::linalg::{basis_vector, DenseMatrix};
use crate::scalar::{Real, C};
use optimize::{maximize, AscentSettings, Objective};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqsvdConfig {
    /// Number of singular triples `T` to learn.
    pub rank: usize,
    /// `q_1 > … > q_T > 0`; defaults to `(T, T−1, …, 1)` when absent.
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    pub u_ansatz: AnsatzSpec,
    pub v_ansatz: AnsatzSpec,
    #[serde(default = "defaults::max_iterations")]
    pub max_iterations: usize,
    #[serde(default = "defaults::tolerance")]
    pub tolerance: f64,
    #[serde(default = "defaults::learning_rate")]
    pub learning_rate: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub estimator: EstimatorConfig,
    /// Record exact `m_j` at every iterate (costs one extra evaluation each).
    #[serde(default)]
    pub record_m_trace: bool,
}

mod defaults {
    pub fn max_iterations() -> usize {
        200
    }
    pub fn tolerance() -> f64 {
        1e-6
    }
    pub fn learning_rate() -> f64 {
        0.05
    }
}

impl VqsvdConfig {
    /// Default run settings: 200 Adam iterations at learning rate 0.05,
    /// weights `(T, …, 1)`, exact estimator, same ansatz for both circuits.
    pub fn new(rank: usize, ansatz: AnsatzSpec) -> Self {
        Self {
            rank,
            weights: None,
            u_ansatz: ansatz,
            v_ansatz: ansatz,
            max_iterations: defaults::max_iterations(),
            tolerance: defaults::tolerance(),
            learning_rate: defaults::learning_rate(),
            seed: 0,
            estimator: EstimatorConfig::exact(),
            record_m_trace: false,
        }
    }

    pub fn weights(&self) -> Vec<f64> {
        self.weights
            .clone()
            .unwrap_or_else(|| default_weights(self.rank))
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.rank == 0 || self.rank > dim {
            return input(format!("rank {} must lie in 1..={dim}", self.rank));
        }
        validate_weights(&self.weights(), self.rank)?;
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return input("learning rate must be positive");
        }
        if !(self.tolerance >= 0.0) {
            return input("tolerance must be non-negative");
        }
        self.estimator.validate()
    }
}

/// `(T, T−1, …, 1)`.
pub fn default_weights(rank: usize) -> Vec<f64> {
    (1..=rank).rev().map(|q| q as f64).collect()
}

fn validate_weights(q: &[f64], rank: usize) -> Result<()> {
    if q.len() != rank {
        return input(format!("{} weights for rank {rank}", q.len()));
    }
    if q.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return input("weights must be finite and positive");
    }
    if q.windows(2).any(|w| w[0] <= w[1]) {
        return input("weights must be strictly decreasing");
    }
    Ok(())
}

/// Matrix, circuits, weights and estimator for one training problem.
#[derive(Debug, Clone)]
pub struct VqsvdProblem<T: Real> {
    lcu: LcuDecomposition<T>,
    dense: DenseMatrix<T>,
    u: ParamCircuit<T>,
    v: ParamCircuit<T>,
    weights: Vec<T>,
    estimator: EstimatorConfig,
}

impl<T: Real> VqsvdProblem<T> {
    pub fn new(
        lcu: LcuDecomposition<T>,
        u: ParamCircuit<T>,
        v: ParamCircuit<T>,
        weights: &[f64],
        estimator: EstimatorConfig,
    ) -> Result<Self> {
        let n = lcu.dim();
        if u.dim() != n || v.dim() != n {
            return dim(format!(
                "circuits on {} and {} amplitudes for a {n}-dimensional matrix",
                u.dim(),
                v.dim()
            ));
        }
        if weights.is_empty() || weights.len() > n {
            return input(format!("rank {} must lie in 1..={n}", weights.len()));
        }
        validate_weights(weights, weights.len())?;
        estimator.validate()?;
        let dense = lcu_reconstruct(&lcu);
        Ok(Self {
            lcu,
            dense,
            u,
            v,
            weights: weights.iter().map(|&w| T::lit(w)).collect(),
            estimator,
        })
    }

    /// Builds both ansatz circuits from `config` for the LCU's qubit count.
    pub fn from_config(lcu: LcuDecomposition<T>, config: &VqsvdConfig) -> Result<Self> {
        let Some(n_qubits) = lcu.n_qubits() else {
            return input(format!(
                "matrix dimension {} is not a power of two",
                lcu.dim()
            ));
        };
        config.validate(lcu.dim())?;
        let u = config.u_ansatz.build(n_qubits)?;
        let v = config.v_ansatz.build(n_qubits)?;
        Self::new(lcu, u, v, &config.weights(), config.estimator)
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn lcu(&self) -> &LcuDecomposition<T> {
        &self.lcu
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.dense
    }

    pub fn u_circuit(&self) -> &ParamCircuit<T> {
        &self.u
    }

    pub fn v_circuit(&self) -> &ParamCircuit<T> {
        &self.v
    }

    pub fn estimator(&self) -> &EstimatorConfig {
        &self.estimator
    }

    fn check(&self, alpha: &[T], beta: &[T]) -> Result<()> {
        if alpha.len() != self.u.param_count() || beta.len() != self.v.param_count() {
            return input(format!(
                "parameter lengths ({}, {}) do not match circuits ({}, {})",
                alpha.len(),
                beta.len(),
                self.u.param_count(),
                self.v.param_count()
            ));
        }
        Ok(())
    }

    /// Circuit columns `u_j = U|j⟩`, `v_j = V|j⟩` for `j < T`.
    pub fn columns(&self, alpha: &[T], beta: &[T]) -> (Vec<Vec<C<T>>>, Vec<Vec<C<T>>>) {
        (
            self.u.columns(alpha, self.rank()),
            self.v.columns(beta, self.rank()),
        )
    }

    /// Noise-free `m_j = Re⟨u_j|M|v_j⟩`, in basis order.
    pub fn exact_m_values(&self, alpha: &[T], beta: &[T]) -> Result<Vec<T>> {
        self.check(alpha, beta)?;
        let (us, vs) = self.columns(alpha, beta);
        Ok(us
            .iter()
            .zip(&vs)
            .map(|(u, v)| crate::linalg::inner(u, &self.dense.matvec(v)).re)
            .collect())
    }

    /// `m_j` with the configured estimator; `stream` selects the random stream.
    pub fn m_values(&self, alpha: &[T], beta: &[T], stream: u64) -> Result<Vec<T>> {
        self.check(alpha, beta)?;
        if self.estimator.mode == EstimatorMode::Exact {
            return self.exact_m_values(alpha, beta);
        }
        let (us, vs) = self.columns(alpha, beta);
        us.iter()
            .zip(&vs)
            .enumerate()
            .map(|(j, (u, v))| {
                if self.lcu.l1_norm() == T::zero() {
                    return Ok(T::zero());
                }
                estimate_element(
                    &self.lcu,
                    Some(&self.dense),
                    u,
                    v,
                    &self.estimator,
                    mix_seed(stream, j as u64),
                )
            })
            .collect()
    }

    pub fn loss_with_stream(&self, alpha: &[T], beta: &[T], stream: u64) -> Result<T> {
        let m = self.m_values(alpha, beta, stream)?;
        Ok(m.iter().zip(&self.weights).map(|(&m, &q)| q * m).sum())
    }

    pub fn loss(&self, alpha: &[T], beta: &[T]) -> Result<T> {
        self.loss_with_stream(alpha, beta, 0)
    }

    /// `(∂L/∂α, ∂L/∂β)`, each entry `½ L` at the angle shifted by `+π`.
    ///
    /// Exact mode obtains all shifted losses from one adjoint sweep per
    /// column; other modes evaluate every shifted loss with its own stream.
    pub fn gradient_with_stream(
        &self,
        alpha: &[T],
        beta: &[T],
        stream: u64,
    ) -> Result<(Vec<T>, Vec<T>)> {
        self.check(alpha, beta)?;
        if self.estimator.mode != EstimatorMode::Exact {
            return self.gradient_by_shifted_losses(alpha, beta, stream);
        }
        let half = T::lit(0.5);
        let (us, vs) = self.columns(alpha, beta);
        let basis: Vec<Vec<C<T>>> = (0..self.rank())
            .map(|j| basis_vector(self.lcu.dim(), j))
            .collect();
        let mv: Vec<Vec<C<T>>> = vs.iter().map(|v| self.dense.matvec(v)).collect();
        let mdu: Vec<Vec<C<T>>> = us.iter().map(|u| self.dense.adjoint_matvec(u)).collect();
        let reduce = |rows: Vec<Vec<C<T>>>| -> Vec<T> {
            rows.iter()
                .map(|per_j| {
                    half * per_j
                        .iter()
                        .zip(&self.weights)
                        .map(|(z, &q)| q * z.re)
                        .sum::<T>()
                })
                .collect()
        };
        // ⟨U'ψ_j|M v_j⟩ and ⟨V'ψ_j|M† u_j⟩ share real parts with the loss terms
        let ga = reduce(self.u.shifted_overlaps(alpha, &basis, &mv));
        let gb = reduce(self.v.shifted_overlaps(beta, &basis, &mdu));
        Ok((ga, gb))
    }

    pub fn gradient(&self, alpha: &[T], beta: &[T]) -> Result<(Vec<T>, Vec<T>)> {
        self.gradient_with_stream(alpha, beta, 0)
    }

    /// Reference path: one full loss evaluation per shifted angle.
    pub fn gradient_by_shifted_losses(
        &self,
        alpha: &[T],
        beta: &[T],
        stream: u64,
    ) -> Result<(Vec<T>, Vec<T>)> {
        self.check(alpha, beta)?;
        let half = T::lit(0.5);
        let pi = T::PI();
        let mut ga = Vec::with_capacity(alpha.len());
        let mut shifted = alpha.to_vec();
        for l in 0..alpha.len() {
            shifted[l] += pi;
            let s = mix_seed(stream, 1 + l as u64);
            ga.push(half * self.loss_with_stream(&shifted, beta, s)?);
            shifted[l] = alpha[l];
        }
        let mut gb = Vec::with_capacity(beta.len());
        let mut shifted = beta.to_vec();
        for k in 0..beta.len() {
            shifted[k] += pi;
            let s = mix_seed(stream, 1 + (alpha.len() + k) as u64);
            gb.push(half * self.loss_with_stream(alpha, &shifted, s)?);
            shifted[k] = beta[k];
        }
        Ok((ga, gb))
    }

    /// Uniform `[0, 2π)` draws for `α` then `β`.
    pub fn initial_params(&self, seed: u64) -> (Vec<T>, Vec<T>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut draw = |n: usize| -> Vec<T> {
            (0..n).map(|_| T::lit(rng.gen::<f64>() * two_pi)).collect()
        };
        let a = draw(self.u.param_count());
        let b = draw(self.v.param_count());
        (a, b)
    }
}

/// Outcome of a training run.
#[derive(Debug, Clone)]
pub struct VqsvdResult<T: Real> {
    /// Exact-mode `m_j` at the final parameters, sorted descending.
    pub m_values: Vec<T>,
    /// Basis index `j` behind each entry of `m_values`.
    pub basis_order: Vec<usize>,
    pub alpha: Vec<T>,
    pub beta: Vec<T>,
    /// Estimator loss per iterate plus a final entry at `(alpha, beta)`.
    pub loss_history: Vec<T>,
    /// Exact `m_j` per iterate in basis order, when requested.
    pub m_trace: Option<Vec<Vec<T>>>,
    pub converged: bool,
    pub iterations: usize,
    pub weights: Vec<f64>,
    pub u_circuit: ParamCircuit<T>,
    pub v_circuit: ParamCircuit<T>,
}

impl<T: Real> VqsvdResult<T> {
    pub fn rank(&self) -> usize {
        self.m_values.len()
    }

    /// True when some `m_j` came out negative (a non-global optimum).
    pub fn has_negative_m(&self) -> bool {
        self.m_values.iter().any(|&m| m < T::zero())
    }

    pub fn final_loss(&self) -> T {
        *self.loss_history.last().expect("history always has a final entry")
    }

    /// Sign-normalized singular triples; see [`SingularTriplets::from_result`].
    pub fn triplets(&self) -> SingularTriplets<T> {
        SingularTriplets::from_result(self)
    }
}

/// Inferred `(m_j, û_j, v̂_j)`.
#[derive(Debug, Clone)]
pub struct SingularTriplets<T: Real> {
    pub values: Vec<T>,
    pub lefts: Vec<Vec<C<T>>>,
    pub rights: Vec<Vec<C<T>>>,
}

impl<T: Real> SingularTriplets<T> {
    /// Circuit columns with each negative `m_j` turned positive by negating
    /// `û_j`, then re-sorted descending. The rank-one terms `m_j û_j v̂_j†`
    /// are unchanged.
    pub fn from_result(result: &VqsvdResult<T>) -> Self {
        let (lefts, rights) = extract_vectors(result, result.rank());
        let mut rows: Vec<(T, Vec<C<T>>, Vec<C<T>>)> = result
            .m_values
            .iter()
            .zip(lefts)
            .zip(rights)
            .map(|((&m, u), v)| {
                if m < T::zero() {
                    (-m, u.into_iter().map(|z| -z).collect(), v)
                } else {
                    (m, u, v)
                }
            })
            .collect();
        rows.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite m values"));
        let mut out = Self {
            values: Vec::new(),
            lefts: Vec::new(),
            rights: Vec::new(),
        };
        for (m, u, v) in rows {
            out.values.push(m);
            out.lefts.push(u);
            out.rights.push(v);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ_{j<t} m_j û_j v̂_j†`.
    pub fn reconstruct(&self, t: usize) -> Result<DenseMatrix<T>> {
        crate::linalg::reconstruct_rank_t(&self.values, &self.lefts, &self.rights, t)
    }
}

/// Loss of `config`'s circuits at `(alpha, beta)`.
pub fn loss<T: Real>(
    lcu: &LcuDecomposition<T>,
    alpha: &[T],
    beta: &[T],
    config: &VqsvdConfig,
) -> Result<T> {
    VqsvdProblem::from_config(lcu.clone(), config)?.loss(alpha, beta)
}

/// Parameter-shift gradient of `config`'s loss.
pub fn gradient<T: Real>(
    lcu: &LcuDecomposition<T>,
    alpha: &[T],
    beta: &[T],
    config: &VqsvdConfig,
) -> Result<(Vec<T>, Vec<T>)> {
    VqsvdProblem::from_config(lcu.clone(), config)?.gradient(alpha, beta)
}

/// `Σ_j q_j Re(U† M V)_jj` for arbitrary unitaries.
pub fn loss_of_unitaries<T: Real>(
    m: &DenseMatrix<T>,
    u: &DenseMatrix<T>,
    v: &DenseMatrix<T>,
    weights: &[T],
) -> Result<T> {
    if !m.is_square() || u.rows() != m.rows() || v.rows() != m.cols() {
        return dim("U, M and V shapes are incompatible");
    }
    if weights.len() > m.rows() {
        return input("more weights than matrix columns");
    }
    let tol = T::lit(1e-8);
    if !u.is_square() || u.unitarity_error() > tol || !v.is_square() || v.unitarity_error() > tol {
        return input("U and V must be unitary");
    }
    let mv = m.dot(v);
    Ok(weights
        .iter()
        .enumerate()
        .map(|(j, &q)| {
            let uj = u.column(j);
            let col = mv.column(j);
            q * crate::linalg::inner(&uj, &col).re
        })
        .sum())
}

/// Training loop settings not tied to the circuits.
#[derive(Debug, Clone, Copy)]
pub struct RunSettings {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub learning_rate: f64,
    pub seed: u64,
    pub record_m_trace: bool,
}

impl From<&VqsvdConfig> for RunSettings {
    fn from(c: &VqsvdConfig) -> Self {
        Self {
            max_iterations: c.max_iterations,
            tolerance: c.tolerance,
            learning_rate: c.learning_rate,
            seed: c.seed,
            record_m_trace: c.record_m_trace,
        }
    }
}

struct WeightedLoss<'a, T: Real> {
    problem: &'a VqsvdProblem<T>,
}

impl<T: Real> WeightedLoss<'_, T> {
    fn split<'p>(&self, params: &'p [T]) -> (&'p [T], &'p [T]) {
        params.split_at(self.problem.u.param_count())
    }
}

impl<T: Real> Objective<T> for WeightedLoss<'_, T> {
    fn value_and_gradient(&mut self, params: &[T], iter: usize) -> (T, Vec<T>) {
        let (a, b) = self.split(params);
        let stream = mix_seed(iter as u64, 0);
        let value = self
            .problem
            .loss_with_stream(a, b, stream)
            .expect("validated problem");
        let (mut ga, gb) = self
            .problem
            .gradient_with_stream(a, b, mix_seed(iter as u64, 1))
            .expect("validated problem");
        ga.extend(gb);
        (value, ga)
    }

    fn value(&mut self, params: &[T], iter: usize) -> T {
        let (a, b) = self.split(params);
        self.problem
            .loss_with_stream(a, b, mix_seed(iter as u64, 0))
            .expect("validated problem")
    }
}

/// Trains `config`'s circuits on `lcu`.
pub fn run<T: Real>(lcu: &LcuDecomposition<T>, config: &VqsvdConfig) -> Result<VqsvdResult<T>> {
    let problem = VqsvdProblem::from_config(lcu.clone(), config)?;
    Ok(run_problem(&problem, &RunSettings::from(config)))
}

/// Trains a prepared problem from seeded uniform `[0, 2π)` angles.
pub fn run_problem<T: Real>(problem: &VqsvdProblem<T>, settings: &RunSettings) -> VqsvdResult<T> {
    let (a0, b0) = problem.initial_params(settings.seed);
    run_problem_from(problem, settings, a0, b0)
}

/// Trains from explicit starting angles.
pub fn run_problem_from<T: Real>(
    problem: &VqsvdProblem<T>,
    settings: &RunSettings,
    alpha0: Vec<T>,
    beta0: Vec<T>,
) -> VqsvdResult<T> {
    let split = problem.u.param_count();
    let mut init = alpha0;
    init.extend(beta0);
    let ascent = AscentSettings {
        adam: AdamSettings {
            learning_rate: settings.learning_rate,
            ..AdamSettings::default()
        },
        max_iterations: settings.max_iterations,
        tolerance: settings.tolerance,
    };
    let mut trace: Option<Vec<Vec<T>>> = settings.record_m_trace.then(Vec::new);
    let mut objective = WeightedLoss { problem };
    let out = maximize(&mut objective, init, &ascent, |_, p| {
        if let Some(tr) = trace.as_mut() {
            let (a, b) = p.split_at(split);
            tr.push(problem.exact_m_values(a, b).expect("validated problem"));
        }
    });
    let (alpha, beta) = out.params.split_at(split);
    let m = problem
        .exact_m_values(alpha, beta)
        .expect("validated problem");
    let mut basis_order: Vec<usize> = (0..m.len()).collect();
    basis_order.sort_by(|&i, &j| m[j].partial_cmp(&m[i]).expect("finite m").then(i.cmp(&j)));
    VqsvdResult {
        m_values: basis_order.iter().map(|&j| m[j]).collect(),
        basis_order,
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        loss_history: out.history,
        m_trace: trace,
        converged: out.converged,
        iterations: out.iterations,
        weights: problem.weights.iter().map(|w| w.as_f64()).collect(),
        u_circuit: problem.u.clone(),
        v_circuit: problem.v.clone(),
    }
}

/// Result at fixed angles without any training steps.
pub fn result_at<T: Real>(
    problem: &VqsvdProblem<T>,
    alpha: Vec<T>,
    beta: Vec<T>,
) -> Result<VqsvdResult<T>> {
    problem.check(&alpha, &beta)?;
    let settings = RunSettings {
        max_iterations: 0,
        tolerance: 0.0,
        learning_rate: defaults::learning_rate(),
        seed: 0,
        record_m_trace: false,
    };
    Ok(run_problem_from(problem, &settings, alpha, beta))
}

/// Circuit columns behind the first `t` sorted `m_values`:
/// `û = U(α*)|ψ_j⟩`, `v̂ = V(β*)|ψ_j⟩`.
pub fn extract_vectors<T: Real>(
    result: &VqsvdResult<T>,
    t: usize,
) -> (Vec<Vec<C<T>>>, Vec<Vec<C<T>>>) {
    let t = t.min(result.basis_order.len());
    let n = result.u_circuit.dim();
    let col = |c: &ParamCircuit<T>, p: &[T], j: usize| {
        let mut v = basis_vector(n, j);
        c.apply_in_place(p, &mut v);
        v
    };
    result.basis_order[..t]
        .iter()
        .map(|&j| {
            (
                col(&result.u_circuit, &result.alpha, j),
                col(&result.v_circuit, &result.beta, j),
            )
        })
        .unzip()
}

/// `iter,loss[,m_1,…,m_T]` rows, one per recorded iterate.
pub fn convergence_csv<T: Real>(result: &VqsvdResult<T>) -> String {
    let rank = result.weights.len();
    let mut out = String::from("iter,loss");
    if result.m_trace.is_some() {
        for j in 1..=rank {
            out.push_str(&format!(",m_{j}"));
        }
    }
    out.push('\n');
    for (i, loss) in result.loss_history.iter().enumerate() {
        out.push_str(&format!("{i},{:.16e}", loss.as_f64()));
        if let Some(trace) = &result.m_trace {
            // the final history entry has no trace row
            match trace.get(i) {
                Some(row) => row
                    .iter()
                    .for_each(|m| out.push_str(&format!(",{:.16e}", m.as_f64()))),
                None => (0..rank).for_each(|_| out.push(',')),
            }
        }
        out.push('\n');
    }
    out
}
