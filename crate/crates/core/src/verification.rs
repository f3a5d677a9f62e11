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

//! Quality checks for learned singular triples.
//!
//! With classical access to `M`, errors are measured directly against the
//! reference SVD. Without it, `Σ_{j≤T} d_j² − Σ_j m_j²` bounds both error
//! functionals, and its first sum is estimable on a quantum device by
//! maximizing `F = Σ_j |⟨u_j|M|v_j⟩|²` (see [`vqfne_run`]).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{dim, input, Result};
use crate::estimator::{estimate_element_complex, mix_seed, EstimatorMode};
use crate::lcu::LcuDecomposition;
use crate::linalg::{basis_vector, classical_svd, frobenius_norm, inner, DenseMatrix};
use crate::scalar::{czero, Real, C};
use crate::solver::optimize::{maximize, AscentSettings, Objective};
use crate::solver::{AdamSettings, RunSettings, SingularTriplets, VqsvdConfig, VqsvdProblem};

/// `Σ_j (d_j − m_j)²`.
pub fn epsilon_d<T: Real>(exact_d: &[T], inferred_m: &[T]) -> Result<T> {
    if exact_d.len() != inferred_m.len() {
        return input(format!(
            "{} exact values vs {} inferred",
            exact_d.len(),
            inferred_m.len()
        ));
    }
    Ok(exact_d
        .iter()
        .zip(inferred_m)
        .map(|(&d, &m)| (d - m) * (d - m))
        .sum())
}

/// `H = |0⟩⟨1| ⊗ M + |1⟩⟨0| ⊗ M†`, whose eigenvalues are `±d_j`.
pub fn hermitian_embedding<T: Real>(m: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    if !m.is_square() {
        return input(format!("embedding needs a square matrix, got {}x{}", m.rows(), m.cols()));
    }
    let n = m.rows();
    Ok(DenseMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => m[(i, j - n)],
        (false, true) => m[(j, i - n)].conj(),
        _ => czero(),
    }))
}

/// `(|0⟩a ± |1⟩b)/√2`.
fn embed_pair<T: Real>(a: &[C<T>], b: &[C<T>], sign: T) -> Vec<C<T>> {
    let s = T::FRAC_1_SQRT_2();
    a.iter()
        .map(|&z| z * s)
        .chain(b.iter().map(|&z| z * (s * sign)))
        .collect()
}

fn dist_sq<T: Real>(a: &[C<T>], b: &[C<T>]) -> T {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum()
}

/// `Σ_j ‖H ê_j⁺ − m_j ê_j⁺‖² + ‖H ê_j⁻ + m_j ê_j⁻‖²`.
pub fn epsilon_v<T: Real>(
    m: &DenseMatrix<T>,
    values: &[T],
    lefts: &[Vec<C<T>>],
    rights: &[Vec<C<T>>],
) -> Result<T> {
    if values.len() != lefts.len() || values.len() != rights.len() {
        return input("values and vector families differ in length");
    }
    let n = m.rows();
    if lefts.iter().chain(rights).any(|v| v.len() != n) {
        return dim(format!("vectors must have length {n}"));
    }
    let h = hermitian_embedding(m)?;
    let mut total = T::zero();
    for ((&mj, u), v) in values.iter().zip(lefts).zip(rights) {
        for sign in [T::one(), -T::one()] {
            let e = embed_pair(u, v, sign);
            let target: Vec<C<T>> = e.iter().map(|&z| z * (mj * sign)).collect();
            total += dist_sq(&h.matvec(&e), &target);
        }
    }
    Ok(total)
}

/// `(Σ_j ‖u_j − û_j‖² + ‖v_j − v̂_j‖², Σ_j ‖e_j⁺ − ê_j⁺‖² + ‖e_j⁻ − ê_j⁻‖²)`.
///
/// Both equal `Σ_j 4 − 2 Re(⟨u_j|û_j⟩ + ⟨v_j|v̂_j⟩)` for unit vectors.
pub fn distance_equality_check<T: Real>(
    u: &[Vec<C<T>>],
    v: &[Vec<C<T>>],
    u_hat: &[Vec<C<T>>],
    v_hat: &[Vec<C<T>>],
) -> Result<(T, T)> {
    let k = u.len();
    if v.len() != k || u_hat.len() != k || v_hat.len() != k {
        return input("vector families differ in length");
    }
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    for j in 0..k {
        if u_hat[j].len() != u[j].len() || v_hat[j].len() != v[j].len() {
            return dim(format!("pair {j} has mismatched vector lengths"));
        }
        lhs += dist_sq(&u[j], &u_hat[j]) + dist_sq(&v[j], &v_hat[j]);
        for sign in [T::one(), -T::one()] {
            rhs += dist_sq(&embed_pair(&u[j], &v[j], sign), &embed_pair(&u_hat[j], &v_hat[j], sign));
        }
    }
    Ok((lhs, rhs))
}

/// Partial-sum dominance of squared singular values over squared diagonal moduli.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationCheck<T: Real> {
    /// `Σ_{j≤k} d_j² − Σ_{j≤k} |D_j↓|²` for `k = 1..=n`.
    pub margins: Vec<T>,
    /// Every margin at least `−1e-10 ‖M‖_F²`.
    pub ok: bool,
    /// Every margin below `1e-12 ‖M‖_F²` in modulus.
    pub equality: bool,
    pub is_diagonal: bool,
}

impl<T: Real> MajorizationCheck<T> {
    /// Equality should occur exactly for diagonal matrices.
    pub fn equality_consistent(&self) -> bool {
        self.equality == self.is_diagonal
    }

    pub fn min_margin(&self) -> T {
        self.margins.iter().copied().fold(T::infinity(), T::min)
    }
}

pub fn majorization_check<T: Real>(m: &DenseMatrix<T>) -> Result<MajorizationCheck<T>> {
    if !m.is_square() {
        return input(format!("majorization needs a square matrix, got {}x{}", m.rows(), m.cols()));
    }
    let n = m.rows();
    let d = classical_svd(m)?.singular_values;
    let mut diag: Vec<T> = (0..n).map(|i| m[(i, i)].norm_sqr()).collect();
    diag.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
    let scale = frobenius_norm(m).powi(2).max(T::min_positive_value());
    let mut margins = Vec::with_capacity(n);
    let (mut sd, mut sg) = (T::zero(), T::zero());
    for k in 0..n {
        sd += d[k] * d[k];
        sg += diag[k];
        margins.push(sd - sg);
    }
    let off = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| m[(i, j)].norm_sqr())
        .fold(T::zero(), T::max);
    let eps = T::epsilon().sqrt();
    Ok(MajorizationCheck {
        ok: margins.iter().all(|&g| g >= -T::lit(1e-10) * scale),
        equality: margins.iter().all(|&g| g.abs() < T::lit(1e-12) * scale),
        // off-diagonal mass enters the margins quadratically
        is_diagonal: off <= eps * eps * scale,
        margins,
    })
}

/// Where `Σ_{j≤T} d_j²` came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSource {
    /// Top-`T` squared values of the reference SVD.
    Oracle,
    /// `‖M‖_F²`, exact once `T` reaches the rank and an upper bound otherwise.
    Frobenius,
    /// A converged VQFNE value.
    Vqfne,
}

impl BoundSource {
    pub fn label(self) -> &'static str {
        match self {
            BoundSource::Oracle => "oracle",
            BoundSource::Frobenius => "frobenius",
            BoundSource::Vqfne => "vqfne",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport<T: Real> {
    pub rank: usize,
    pub epsilon_d_exact: T,
    pub epsilon_v_exact: T,
    pub bound_source: BoundSource,
    pub bound_common: T,
    pub bound_d: T,
    pub bound_v: T,
    pub vqfne_value: Option<T>,
    pub majorization: MajorizationCheck<T>,
}

impl<T: Real> QualityReport<T> {
    /// Assesses sign-normalized triplets against the reference SVD of `m`.
    ///
    /// `vqfne` supplies `F` when the bound source is [`BoundSource::Vqfne`].
    pub fn assess(
        m: &DenseMatrix<T>,
        triplets: &SingularTriplets<T>,
        source: BoundSource,
        vqfne: Option<T>,
    ) -> Result<Self> {
        let t = triplets.len();
        if t == 0 || t > m.rows().min(m.cols()) {
            return input(format!("rank {t} does not fit a {}x{} matrix", m.rows(), m.cols()));
        }
        let svd = classical_svd(m)?;
        let d = &svd.singular_values[..t];
        let sum_m: T = triplets.values.iter().map(|&x| x * x).sum();
        let mass = match (source, vqfne) {
            (BoundSource::Oracle, _) => d.iter().map(|&x| x * x).sum(),
            (BoundSource::Frobenius, _) => frobenius_norm(m).powi(2),
            (BoundSource::Vqfne, Some(f)) => f,
            (BoundSource::Vqfne, None) => return input("vqfne bound source needs a value"),
        };
        let bound = mass - sum_m;
        Ok(Self {
            rank: t,
            epsilon_d_exact: epsilon_d(d, &triplets.values)?,
            epsilon_v_exact: epsilon_v(m, &triplets.values, &triplets.lefts, &triplets.rights)?,
            bound_source: source,
            bound_common: bound,
            bound_d: bound,
            bound_v: bound + bound,
            vqfne_value: vqfne,
            majorization: majorization_check(m)?,
        })
    }

    pub fn epsilon_d_ok(&self) -> bool {
        self.epsilon_d_exact <= self.bound_d + T::lit(1e-8)
    }

    pub fn epsilon_v_ok(&self) -> bool {
        self.epsilon_v_exact <= self.bound_v + T::lit(1e-8)
    }

    /// Flat `key = value` lines.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let f = |x: T| format!("{:.16e}", x.as_f64());
        let _ = writeln!(s, "rank = {}", self.rank);
        let _ = writeln!(s, "epsilon_d_exact = {}", f(self.epsilon_d_exact));
        let _ = writeln!(s, "epsilon_v_exact = {}", f(self.epsilon_v_exact));
        let _ = writeln!(s, "bound_source = {}", self.bound_source.label());
        let _ = writeln!(s, "bound_common = {}", f(self.bound_common));
        let _ = writeln!(s, "bound_d = {}", f(self.bound_d));
        let _ = writeln!(s, "bound_v = {}", f(self.bound_v));
        let _ = writeln!(
            s,
            "vqfne_value = {}",
            self.vqfne_value.map_or_else(|| "none".to_string(), f)
        );
        let _ = writeln!(s, "epsilon_d_ok = {}", self.epsilon_d_ok());
        let _ = writeln!(s, "epsilon_v_ok = {}", self.epsilon_v_ok());
        let _ = writeln!(s, "majorization_ok = {}", self.majorization.ok);
        let _ = writeln!(s, "majorization_equality = {}", self.majorization.equality);
        let margins: Vec<String> = self.majorization.margins.iter().map(|&g| f(g)).collect();
        let _ = writeln!(s, "majorization_margins = {}", margins.join(","));
        s
    }
}

/// Outcome of a VQFNE run.
#[derive(Debug, Clone)]
pub struct VqfneResult<T: Real> {
    /// Exact `F` at the final parameters.
    pub value: T,
    pub alpha: Vec<T>,
    pub beta: Vec<T>,
    pub history: Vec<T>,
    pub converged: bool,
    pub iterations: usize,
}

struct FrobeniusMass<'a, T: Real> {
    problem: &'a VqsvdProblem<T>,
}

impl<T: Real> FrobeniusMass<'_, T> {
    fn elements(&self, alpha: &[T], beta: &[T], stream: u64) -> Vec<C<T>> {
        let p = self.problem;
        let (us, vs) = p.columns(alpha, beta);
        let exact = p.estimator().mode == EstimatorMode::Exact;
        us.iter()
            .zip(&vs)
            .enumerate()
            .map(|(j, (u, v))| {
                if exact {
                    inner(u, &p.matrix().matvec(v))
                } else if p.lcu().l1_norm() == T::zero() {
                    czero()
                } else {
                    estimate_element_complex(
                        p.lcu(),
                        Some(p.matrix()),
                        u,
                        v,
                        p.estimator(),
                        mix_seed(stream, j as u64),
                    )
                    .expect("validated problem")
                }
            })
            .collect()
    }

    fn value_at(&self, alpha: &[T], beta: &[T], stream: u64) -> T {
        self.elements(alpha, beta, stream)
            .iter()
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// `∂F/∂θ_s = Σ_j Re(conj(z_j) z_j(θ + π e_s))`.
    fn gradient_at(&self, alpha: &[T], beta: &[T], stream: u64) -> Vec<T> {
        let p = self.problem;
        let z = self.elements(alpha, beta, mix_seed(stream, 0));
        let contract = |shifted: &[C<T>]| -> T {
            z.iter().zip(shifted).map(|(a, b)| (a.conj() * b).re).sum()
        };
        if p.estimator().mode == EstimatorMode::Exact {
            let (us, vs) = p.columns(alpha, beta);
            let basis: Vec<Vec<C<T>>> = (0..p.rank())
                .map(|j| basis_vector(p.lcu().dim(), j))
                .collect();
            let mv: Vec<Vec<C<T>>> = vs.iter().map(|v| p.matrix().matvec(v)).collect();
            let mdu: Vec<Vec<C<T>>> = us.iter().map(|u| p.matrix().adjoint_matvec(u)).collect();
            let mut grad: Vec<T> = p
                .u_circuit()
                .shifted_overlaps(alpha, &basis, &mv)
                .iter()
                .map(|row| contract(row))
                .collect();
            for row in p.v_circuit().shifted_overlaps(beta, &basis, &mdu) {
                let conj: Vec<C<T>> = row.iter().map(|w| w.conj()).collect();
                grad.push(contract(&conj));
            }
            return grad;
        }
        let pi = T::PI();
        let mut grad = Vec::with_capacity(alpha.len() + beta.len());
        let mut a = alpha.to_vec();
        for l in 0..alpha.len() {
            a[l] += pi;
            grad.push(contract(&self.elements(&a, beta, mix_seed(stream, 1 + l as u64))));
            a[l] = alpha[l];
        }
        let mut b = beta.to_vec();
        for k in 0..beta.len() {
            b[k] += pi;
            let s = mix_seed(stream, 1 + (alpha.len() + k) as u64);
            grad.push(contract(&self.elements(alpha, &b, s)));
            b[k] = beta[k];
        }
        grad
    }
}

impl<T: Real> Objective<T> for FrobeniusMass<'_, T> {
    fn value_and_gradient(&mut self, params: &[T], iter: usize) -> (T, Vec<T>) {
        let (a, b) = params.split_at(self.problem.u_circuit().param_count());
        let value = self.value_at(a, b, mix_seed(iter as u64, 0));
        (value, self.gradient_at(a, b, mix_seed(iter as u64, 1)))
    }

    fn value(&mut self, params: &[T], iter: usize) -> T {
        let (a, b) = params.split_at(self.problem.u_circuit().param_count());
        self.value_at(a, b, mix_seed(iter as u64, 0))
    }
}

/// Maximizes `F(α, β) = Σ_{j≤T} |⟨u_j|M|v_j⟩|²` with the solver's Adam loop.
///
/// The global maximum is `Σ_{j≤T} d_j²`. `config.weights` is ignored.
pub fn vqfne_run<T: Real>(lcu: &LcuDecomposition<T>, config: &VqsvdConfig) -> Result<VqfneResult<T>> {
    let mut cfg = config.clone();
    cfg.weights = None;
    let problem = VqsvdProblem::from_config(lcu.clone(), &cfg)?;
    let settings = RunSettings::from(&cfg);
    let (a0, b0) = problem.initial_params(settings.seed);
    let split = a0.len();
    let mut init = a0;
    init.extend(b0);
    let ascent = AscentSettings {
        adam: AdamSettings {
            learning_rate: settings.learning_rate,
            ..AdamSettings::default()
        },
        max_iterations: settings.max_iterations,
        tolerance: settings.tolerance,
    };
    let mut objective = FrobeniusMass { problem: &problem };
    let out = maximize(&mut objective, init, &ascent, |_, _| {});
    let (alpha, beta) = out.params.split_at(split);
    let (us, vs) = problem.columns(alpha, beta);
    let value = us
        .iter()
        .zip(&vs)
        .map(|(u, v)| inner(u, &problem.matrix().matvec(v)).norm_sqr())
        .sum();
    Ok(VqfneResult {
        value,
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        history: out.history,
        converged: out.converged,
        iterations: out.iterations,
    })
}

/// Exact `F` and its parameter-shift gradient at `(alpha, beta)`, in `α`-then-`β` order.
pub fn vqfne_value_and_gradient<T: Real>(
    problem: &VqsvdProblem<T>,
    alpha: &[T],
    beta: &[T],
) -> Result<(T, Vec<T>)> {
    if alpha.len() != problem.u_circuit().param_count()
        || beta.len() != problem.v_circuit().param_count()
    {
        return input("parameter lengths do not match circuits");
    }
    let obj = FrobeniusMass { problem };
    Ok((obj.value_at(alpha, beta, 0), obj.gradient_at(alpha, beta, 0)))
}
