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

//! Gradient-ascent driver shared by the weighted loss and the Frobenius
//! mass objective.

use super::adam::{Adam, AdamSettings};
use crate::scalar::Real;

/// Sliding window for the `|L_t − L_{t−w}| < ε` stopping rule.
pub const CONVERGENCE_WINDOW: usize = 10;

#[derive(Debug, Clone, Copy)]
pub struct AscentSettings {
    pub adam: AdamSettings,
    pub max_iterations: usize,
    pub tolerance: f64,
}

pub struct AscentTrace<T: Real> {
    pub params: Vec<T>,
    /// Objective at each iterate, plus one final entry at the returned params.
    pub history: Vec<T>,
    pub converged: bool,
    pub iterations: usize,
}

/// Objective evaluation: value and gradient at `params` for iteration `iter`.
pub trait Objective<T: Real> {
    fn value_and_gradient(&mut self, params: &[T], iter: usize) -> (T, Vec<T>);
    fn value(&mut self, params: &[T], iter: usize) -> T;
}

/// Maximizes by running Adam on the negated objective.
pub fn maximize<T: Real, O: Objective<T>>(
    objective: &mut O,
    init: Vec<T>,
    settings: &AscentSettings,
    mut on_iterate: impl FnMut(usize, &[T]),
) -> AscentTrace<T> {
    let mut params = init;
    let mut adam = Adam::new(settings.adam, params.len());
    let mut history: Vec<T> = Vec::with_capacity(settings.max_iterations + 1);
    let tol = T::lit(settings.tolerance);
    let mut converged = false;
    let mut iterations = 0;

    while iterations < settings.max_iterations {
        on_iterate(iterations, &params);
        let (value, grad) = objective.value_and_gradient(&params, iterations);
        history.push(value);
        iterations += 1;

        // exactly stationary (e.g. zero matrix): nothing left to do
        if grad.iter().all(|g| g.abs() <= T::lit(1e-14)) {
            converged = true;
            break;
        }
        let t = history.len() - 1;
        if t >= CONVERGENCE_WINDOW && (history[t] - history[t - CONVERGENCE_WINDOW]).abs() < tol {
            converged = true;
            break;
        }
        let neg: Vec<T> = grad.iter().map(|&g| -g).collect();
        adam.step(&mut params, &neg);
    }
    let final_value = objective.value(&params, iterations);
    history.push(final_value);
    AscentTrace {
        params,
        history,
        converged,
        iterations,
    }
}
