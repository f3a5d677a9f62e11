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

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamSettings {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamSettings {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Adam minimizer state for a flat parameter vector.
#[derive(Debug, Clone)]
pub struct Adam<T: Real> {
    lr: T,
    b1: T,
    b2: T,
    eps: T,
    b1t: T,
    b2t: T,
    m: Vec<T>,
    v: Vec<T>,
}

impl<T: Real> Adam<T> {
    pub fn new(settings: AdamSettings, len: usize) -> Self {
        Self {
            lr: T::lit(settings.learning_rate),
            b1: T::lit(settings.beta1),
            b2: T::lit(settings.beta2),
            eps: T::lit(settings.epsilon),
            b1t: T::one(),
            b2t: T::one(),
            m: vec![T::zero(); len],
            v: vec![T::zero(); len],
        }
    }

    /// One descent step `params -= lr · m̂ / (√v̂ + ε)`.
    pub fn step(&mut self, params: &mut [T], grad: &[T]) {
        assert_eq!(params.len(), self.m.len());
        assert_eq!(grad.len(), self.m.len());
        self.b1t *= self.b1;
        self.b2t *= self.b2;
        let one = T::one();
        for i in 0..params.len() {
            let g = grad[i];
            self.m[i] = self.b1 * self.m[i] + (one - self.b1) * g;
            self.v[i] = self.b2 * self.v[i] + (one - self.b2) * g * g;
            let m_hat = self.m[i] / (one - self.b1t);
            let v_hat = self.v[i] / (one - self.b2t);
            params[i] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_moves_by_learning_rate() {
        let mut adam = Adam::<f64>::new(AdamSettings::default(), 2);
        let mut p = vec![1.0, -1.0];
        adam.step(&mut p, &[3.0, -0.001]);
        // bias correction makes the first step ±lr (up to ε)
        assert!((p[0] - 0.95).abs() < 1e-6);
        assert!((p[1] + 0.95).abs() < 1e-4);
    }

    #[test]
    fn minimizes_a_quadratic() {
        let mut adam = Adam::<f64>::new(
            AdamSettings {
                learning_rate: 0.1,
                ..AdamSettings::default()
            },
            2,
        );
        let mut p = vec![2.0, -3.0];
        for _ in 0..2000 {
            let g = vec![2.0 * (p[0] - 0.5), 4.0 * (p[1] + 1.0)];
            adam.step(&mut p, &g);
        }
        assert!((p[0] - 0.5).abs() < 1e-3 && (p[1] + 1.0).abs() < 1e-3);
    }
}
