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

//! Linear combinations of unitaries: `M = Σ_k c_k A_k`.

mod io;
mod pauli;
mod sampling;

pub use io::{parse_lcu, read_lcu_file, write_lcu, write_lcu_file};
pub use pauli::{Pauli, PauliString};
pub use sampling::{importance_sample_terms, sample_count};

use crate::error::{dim, input, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{czero, Real, C};

/// Coefficients below this modulus are dropped by [`pauli_decompose`].
pub const PRUNE_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub enum Unitary<T: Real> {
    Pauli(PauliString),
    /// Cyclic shift `S^k` on a `dim`-dimensional space, `(S^k v)_i = v_{(i+k) mod dim}`.
    Shift { dim: usize, k: usize },
    Dense(DenseMatrix<T>),
}

impl<T: Real> Unitary<T> {
    pub fn dim(&self) -> usize {
        match self {
            Unitary::Pauli(p) => p.dim(),
            Unitary::Shift { dim, .. } => *dim,
            Unitary::Dense(m) => m.rows(),
        }
    }

    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        match self {
            Unitary::Pauli(p) => p.apply(v),
            Unitary::Shift { dim, k } => {
                assert_eq!(v.len(), *dim, "shift dimension");
                (0..*dim).map(|i| v[(i + k) % dim]).collect()
            }
            Unitary::Dense(m) => m.matvec(v),
        }
    }

    pub fn to_matrix(&self) -> DenseMatrix<T> {
        match self {
            Unitary::Pauli(p) => p.to_matrix(),
            Unitary::Shift { dim, k } => {
                DenseMatrix::from_fn(*dim, *dim, |i, j| {
                    if j == (i + k) % dim {
                        crate::scalar::cone()
                    } else {
                        czero()
                    }
                })
            }
            Unitary::Dense(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcuTerm<T: Real> {
    pub coefficient: C<T>,
    pub unitary: Unitary<T>,
}

/// `Σ_k c_k A_k` over a common dimension, with its coefficient ℓ1 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct LcuDecomposition<T: Real> {
    dim: usize,
    terms: Vec<LcuTerm<T>>,
    l1_norm: T,
}

impl<T: Real> LcuDecomposition<T> {
    pub fn new(dim: usize, terms: Vec<LcuTerm<T>>) -> Result<Self> {
        if dim == 0 {
            return input("LCU dimension must be positive");
        }
        for (k, t) in terms.iter().enumerate() {
            if t.unitary.dim() != dim {
                return dim_err(k, t.unitary.dim(), dim);
            }
            if let Unitary::Dense(m) = &t.unitary {
                if !m.is_square() {
                    return crate::error::dim(format!("term {k} is not square"));
                }
            }
            if !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()) {
                return input(format!("term {k} has a non-finite coefficient"));
            }
        }
        let l1_norm = terms.iter().map(|t| t.coefficient.norm()).sum();
        Ok(Self {
            dim,
            terms,
            l1_norm,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `log2(dim)` when the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn terms(&self) -> &[LcuTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn l1_norm(&self) -> T {
        self.l1_norm
    }

    /// `M v = Σ_k c_k A_k v`, term by term.
    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        let mut out = vec![czero(); self.dim];
        for t in &self.terms {
            for (o, x) in out.iter_mut().zip(t.unitary.apply(v)) {
                *o += t.coefficient * x;
            }
        }
        out
    }

    /// Same terms with every coefficient multiplied by `s`.
    pub fn scaled(&self, s: T) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| LcuTerm {
                coefficient: t.coefficient * s,
                unitary: t.unitary.clone(),
            })
            .collect();
        Self::new(self.dim, terms).expect("scaling keeps validity")
    }

    pub fn cast<S: Real>(&self) -> LcuDecomposition<S> {
        let terms = self
            .terms
            .iter()
            .map(|t| LcuTerm {
                coefficient: crate::scalar::cast_complex(t.coefficient),
                unitary: match &t.unitary {
                    Unitary::Pauli(p) => Unitary::Pauli(p.clone()),
                    Unitary::Shift { dim, k } => Unitary::Shift { dim: *dim, k: *k },
                    Unitary::Dense(m) => Unitary::Dense(m.cast()),
                },
            })
            .collect();
        LcuDecomposition::new(self.dim, terms).expect("cast keeps validity")
    }
}

fn dim_err<T>(k: usize, got: usize, want: usize) -> Result<T> {
    dim(format!("term {k} has dimension {got}, expected {want}"))
}

/// `c_P = Tr(P M) / 2^n` over all Pauli strings; tiny coefficients dropped.
pub fn pauli_decompose<T: Real>(m: &DenseMatrix<T>) -> Result<LcuDecomposition<T>> {
    if !m.is_square() || !m.rows().is_power_of_two() || m.rows() < 2 {
        return input(format!(
            "Pauli decomposition needs a 2^n x 2^n matrix with n >= 1, got {}x{}",
            m.rows(),
            m.cols()
        ));
    }
    let n = m.rows();
    let n_qubits = n.trailing_zeros() as usize;
    let inv = T::one() / T::lit(n as f64);
    let cut = T::lit(PRUNE_THRESHOLD);
    let mut terms = Vec::new();
    for p in PauliString::enumerate(n_qubits) {
        // Tr(P M) = Σ_k P[k⊕x, k] M[k, k⊕x]
        let tr = (0..n).fold(czero::<T>(), |acc, k| {
            let (row, ph) = p.action::<T>(k);
            acc + ph * m[(k, row)]
        });
        let coefficient = tr * inv;
        if coefficient.norm() >= cut {
            terms.push(LcuTerm {
                coefficient,
                unitary: Unitary::Pauli(p),
            });
        }
    }
    LcuDecomposition::new(n, terms)
}

/// Dense `Σ_k c_k A_k`; an empty decomposition gives the zero matrix.
pub fn lcu_reconstruct<T: Real>(lcu: &LcuDecomposition<T>) -> DenseMatrix<T> {
    let n = lcu.dim;
    let mut out = DenseMatrix::zeros(n, n);
    for t in &lcu.terms {
        match &t.unitary {
            Unitary::Pauli(p) => {
                for col in 0..n {
                    let (row, ph) = p.action::<T>(col);
                    out[(row, col)] += t.coefficient * ph;
                }
            }
            Unitary::Shift { k, .. } => {
                for i in 0..n {
                    out[(i, (i + k) % n)] += t.coefficient;
                }
            }
            Unitary::Dense(m) => out.axpy(t.coefficient, m),
        }
    }
    out
}

/// Circulant matrix with first row `c` as `Σ_k c_k S^k`.
pub fn circulant_decompose<T: Real>(coeffs: &[C<T>]) -> Result<LcuDecomposition<T>> {
    if coeffs.is_empty() {
        return input("circulant needs at least one coefficient");
    }
    let d = coeffs.len();
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, &coefficient)| LcuTerm {
            coefficient,
            unitary: Unitary::Shift { dim: d, k },
        })
        .collect();
    LcuDecomposition::new(d, terms)
}

/// First row of `m` if `m` is circulant within `tol`.
pub fn circulant_first_row<T: Real>(m: &DenseMatrix<T>, tol: T) -> Result<Vec<C<T>>> {
    if !m.is_square() {
        return input("circulant matrices are square");
    }
    let n = m.rows();
    let row = m.row(0).to_vec();
    for i in 0..n {
        for j in 0..n {
            if (m[(i, j)] - row[(j + n - i) % n]).norm() > tol {
                return input(format!("matrix is not circulant at entry ({i},{j})"));
            }
        }
    }
    Ok(row)
}
