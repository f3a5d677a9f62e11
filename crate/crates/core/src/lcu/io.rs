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

//! LCU text format.
//!
//! ```text
//! n_qubits K [dim]
//! re,im LABEL        # Pauli string, e.g. 0.5,0 XZ
//! re,im PERM k       # cyclic shift S^k
//! ```
//! The optional `dim` is written only when the dimension is not `2^n_qubits`
//! (cyclic shifts of arbitrary size); `n_qubits` is then 0.

use std::path::Path;

use super::{LcuDecomposition, LcuTerm, Unitary};
use crate::error::{input, Error, Result};
use crate::scalar::c;

fn perr<T>(line: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        reason: reason.into(),
    })
}

pub fn write_lcu(lcu: &LcuDecomposition<f64>) -> Result<String> {
    let mut out = match lcu.n_qubits() {
        Some(n) => format!("{} {}\n", n, lcu.len()),
        None => format!("0 {} {}\n", lcu.len(), lcu.dim()),
    };
    for t in lcu.terms() {
        let coeff = format!("{:.16e},{:.16e}", t.coefficient.re, t.coefficient.im);
        match &t.unitary {
            Unitary::Pauli(p) => out.push_str(&format!("{coeff} {p}\n")),
            Unitary::Shift { k, .. } => out.push_str(&format!("{coeff} PERM {k}\n")),
            Unitary::Dense(_) => {
                return input("dense unitaries cannot be written to an LCU file");
            }
        }
    }
    Ok(out)
}

pub fn parse_lcu(text: &str) -> Result<LcuDecomposition<f64>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return perr(1, "empty LCU file");
    };
    let head: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| perr(hl, "header must be `n_qubits K [dim]`"))?;
    let (dim, count) = match head.as_slice() {
        [n, k] if *n >= 1 && *n < 31 => (1usize << n, *k),
        [_, k, d] if *d >= 1 => (*d, *k),
        _ => return perr(hl, "header must be `n_qubits K [dim]` with n_qubits >= 1"),
    };

    let mut terms = Vec::with_capacity(count);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some((re, im)) = toks.first().and_then(|t| t.split_once(',')) else {
            return perr(ln, "term must start with `re,im`");
        };
        let num = |s: &str| match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => perr(ln, format!("bad coefficient `{s}`")),
        };
        let coefficient = c(num(re)?, num(im)?);
        let unitary = match toks.as_slice() {
            [_, "PERM", k] => match k.parse::<usize>() {
                Ok(k) if k < dim => Unitary::Shift { dim, k },
                _ => return perr(ln, format!("bad shift `{k}` for dimension {dim}")),
            },
            [_, label] => {
                let p = label
                    .parse()
                    .or_else(|e: Error| perr(ln, e.to_string()))?;
                Unitary::Pauli(p)
            }
            _ => return perr(ln, "expected `re,im LABEL` or `re,im PERM k`"),
        };
        terms.push(LcuTerm {
            coefficient,
            unitary,
        });
    }
    if terms.len() != count {
        return perr(hl, format!("header announces {count} terms, found {}", terms.len()));
    }
    LcuDecomposition::new(dim, terms)
}

pub fn read_lcu_file(path: impl AsRef<Path>) -> Result<LcuDecomposition<f64>> {
    parse_lcu(&std::fs::read_to_string(path)?)
}

pub fn write_lcu_file(path: impl AsRef<Path>, lcu: &LcuDecomposition<f64>) -> Result<()> {
    std::fs::write(path, write_lcu(lcu)?)?;
    Ok(())
}
