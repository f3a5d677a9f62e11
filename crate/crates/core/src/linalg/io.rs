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

//! Text matrix format.
//!
//! ```text
//! rows cols field        # field is `real` or `complex`
//! a00 a01 ...            # rows*cols tokens, row-major, any line layout
//! ```
//! Complex tokens are `re,im` without spaces. Writers emit 17 significant
//! digits so values round-trip exactly.

use std::path::Path;

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::c;

fn parse_err<T>(line: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        reason: reason.into(),
    })
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => parse_err(line, format!("non-finite value `{tok}`")),
        Err(_) => parse_err(line, format!("bad number `{tok}`")),
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix<f64>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((hline, header)) = lines.next() else {
        return parse_err(1, "empty matrix file");
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 {
        return parse_err(hline, "header must be `rows cols field`");
    }
    let dim = |tok: &str| -> Result<usize> {
        match tok.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => parse_err(hline, format!("bad dimension `{tok}`")),
        }
    };
    let (rows, cols) = (dim(head[0])?, dim(head[1])?);
    let complex = match head[2] {
        "real" => false,
        "complex" => true,
        other => return parse_err(hline, format!("unknown field `{other}`")),
    };

    let mut entries = Vec::with_capacity(rows * cols);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        for tok in line.split_whitespace() {
            if entries.len() == rows * cols {
                return parse_err(ln, "more entries than rows*cols");
            }
            let z = if complex {
                let Some((re, im)) = tok.split_once(',') else {
                    return parse_err(ln, format!("complex token `{tok}` must be `re,im`"));
                };
                c(parse_f64(re, ln)?, parse_f64(im, ln)?)
            } else {
                c(parse_f64(tok, ln)?, 0.0)
            };
            entries.push(z);
        }
    }
    if entries.len() != rows * cols {
        return parse_err(
            last_line,
            format!("expected {} entries, found {}", rows * cols, entries.len()),
        );
    }
    DenseMatrix::new(rows, cols, entries)
}

/// Serializes with `real` field when every imaginary part is zero.
pub fn write_matrix(m: &DenseMatrix<f64>) -> String {
    let complex = !m.is_real();
    let mut out = format!(
        "{} {} {}\n",
        m.rows(),
        m.cols(),
        if complex { "complex" } else { "real" }
    );
    for i in 0..m.rows() {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| {
                if complex {
                    format!("{:.16e},{:.16e}", z.re, z.im)
                } else {
                    format!("{:.16e}", z.re)
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<DenseMatrix<f64>> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &DenseMatrix<f64>) -> Result<()> {
    std::fs::write(path, write_matrix(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex() {
        let m = parse_matrix("2 2 real\n1 2\n3 4\n").unwrap();
        assert_eq!(m[(1, 0)], c(3.0, 0.0));
        let m = parse_matrix("# comment\n1 2 complex\n1,2 -0.5,3e-1").unwrap();
        assert_eq!(m[(0, 1)], c(-0.5, 0.3));
    }

    #[test]
    fn reports_line_numbers() {
        match parse_matrix("2 2 real\n1 2\n3 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix("2 2 real\n1 2 3\n").is_err());
        assert!(parse_matrix("2 2 real\n1 2 3 4 5\n").is_err());
        assert!(parse_matrix("2 2 reel\n1 2 3 4\n").is_err());
        assert!(parse_matrix("1 1 complex\n1\n").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn writer_roundtrips_bits() {
        let m = DenseMatrix::new(
            1,
            3,
            vec![c(0.1, 0.0), c(1.0 / 3.0, -2.0e-300), c(-7.0, 1e10)],
        )
        .unwrap();
        let text = write_matrix(&m);
        assert!(text.starts_with("1 3 complex\n"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
        let r = DenseMatrix::from_real(1, 2, &[0.1, 2.0 / 3.0]).unwrap();
        assert_eq!(parse_matrix(&write_matrix(&r)).unwrap(), r);
    }
}
