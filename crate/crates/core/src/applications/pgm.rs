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

//! Grayscale PGM images (`P2` and `P5`, maxval up to 255).

use std::path::Path;

use crate::error::{dim, input, Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::creal;

/// Row-major pixels in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return dim(format!("{} pixels for a {width}x{height} image", pixels.len()));
        }
        if pixels.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return input("pixels must lie in [0, 1]");
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }

    pub fn to_matrix(&self) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(self.height, self.width, |i, j| creal(self.get(i, j)))
    }

    /// Real parts clamped to `[0, 1]`.
    pub fn from_matrix(m: &DenseMatrix<f64>) -> Self {
        let pixels = m.entries().iter().map(|z| z.re.clamp(0.0, 1.0)).collect();
        Self {
            width: m.cols(),
            height: m.rows(),
            pixels,
        }
    }

    /// Zero-padded to `rows × cols`.
    pub fn padded(&self, rows: usize, cols: usize) -> Self {
        let mut pixels = vec![0.0; rows * cols];
        for i in 0..self.height.min(rows) {
            for j in 0..self.width.min(cols) {
                pixels[i * cols + j] = self.get(i, j);
            }
        }
        Self {
            width: cols,
            height: rows,
            pixels,
        }
    }

    pub fn cropped(&self, rows: usize, cols: usize) -> Self {
        self.padded(rows.min(self.height), cols.min(self.width))
    }

    fn levels(&self) -> impl Iterator<Item = u8> + '_ {
        self.pixels.iter().map(|p| (p * 255.0).round() as u8)
    }
}

struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn line(&self) -> usize {
        1 + self.data[..self.pos].iter().filter(|&&b| b == b'\n').count()
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line(),
            reason: reason.into(),
        }
    }

    fn skip_space(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn word(&mut self, what: &str) -> Result<&'a str> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("missing {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos]).map_err(|_| self.err(format!("{what} is not ASCII")))
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let w = self.word(what)?;
        w.parse().map_err(|_| self.err(format!("bad {what} `{w}`")))
    }
}

pub fn parse_pgm(data: &[u8]) -> Result<GrayImage> {
    let mut t = Tokens { data, pos: 0 };
    let magic = t.word("magic number")?;
    let binary = match magic {
        "P2" => false,
        "P5" => true,
        other => return Err(t.err(format!("unsupported magic `{other}` (expected P2 or P5)"))),
    };
    let width = t.number("width")?;
    let height = t.number("height")?;
    let maxval = t.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(t.err("image has no pixels"));
    }
    if maxval == 0 || maxval > 255 {
        return Err(t.err(format!("maxval {maxval} outside 1..=255")));
    }
    let count = width * height;
    let raw: Vec<usize> = if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = t.pos + 1;
        if start + count > data.len() {
            return Err(t.err(format!("raster holds {} of {count} bytes", data.len().saturating_sub(start))));
        }
        data[start..start + count].iter().map(|&b| b as usize).collect()
    } else {
        (0..count).map(|_| t.number("pixel")).collect::<Result<_>>()?
    };
    if let Some(p) = raw.iter().find(|&&p| p > maxval) {
        return Err(t.err(format!("pixel {p} exceeds maxval {maxval}")));
    }
    let pixels = raw.into_iter().map(|p| p as f64 / maxval as f64).collect();
    GrayImage::new(width, height, pixels)
}

/// `P2` text, maxval 255, one image row per line.
pub fn write_pgm_ascii(image: &GrayImage) -> Vec<u8> {
    let mut s = format!("P2\n{} {}\n255\n", image.width, image.height);
    let levels: Vec<u8> = image.levels().collect();
    for row in levels.chunks(image.width) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s.into_bytes()
}

/// `P5` binary, maxval 255.
pub fn write_pgm_binary(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend(image.levels());
    out
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage> {
    parse_pgm(&std::fs::read(path)?)
}

pub fn write_pgm_file(path: impl AsRef<Path>, image: &GrayImage, binary: bool) -> Result<()> {
    let bytes = if binary {
        write_pgm_binary(image)
    } else {
        write_pgm_ascii(image)
    };
    std::fs::write(path, bytes)?;
    Ok(())
}
