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

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use vqsvd_core::applications::{
    benchmark_ansatz, compress_image, polar_via_vqsvd_matrix, read_pgm_file, recommend,
    write_pgm_ascii, write_pgm_binary, BenchSettings, GrayImage,
};
use vqsvd_core::circuit::RotationMode;
use vqsvd_core::lcu::{
    circulant_decompose, circulant_first_row, pauli_decompose, read_lcu_file, write_lcu,
};
use vqsvd_core::linalg::{read_matrix_file, write_matrix};
use vqsvd_core::solver::{convergence_csv, result_at, run, VqsvdConfig, VqsvdProblem};
use vqsvd_core::verification::{vqfne_run, BoundSource, QualityReport};
use vqsvd_core::{Lcu, Matrix};

use crate::config::{self, Overrides, SharedFlags, SCHEMA_VERSION};

/// Writes through a sibling temporary file so readers never see partial output.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    ));
    std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn out_path(flags: &SharedFlags, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(&flags.out_dir)
        .with_context(|| format!("creating {}", flags.out_dir.display()))?;
    Ok(flags.out_dir.join(name))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    read_matrix_file(path).with_context(|| format!("{}", path.display()))
}

/// Side used for circuits: next power of two, at least 4.
fn circuit_side(rows: usize, cols: usize) -> usize {
    rows.max(cols).next_power_of_two().max(4)
}

fn pad_for_circuits(m: &Matrix) -> Matrix {
    let side = circuit_side(m.rows(), m.cols());
    m.padded(side, side)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: String,
    pub input: String,
    pub input_sha256: String,
    pub config_hash: String,
    pub seed: u64,
    pub estimator_mode: String,
}

impl Provenance {
    fn new(command: &str, input: &Path, config: &VqsvdConfig) -> Result<Self> {
        let bytes = std::fs::read(input).with_context(|| format!("{}", input.display()))?;
        Ok(Self {
            tool: "vqsvd".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input: file_name(input),
            input_sha256: config::hash_bytes(&bytes),
            config_hash: config::hash_of(config)?,
            seed: config.seed,
            estimator_mode: serde_json::to_value(config.estimator.mode)?
                .as_str()
                .unwrap_or_default()
                .to_string(),
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Dimensions {
    pub rows: usize,
    pub cols: usize,
    pub padded: usize,
}

/// `result.json` written by `svd` and read back by `verify`.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResultFile {
    pub provenance: Provenance,
    pub config: VqsvdConfig,
    pub dimensions: Dimensions,
    pub m_values: Vec<f64>,
    pub basis_order: Vec<usize>,
    pub negative_m: bool,
    pub singular_values: Vec<f64>,
    pub final_loss: f64,
    pub converged: bool,
    pub iterations: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

pub fn decompose(flags: &SharedFlags, matrix: &Path, circulant: bool) -> Result<()> {
    let m = read_matrix(matrix)?;
    let lcu = if circulant {
        circulant_decompose(&circulant_first_row(&m, 1e-12)?)?
    } else {
        let side = m.rows().max(m.cols()).next_power_of_two().max(2);
        pauli_decompose(&m.padded(side, side))?
    };
    let stem = matrix
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "matrix".into());
    let path = out_path(flags, &format!("{stem}.lcu"))?;
    write_atomic(&path, write_lcu(&lcu)?.as_bytes())?;
    println!("terms = {}", lcu.len());
    println!("l1_norm = {:.16e}", lcu.l1_norm());
    println!("output = {}", path.display());
    Ok(())
}

fn load_problem_input(input: &Path) -> Result<(Lcu, Dimensions)> {
    if input.extension().is_some_and(|e| e == "lcu") {
        let lcu = read_lcu_file(input).with_context(|| format!("{}", input.display()))?;
        let n = lcu.dim();
        if lcu.n_qubits().is_none() || n < 4 {
            bail!("{}: LCU dimension {n} must be a power of two of at least 4", input.display());
        }
        Ok((lcu, Dimensions { rows: n, cols: n, padded: n }))
    } else {
        let m = read_matrix(input)?;
        let padded = pad_for_circuits(&m);
        let dims = Dimensions {
            rows: m.rows(),
            cols: m.cols(),
            padded: padded.rows(),
        };
        Ok((pauli_decompose(&padded)?, dims))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SvdArgs {
    pub over: Overrides,
}

pub fn svd(flags: &SharedFlags, input: &Path, args: &SvdArgs) -> Result<()> {
    let file = config::load_file(flags)?;
    let (lcu, dims) = load_problem_input(input)?;
    let cfg = config::solver_config(flags, &file, &args.over, dims.rows.min(dims.cols))?;
    let result = run(&lcu, &cfg)?;
    let out = ResultFile {
        provenance: Provenance::new("svd", input, &cfg)?,
        dimensions: dims,
        m_values: result.m_values.clone(),
        basis_order: result.basis_order.clone(),
        negative_m: result.has_negative_m(),
        singular_values: result.triplets().values,
        final_loss: result.final_loss(),
        converged: result.converged,
        iterations: result.iterations,
        alpha: result.alpha.clone(),
        beta: result.beta.clone(),
        config: cfg,
    };
    let json = serde_json::to_string_pretty(&out)? + "\n";
    write_atomic(&out_path(flags, "result.json")?, json.as_bytes())?;
    let csv_path = match &flags.log_csv {
        Some(p) => p.clone(),
        None => out_path(flags, "convergence.csv")?,
    };
    write_atomic(&csv_path, convergence_csv(&result).as_bytes())?;
    for (j, m) in out.m_values.iter().enumerate() {
        println!("m_{} = {m:.16e}", j + 1);
    }
    println!("converged = {}", out.converged);
    println!("iterations = {}", out.iterations);
    Ok(())
}

pub fn verify(flags: &SharedFlags, matrix: &Path, result: &Path, source: BoundSource) -> Result<()> {
    let text = std::fs::read_to_string(result).with_context(|| format!("{}", result.display()))?;
    let saved: ResultFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", result.display()))?;
    if saved.provenance.schema_version != SCHEMA_VERSION {
        bail!("{}: unsupported schema_version {}", result.display(), saved.provenance.schema_version);
    }
    let m = read_matrix(matrix)?;
    let padded = pad_for_circuits(&m);
    if padded.rows() != saved.dimensions.padded {
        bail!(
            "{} pads to {} but the result was trained at {}",
            matrix.display(),
            padded.rows(),
            saved.dimensions.padded
        );
    }
    let lcu = pauli_decompose(&padded)?;
    let problem = VqsvdProblem::from_config(lcu.clone(), &saved.config)?;
    let fixed = result_at(&problem, saved.alpha.clone(), saved.beta.clone())?;
    let vqfne = match source {
        BoundSource::Vqfne => Some(vqfne_run(&lcu, &saved.config)?.value),
        _ => None,
    };
    let report = QualityReport::assess(&padded, &fixed.triplets(), source, vqfne)?;
    let text = report.to_key_value();
    write_atomic(&out_path(flags, "quality.txt")?, text.as_bytes())?;
    print!("{text}");
    Ok(())
}

pub fn compress(
    flags: &SharedFlags,
    image_path: &Path,
    over: &Overrides,
    binary: bool,
) -> Result<()> {
    let file = config::load_file(flags)?;
    let image = read_pgm_file(image_path).with_context(|| format!("{}", image_path.display()))?;
    let side = circuit_side(image.height(), image.width());
    let padded = image.padded(side, side);
    let cfg = config::solver_config(flags, &file, over, 5)?;
    let (report, rebuilt) = compress_image(&padded, &cfg)?;
    let out: GrayImage = rebuilt.cropped(image.height(), image.width());
    let bytes = if binary {
        write_pgm_binary(&out)
    } else {
        write_pgm_ascii(&out)
    };
    write_atomic(&out_path(flags, "compressed.pgm")?, &bytes)?;
    let mut text = report.to_key_value();
    text.push_str(&format!("width = {}\nheight = {}\n", image.width(), image.height()));
    write_atomic(&out_path(flags, "compression.txt")?, text.as_bytes())?;
    print!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct RecommendationFile {
    provenance: Provenance,
    row: usize,
    items: usize,
    coefficients: Vec<[f64; 2]>,
    normalization: f64,
    probabilities: Vec<f64>,
    samples: Vec<usize>,
}

pub fn recommend_cmd(
    flags: &SharedFlags,
    matrix: &Path,
    row: usize,
    samples: usize,
    over: &Overrides,
) -> Result<()> {
    let file = config::load_file(flags)?;
    let m = read_matrix(matrix)?;
    if row >= m.rows() {
        bail!("row {row} out of range for {} rows", m.rows());
    }
    let padded = pad_for_circuits(&m);
    let cfg = config::solver_config(flags, &file, over, m.rows().min(m.cols()).min(3))?;
    let out = recommend(&padded, &cfg, row, samples)?;
    let body = RecommendationFile {
        provenance: Provenance::new("recommend", matrix, &cfg)?,
        row,
        items: m.cols(),
        coefficients: out.coefficients.iter().map(|z| [z.re, z.im]).collect(),
        normalization: out.normalization,
        probabilities: out.probabilities,
        samples: out.samples,
    };
    let json = serde_json::to_string_pretty(&body)? + "\n";
    write_atomic(&out_path(flags, "recommendation.json")?, json.as_bytes())?;
    for (i, p) in body.probabilities.iter().take(m.cols()).enumerate() {
        println!("item_{i} = {p:.16e}");
    }
    Ok(())
}

pub fn polar(flags: &SharedFlags, matrix: &Path, over: &Overrides) -> Result<()> {
    let mut file = config::load_file(flags)?;
    // polar factors need tight convergence; loosen only on request
    file.tolerance = file.tolerance.or(Some(1e-12));
    let m = read_matrix(matrix)?;
    if !m.is_square() {
        bail!("polar needs a square matrix, got {}x{}", m.rows(), m.cols());
    }
    let mut over = over.clone();
    over.max_iterations = over.max_iterations.or(file.max_iterations).or(Some(2000));
    let cfg = config::solver_config(flags, &file, &over, m.rows())?;
    let out = polar_via_vqsvd_matrix(&m, &cfg)?;
    write_atomic(&out_path(flags, "polar_w.txt")?, write_matrix(&out.w).as_bytes())?;
    write_atomic(&out_path(flags, "polar_p.txt")?, write_matrix(&out.p).as_bytes())?;
    let text = format!(
        "product_residual = {:.16e}\nrelative_product_residual = {:.16e}\nunitarity_residual = {:.16e}\nmin_eigenvalue_p = {:.16e}\niterations = {}\nconverged = {}\n",
        out.product_residual,
        out.relative_product_residual,
        out.unitarity_residual,
        out.min_eigenvalue_p,
        out.iterations,
        out.converged
    );
    write_atomic(&out_path(flags, "polar.txt")?, text.as_bytes())?;
    print!("{text}");
    Ok(())
}

pub fn bench(flags: &SharedFlags, matrix: &Path, mode: RotationMode, max_iterations: Option<usize>) -> Result<()> {
    let file = config::load_file(flags)?;
    let seed = config::seed(flags, &file)?;
    let m = pad_for_circuits(&read_matrix(matrix)?);
    let mut settings = BenchSettings::new(mode, seed);
    if let Some(it) = max_iterations.or(file.max_iterations) {
        settings.max_iterations = it;
    }
    if let Some(lr) = file.learning_rate {
        settings.learning_rate = lr;
    }
    let table = benchmark_ansatz(&m, &settings)?;
    write_atomic(&out_path(flags, "bench_distances.csv")?, table.distances_csv().as_bytes())?;
    let summary = table.summary_csv();
    write_atomic(&out_path(flags, "bench_summary.csv")?, summary.as_bytes())?;
    print!("{summary}");
    Ok(())
}
