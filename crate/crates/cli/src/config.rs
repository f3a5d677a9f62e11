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

//! Run configuration: JSON file values overridden by command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use vqsvd_core::circuit::{AnsatzKind, AnsatzSpec, RotationMode};
use vqsvd_core::estimator::{EstimatorConfig, EstimatorMode};
use vqsvd_core::solver::VqsvdConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Training depth and iteration budget used when neither file nor flags set them.
pub const DEFAULT_DEPTH: usize = 20;
pub const DEFAULT_ITERATIONS: usize = 200;

/// Contents of a `--config` file. Every field except the schema version is optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub rank: Option<usize>,
    pub weights: Option<Vec<f64>>,
    pub ansatz: Option<AnsatzSpec>,
    pub v_ansatz: Option<AnsatzSpec>,
    pub max_iterations: Option<usize>,
    pub tolerance: Option<f64>,
    pub learning_rate: Option<f64>,
    pub estimator: Option<EstimatorConfig>,
    pub record_m_trace: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: FileConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        if cfg.schema_version != SCHEMA_VERSION {
            bail!(
                "config {} has schema_version {}, expected {SCHEMA_VERSION}",
                path.display(),
                cfg.schema_version
            );
        }
        Ok(cfg)
    }
}

/// Flags shared by every command.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct SharedFlags {
    /// JSON run configuration
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Seed for parameter initialization and estimator draws
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory receiving all outputs
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: std::path::PathBuf,
    /// Matrix-element estimator
    #[arg(long, global = true, value_enum)]
    pub estimator: Option<EstimatorArg>,
    /// Shots per term (shots) or sampled terms per element (sampled)
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Convergence CSV path for training commands
    #[arg(long, global = true)]
    pub log_csv: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EstimatorArg {
    Exact,
    Shots,
    Sampled,
}

/// Per-command solver overrides.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub rank: Option<usize>,
    pub depth: Option<usize>,
    pub ansatz: Option<AnsatzKind>,
    pub mode: Option<RotationMode>,
    pub max_iterations: Option<usize>,
}

pub fn load_file(flags: &SharedFlags) -> Result<FileConfig> {
    match &flags.config {
        Some(p) => FileConfig::load(p),
        None => Ok(FileConfig {
            schema_version: SCHEMA_VERSION,
            ..FileConfig::default()
        }),
    }
}

pub fn seed(flags: &SharedFlags, file: &FileConfig) -> Result<u64> {
    flags
        .seed
        .or(file.seed)
        .context("a seed is required (pass --seed or set `seed` in the config)")
}

/// Merges defaults, file values and flags, in increasing priority.
pub fn solver_config(
    flags: &SharedFlags,
    file: &FileConfig,
    over: &Overrides,
    default_rank: usize,
) -> Result<VqsvdConfig> {
    let seed = seed(flags, file)?;
    let mut u = file
        .ansatz
        .unwrap_or_else(|| AnsatzSpec::hardware_efficient(DEFAULT_DEPTH, RotationMode::Real));
    if let Some(k) = over.ansatz {
        u.kind = k;
    }
    if let Some(d) = over.depth {
        u.blocks = d;
    }
    if let Some(m) = over.mode {
        u.mode = m;
    }
    let v = match file.v_ansatz {
        Some(v) if over.depth.is_none() && over.ansatz.is_none() && over.mode.is_none() => v,
        _ => u,
    };
    let mut cfg = VqsvdConfig::new(over.rank.or(file.rank).unwrap_or(default_rank), u);
    cfg.v_ansatz = v;
    cfg.weights = file.weights.clone();
    if over.rank.is_some() && cfg.weights.as_ref().is_some_and(|w| Some(w.len()) != over.rank) {
        cfg.weights = None;
    }
    cfg.max_iterations = over
        .max_iterations
        .or(file.max_iterations)
        .unwrap_or(DEFAULT_ITERATIONS);
    if let Some(t) = file.tolerance {
        cfg.tolerance = t;
    }
    if let Some(lr) = file.learning_rate {
        cfg.learning_rate = lr;
    }
    cfg.seed = seed;
    cfg.record_m_trace = file.record_m_trace.unwrap_or(false);
    cfg.estimator = file.estimator.unwrap_or_else(EstimatorConfig::exact);
    cfg.estimator.seed = seed;
    match flags.estimator {
        Some(EstimatorArg::Exact) => cfg.estimator.mode = EstimatorMode::Exact,
        Some(EstimatorArg::Shots) => cfg.estimator.mode = EstimatorMode::Shots,
        Some(EstimatorArg::Sampled) => cfg.estimator.mode = EstimatorMode::Sampled,
        None => {}
    }
    if let Some(n) = flags.shots {
        match cfg.estimator.mode {
            EstimatorMode::Shots => cfg.estimator.shots_per_term = n,
            EstimatorMode::Sampled => cfg.estimator.term_samples = n as usize,
            EstimatorMode::Exact => {}
        }
    }
    if cfg.estimator.mode == EstimatorMode::Shots && cfg.estimator.shots_per_term == 0 {
        cfg.estimator.shots_per_term = 1000;
    }
    if cfg.estimator.mode == EstimatorMode::Sampled && cfg.estimator.term_samples == 0 {
        cfg.estimator.term_samples = 1000;
    }
    Ok(cfg)
}

/// Hex SHA-256 of the canonical JSON form of `value`.
pub fn hash_of<S: Serialize>(value: &S) -> Result<String> {
    let bytes = serde_json::to_vec(value)?;
    Ok(hex(&Sha256::digest(&bytes)))
}

pub fn hash_bytes(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
