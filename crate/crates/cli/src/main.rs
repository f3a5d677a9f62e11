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

//! `vqsvd`: decompose, train, verify and apply variational SVDs.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vqsvd_core::circuit::{AnsatzKind, RotationMode};
use vqsvd_core::verification::BoundSource;

use config::{Overrides, SharedFlags};

#[derive(Parser)]
#[command(name = "vqsvd", version, about = "Variational quantum SVD on a statevector simulator")]
struct Cli {
    #[command(flatten)]
    shared: SharedFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeMode {
    Pauli,
    Circulant,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

impl From<ModeArg> for RotationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Real => RotationMode::Real,
            ModeArg::Complex => RotationMode::Complex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Oracle,
    Frobenius,
    Vqfne,
}

#[derive(clap::Args, Clone, Default)]
struct TrainFlags {
    /// Number of singular triples to learn
    #[arg(long)]
    rank: Option<usize>,
    /// Ansatz blocks per circuit
    #[arg(long)]
    depth: Option<usize>,
    /// Ansatz template
    #[arg(long, value_enum)]
    ansatz: Option<KindArg>,
    /// Rotation type at each ansatz box
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Adam iteration budget
    #[arg(long)]
    max_iterations: Option<usize>,
}

impl TrainFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            rank: self.rank,
            depth: self.depth,
            ansatz: self.ansatz.map(|k| match k {
                KindArg::A => AnsatzKind::A,
                KindArg::B => AnsatzKind::B,
                KindArg::C => AnsatzKind::C,
                KindArg::D => AnsatzKind::D,
            }),
            mode: self.mode.map(Into::into),
            max_iterations: self.max_iterations,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a matrix as a linear combination of unitaries
    Decompose {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "pauli")]
        mode: DecomposeMode,
    },
    /// Learn the top singular values and vectors
    Svd {
        /// Matrix file, or an `.lcu` file
        input: PathBuf,
        #[command(flatten)]
        train: TrainFlags,
    },
    /// Assess a trained result against its matrix
    Verify {
        matrix: PathBuf,
        result: PathBuf,
        /// Source of the top-T squared singular mass
        #[arg(long, value_enum, default_value = "frobenius")]
        bound: BoundArg,
    },
    /// Low-rank reconstruction of a PGM image
    Compress {
        image: PathBuf,
        #[command(flatten)]
        train: TrainFlags,
        /// Write binary P5 instead of text P2
        #[arg(long)]
        binary: bool,
    },
    /// Project a customer's preferences onto the learned item subspace
    Recommend {
        matrix: PathBuf,
        #[arg(long)]
        row: usize,
        /// Measurement draws from the projected state
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[command(flatten)]
        train: TrainFlags,
    },
    /// Polar factors from a full-rank run
    Polar {
        matrix: PathBuf,
        #[command(flatten)]
        train: TrainFlags,
    },
    /// Compare ansatz candidates at equal parameter budget
    BenchAnsatz {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "real")]
        mode: ModeArg,
        #[arg(long)]
        max_iterations: Option<usize>,
    },
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let f = &cli.shared;
    match cli.command {
        Command::Decompose { matrix, mode } => {
            commands::decompose(f, &matrix, matches!(mode, DecomposeMode::Circulant))
        }
        Command::Svd { input, train } => commands::svd(
            f,
            &input,
            &commands::SvdArgs {
                over: train.overrides(),
            },
        ),
        Command::Verify { matrix, result, bound } => {
            let source = match bound {
                BoundArg::Oracle => BoundSource::Oracle,
                BoundArg::Frobenius => BoundSource::Frobenius,
                BoundArg::Vqfne => BoundSource::Vqfne,
            };
            commands::verify(f, &matrix, &result, source)
        }
        Command::Compress { image, train, binary } => {
            commands::compress(f, &image, &train.overrides(), binary)
        }
        Command::Recommend {
            matrix,
            row,
            samples,
            train,
        } => commands::recommend_cmd(f, &matrix, row, samples, &train.overrides()),
        Command::Polar { matrix, train } => commands::polar(f, &matrix, &train.overrides()),
        Command::BenchAnsatz {
            matrix,
            mode,
            max_iterations,
        } => commands::bench(f, &matrix, mode.into(), max_iterations),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let reason = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {reason}");
            ExitCode::FAILURE
        }
    }
}
