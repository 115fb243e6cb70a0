//! `meshct`: build, mutate and verify cluster tilting modules over mesh
//! algebras of Dynkin type, and work with folded exchange matrices.

mod commands;
mod example;
mod matrix;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use meshct_core::{Fp, MeshError, Q};

use output::Output;

#[derive(Parser, Debug)]
#[command(name = "meshct", version, about = "Cluster tilting modules over mesh algebras of Dynkin type")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every random choice; recorded in the output metadata.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output to this file (or directory, for `export` and `example`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Ground field; overrides the MESHCT_FIELD environment variable.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldKind>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    Rat,
    Fp32003,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rat => "rat",
            FieldKind::Fp32003 => "fp32003",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rigidity,
    Homprofile,
    Involution,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the start module of a type (e.g. b3, c3, g2, f4).
    Start { ty: String },
    /// Mutate the start module along orbit labels, e.g. --seq "{1,2}@1,{0}@2".
    Mutate {
        ty: String,
        #[arg(long)]
        seq: String,
    },
    /// Operations on labelled integer matrices (CSV or JSON files).
    Matrix {
        #[command(subcommand)]
        op: MatrixOp,
    },
    /// Hom dimensions out of a vertex of ZΔ, e.g. `hammock b3 "(0,2)"`.
    Hammock { ty: String, vertex: String },
    /// Run a verification suite; `ty` may be a comma list or `all`.
    Verify {
        ty: String,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Number of random mutation sequences.
        #[arg(long, default_value_t = 20)]
        runs: usize,
        /// Maximal length of a random mutation sequence.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Reproduce a worked example and compare it against the golden files.
    Example { name: String },
    /// Write the quiver, start module and matrices of a type to --out DIR.
    Export { ty: String },
}

#[derive(Subcommand, Debug)]
pub enum MatrixOp {
    /// Fomin–Zelevinsky mutation at a label (or, with --partition, at an orbit
    /// of an unfolded matrix).
    Mutate {
        file: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Fold a γ-invariant matrix along an orbit partition.
    Fold {
        file: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Report diagonal, skew-symmetrizer, invariance and admissibility.
    Check {
        file: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
}

/// Outcome of a command: the text to emit and whether every check passed.
pub struct Report {
    pub output: Output,
    pub passed: bool,
}

/// Errors that are the caller's fault map to exit code 2.
fn is_usage_error(e: &anyhow::Error) -> bool {
    match e.downcast_ref::<MeshError>() {
        Some(
            MeshError::UnsupportedType(_)
            | MeshError::UnsupportedOrientation(_)
            | MeshError::LabelNotFound(_)
            | MeshError::Parse(_)
            | MeshError::MutationAtProjective(_)
            | MeshError::PreconditionViolated(_)
            | MeshError::LabelMismatch(_)
            | MeshError::NonzeroDiagonal(_)
            | MeshError::VertexOutsideRectangle(..),
        ) => true,
        Some(_) => false,
        None => e.downcast_ref::<std::io::Error>().is_some() || e.downcast_ref::<UsageError>().is_some(),
    }
}

/// A malformed argument that clap cannot detect on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn field_kind(cli: &Cli) -> anyhow::Result<FieldKind> {
    if let Some(f) = cli.field {
        return Ok(f);
    }
    match std::env::var("MESHCT_FIELD") {
        Ok(v) => FieldKind::from_str(&v, true)
            .map_err(|_| UsageError(format!("MESHCT_FIELD={v}: expected rat or fp32003")).into()),
        Err(_) => Ok(FieldKind::Rat),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let field = field_kind(cli)?;
    match field {
        FieldKind::Rat => commands::dispatch::<Q>(cli, field),
        FieldKind::Fp32003 => commands::dispatch::<Fp>(cli, field),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = report.output.emit(cli.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if is_usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
