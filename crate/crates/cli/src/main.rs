//! `oa-jgeom`: reproducible workflows over the library.
//!
//! Exit codes: 0 success, 1 a verification or certification failed,
//! 2 usage or input error, 3 a search budget or size limit was exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oa_jgeom::{DimMode, ModeSelect, OAParams};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] oa_jgeom::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) | CliError::Core(oa_jgeom::Error::Resource(_)) => 3,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "oa-jgeom", version, about = "J-characteristic tools for orthogonal arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// J-characteristics of an array or frequency file.
    Transform(TransformArgs),
    /// Strength verdict and congruence report for an array.
    Verify(VerifyArgs),
    /// Admissible dimensions of the integer hull.
    Dims(DimsArgs),
    /// Zero right-hand-side equations forced by a choice of T.
    Constraints(ConstraintsArgs),
    /// Solver-ready equality system, optionally with a constraint family.
    Emit(EmitArgs),
    /// Every feasible frequency vector, one JSON object per line.
    Enumerate(EnumerateArgs),
    /// Enumerate, measure and check every structural claim.
    Certify(CertifyArgs),
    /// Orbit counts and the Burnside table of a symmetry group.
    Orbits(OrbitsArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 1)]
    pub lambda: u64,
    /// Per-cell upper bound; defaults to lambda.
    #[arg(long)]
    pub pmax: Option<u64>,
}

impl ParamArgs {
    pub fn params(&self) -> CliResult<OAParams> {
        let params = OAParams::new(self.n, self.k, self.s, self.lambda)?;
        Ok(match self.pmax {
            Some(p) => params.with_p_max(p)?,
            None => params,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ModeArg {
    #[default]
    Auto,
    General,
    N2EvenS,
}

impl From<ModeArg> for ModeSelect {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => ModeSelect::Auto,
            ModeArg::General => ModeSelect::Force(DimMode::General),
            ModeArg::N2EvenS => ModeSelect::Force(DimMode::N2EvenS),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Shuffle the cell order with this seed; results do not depend on it.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Array text file (`n k N` header, then rows) or frequency JSON.
    pub input: PathBuf,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct ConstraintsArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Comma-separated offsets of Ω; omit for the empty set.
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Vec<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum SystemArg {
    #[default]
    Marginal,
    J,
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value_t)]
    pub system: SystemArg,
    /// Append the family forced by these offsets.
    #[arg(long = "T", value_delimiter = ',')]
    pub t: Vec<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    /// `lp-text` or `json`.
    #[arg(long, default_value = "lp-text")]
    pub format: String,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum GroupArg {
    /// Paratopisms: column permutations with per-column symbol permutations.
    #[default]
    Iso,
    /// The orthogonal-design group, binary alphabets only.
    Od,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t)]
    pub group: GroupArg,
    /// JSON list of generators, used instead of `--group`.
    #[arg(long)]
    pub generators: Option<PathBuf>,
    /// Burnside rows for X^1 through X^m.
    #[arg(long, default_value_t = 2)]
    pub max_power: u32,
    #[command(flatten)]
    pub out: OutArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(a) => commands::transform(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Dims(a) => commands::dims(&a),
        Command::Constraints(a) => commands::constraints(&a),
        Command::Emit(a) => commands::emit(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Certify(a) => commands::certify(&a),
        Command::Orbits(a) => commands::orbits(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
