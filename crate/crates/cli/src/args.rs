use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gfweight", version, about = "Weierstrass weights on generalized Fermat curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Genus, degree, fixed points and the weight bound of a curve
    Info,
    /// Gap sequences at fixed or explicit points
    Gaps,
    /// Weights at the fixed points and the remaining weight budget
    Weight,
    /// Vanishing orders and ramification of a family of forms at a point
    Profile,
    /// Pluecker sequence of the standard embedding
    Pluecker,
    /// Dimensions of the graded pieces and their canonical decomposition
    Dims,
    /// Compare the weight with its lower bound through the quotient curve
    Strictness,
    /// Probe whether the moduli point avoids each hyperosculation locus
    Mho,
    /// Orbit of the parameters under relabeling of the branch points
    Orbit,
    /// Strictness diagnostic over a grid of parameters
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Gaps => "gaps",
            Command::Weight => "weight",
            Command::Profile => "profile",
            Command::Pluecker => "pluecker",
            Command::Dims => "dims",
            Command::Strictness => "strictness",
            Command::Mho => "mho",
            Command::Orbit => "orbit",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Generic,
    Embedded,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Exponent k
    #[arg(long, global = true)]
    pub k: Option<u32>,

    /// Number n (the curve lives in P^n)
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Comma-separated parameters lambda_1..lambda_{n-2}
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    /// Comma-separated modulus coefficients, constant term first
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub field: Option<String>,

    /// Curve description file (JSON) instead of --k/--n/--lambda/--field
    #[arg(long, global = true)]
    pub curve: Option<PathBuf>,

    /// Point: comma-separated coordinates or a JSON point description
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,

    /// Fixed points on this axis (all of them share their data)
    #[arg(long, global = true)]
    pub axis: Option<usize>,

    /// Starting truncation of the local series
    #[arg(long, global = true)]
    pub truncation: Option<usize>,

    /// Degree of the family used by `profile`
    #[arg(long, global = true, default_value_t = 1)]
    pub degree: usize,

    /// Restrict `mho` to one class j
    #[arg(long, global = true)]
    pub j: Option<u32>,

    /// How `mho` treats the branch values
    #[arg(long, global = true, value_enum, default_value_t = Mode::Generic)]
    pub mode: Mode,

    /// Semicolon-separated parameter tuples for `sweep`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for `sweep`
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Result cache directory (overrides GFWEIGHT_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}
