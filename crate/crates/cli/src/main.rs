use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbsums::fuzz::FuzzMode;
use hbsums::{ErrorClass, Limits, TolerancePolicy};

mod commands;
mod output;

use output::{CliError, Outcome};

/// Build and certify sums of products of Hermite-Biehler polynomials.
#[derive(Debug, Parser)]
#[command(name = "hbsums", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Residual tolerance for float cross-checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Cap on n for exact 2^n expansions.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_n: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Spaces of JSON indentation; 0 prints compact JSON.
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,
    /// Write gnuplot-ready two-column data (root re/im, or circle residuals)
    /// to this file.
    #[arg(long, global = true)]
    pub plot_data: Option<PathBuf>,
}

impl Global {
    pub fn policy(&self) -> TolerancePolicy {
        TolerancePolicy::default().with_tol(self.tol)
    }

    pub fn limits(&self) -> Limits {
        Limits { exact_cap: self.max_n, ..Limits::default() }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LocusArg {
    Real,
    Circle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    Both,
}

impl From<ModeArg> for FuzzMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => FuzzMode::Exact,
            ModeArg::Float => FuzzMode::Float,
            ModeArg::Both => FuzzMode::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build H_n(i s, z) from an instance file.
    Construct {
        instance: PathBuf,
        /// Use the recursion (the default).
        #[arg(long, conflicts_with = "subset")]
        recursive: bool,
        /// Use the literal sum over all subsets.
        #[arg(long)]
        subset: bool,
        /// Offset s of H_n(i s, z), as "p/q".
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
    },
    /// Certify that an exact polynomial has all roots on a locus.
    Certify {
        polynomial: PathBuf,
        #[arg(long, value_enum, default_value_t = LocusArg::Real)]
        locus: LocusArg,
    },
    /// Diagonal Lee-Yang polynomial of a coupling matrix, with its
    /// unit-circle certificate.
    Leeyang { matrix: PathBuf },
    /// Iterate a three-term recurrence through the two-factor construction.
    Ortho { recurrence: PathBuf },
    /// Count zeros of an exponential sum in boxes off and on the real axis.
    Expsum { instance: PathBuf },
    /// Randomized property run, or replay of a stored report.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Largest degree of each w_k.
    #[arg(long, default_value_t = 3)]
    pub degree_max: usize,
    /// Largest number of real zeros of G.
    #[arg(long, default_value_t = 6)]
    pub g_roots_max: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Bound on float root residuals checked by the run.
    #[arg(long, default_value_t = 1e-8)]
    pub float_tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Replay the FAIL records of a stored report (all records if it has none).
    #[arg(long, conflicts_with = "report")]
    pub replay: Option<PathBuf>,
}

fn exit_code(r: &Result<Outcome, CliError>) -> u8 {
    match r {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(CliError::Core(e)) => match e.class() {
            ErrorClass::InvalidInput => 2,
            ErrorClass::Resource => 3,
        },
        Err(CliError::Input(_)) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = g.policy().validate().map_err(CliError::from).and_then(|_| match &cli.command {
        Command::Construct { instance, subset, s, .. } => commands::construct(g, instance, *subset, s),
        Command::Certify { polynomial, locus } => commands::certify(g, polynomial, *locus),
        Command::Leeyang { matrix } => commands::leeyang(g, matrix),
        Command::Ortho { recurrence } => commands::ortho(g, recurrence),
        Command::Expsum { instance } => commands::expsum(g, instance),
        Command::Fuzz(args) => commands::fuzz(g, args),
    });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result))
}
