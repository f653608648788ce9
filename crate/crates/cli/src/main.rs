//! `eca`: experiment harness for elementary cellular automata under periodic
//! update modes.
//!
//! Exit codes: 0 success, 2 invalid plan, 3 budget exceeded, 4 parse error.

mod commands;
mod plan;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plan::Failure;

#[derive(Parser)]
#[command(name = "eca", version, about = "Elementary cellular automata under periodic update modes")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Random-mode constraints shared by `sweep`, `measure` and `modes`.
#[derive(Args, Clone)]
pub struct ConstraintArgs {
    /// Exact number of blocks for block-sequential modes.
    #[arg(long)]
    pub blocks: Option<usize>,
    /// Largest local-clock period.
    #[arg(long)]
    pub lc_max_period: Option<usize>,
    /// Allowed block-parallel subsequence lengths, e.g. `1..6`.
    #[arg(long)]
    pub bp_sizes: Option<String>,
    /// Largest period accepted for sampled block-parallel and local-clocks modes.
    #[arg(long)]
    pub lcm_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Attractor sweeps and max-cycle scaling per rule and family.
    Sweep(SweepArgs),
    /// Density and energy time series averaged over configurations and modes.
    Measure(MeasureArgs),
    /// Space-time diagram of one trajectory.
    Diagram(DiagramArgs),
    /// Absolute walls of each rule.
    Walls(WallsArgs),
    /// Random update modes in text form.
    Modes(ModesArgs),
    /// Maximal products of distinct primes with bounded sum.
    Primorial(PrimorialArgs),
}

#[derive(Args)]
pub struct SweepArgs {
    /// Rule codes: `156`, `0..255`, `all-88-reps`, comma-separated.
    #[arg(long, default_value = "all-88-reps")]
    pub rules: String,
    /// Families: par, bip, seq, bs, bp, lc or `all`, comma-separated.
    #[arg(long, default_value = "par")]
    pub family: String,
    /// Ring sizes, e.g. `4..14` or `8,10,12`.
    #[arg(long, default_value = "4..12")]
    pub n: String,
    /// Modes sampled per (rule, family, n).
    #[arg(long, default_value_t = 32)]
    pub modes: usize,
    /// Modes to sweep, one per line; replaces `--family`, `--n` and `--modes`.
    #[arg(long)]
    pub mode_file: Option<PathBuf>,
    /// Random configurations per mode instead of all 2^n.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    /// Output directory.
    #[arg(long, default_value = "eca-out")]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct MeasureArgs {
    #[arg(long, default_value = "110")]
    pub rules: String,
    #[arg(long, default_value = "seq")]
    pub family: String,
    #[arg(long, default_value = "38")]
    pub n: String,
    /// Random configurations per mode.
    #[arg(long, default_value_t = 128)]
    pub s: usize,
    /// Modes per (rule, family, n).
    #[arg(long, default_value_t = 32)]
    pub m: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Use all 2^n configurations instead of `--s` random ones.
    #[arg(long)]
    pub exhaustive: bool,
    /// Also write every mode's own series.
    #[arg(long)]
    pub per_mode: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    #[arg(long, default_value = "eca-out")]
    pub out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Pgm,
}

#[derive(Args)]
pub struct DiagramArgs {
    #[arg(long)]
    pub rule: u8,
    /// Mode in text form, e.g. `bs:({0,2},{1,3})`.
    #[arg(long, conflicts_with = "mode_file")]
    pub mode: Option<String>,
    /// File whose first mode line is used.
    #[arg(long)]
    pub mode_file: Option<PathBuf>,
    /// Initial configuration, cell 0 first, e.g. `01100101`.
    #[arg(long)]
    pub config: String,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Include intermediate substeps.
    #[arg(long)]
    pub substeps: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct WallsArgs {
    #[arg(long, default_value = "all-88-reps")]
    pub rules: String,
    /// Word lengths, e.g. `2` or `2..4`.
    #[arg(long, default_value = "2")]
    pub k: String,
    /// Also write `walls.csv` here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ModesArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 32)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PrimorialArgs {
    /// Values of n, e.g. `10..60`.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use eca_core::Error as E;
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Parse(_) => 4,
            Failure::Plan(_) => 2,
        };
    }
    match err.downcast_ref::<E>() {
        Some(E::BudgetExceeded(_) | E::PeriodOverflow { .. }) => 3,
        Some(E::Parse { .. }) => 4,
        Some(_) => 2,
        None => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Plan("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let budget = eca_core::Budget::from_env()?;
    match cli.command {
        Command::Sweep(a) => commands::sweep(a, budget),
        Command::Measure(a) => commands::measure(a, budget),
        Command::Diagram(a) => commands::diagram(a, budget),
        Command::Walls(a) => commands::walls(a),
        Command::Modes(a) => commands::modes(a, budget),
        Command::Primorial(a) => commands::primorial(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("eca: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
