//! Command-line front end: `solve` for a single system, `bench` for random
//! instance families.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use zeromatch::bench::{bench_run, BenchConfig, Family};
use zeromatch::bound::EpsilonMode;
use zeromatch::exact_arith::parse_rational;
use zeromatch::pipeline::{parse_system, parse_system_parts, solve, OutputFormat, SolveOptions};
use zeromatch::Error;

const EXIT_PARSE: u8 = 2;
const EXIT_NOT_ZERO_DIMENSIONAL: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "zeromatch", version, about = "Certified real solutions of bivariate polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one system f = g = 0.
    Solve(SolveArgs),
    /// Generate and solve random systems, printing a table.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Safe,
    Paper,
    Manual,
}

impl From<ModeArg> for EpsilonMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Safe => EpsilonMode::Safe,
            ModeArg::Paper => EpsilonMode::Paper,
            ModeArg::Manual => EpsilonMode::Manual,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dense,
    Sparse,
    MultipleRoot,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Dense => Family::Dense,
            FamilyArg::Sparse => Family::Sparse,
            FamilyArg::MultipleRoot => Family::MultipleRoot,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Threshold mode.
    #[arg(long, value_enum, default_value = "safe")]
    epsilon_mode: ModeArg,
    /// Threshold for manual mode, as `p/q`.
    #[arg(long)]
    epsilon: Option<String>,
    /// Significant digits of printed approximations.
    #[arg(long, default_value_t = 10)]
    digits: u32,
    /// Worker threads (0 for one per core).
    #[arg(long, env = "ZEROMATCH_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Refinement budget in bits.
    #[arg(long)]
    budget: Option<u64>,
}

impl CommonArgs {
    fn options(&self) -> anyhow::Result<SolveOptions> {
        let manual_epsilon = match &self.epsilon {
            Some(s) => Some(parse_rational(s).with_context(|| format!("invalid epsilon `{s}`"))?),
            None => None,
        };
        if manual_epsilon.is_some() && !matches!(self.epsilon_mode, ModeArg::Manual) {
            bail!("--epsilon requires --epsilon-mode manual");
        }
        if self.digits == 0 {
            bail!("--digits must be at least 1");
        }
        Ok(SolveOptions {
            epsilon_mode: self.epsilon_mode.into(),
            manual_epsilon,
            digits: self.digits,
            workers: self.workers,
            budget_bits: self.budget,
            ..SolveOptions::default()
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Both polynomials, separated by `;`.
    #[arg(short, long, conflicts_with_all = ["f", "g"])]
    system: Option<String>,
    /// First polynomial.
    #[arg(long, requires = "g")]
    f: Option<String>,
    /// Second polynomial.
    #[arg(long, requires = "f")]
    g: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "dense")]
    family: FamilyArg,
    #[arg(long, default_value_t = 2)]
    min_degree: u32,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = 20)]
    coeff_bound: u32,
    /// Instances per degree.
    #[arg(long, default_value_t = 5)]
    instances: u32,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Per-instance time budget in seconds.
    #[arg(long, default_value_t = 120.0)]
    time_budget: f64,
    #[command(flatten)]
    common: CommonArgs,
    /// Also write the table as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse(_)) => EXIT_PARSE,
        Some(Error::NotZeroDimensional(_)) => EXIT_NOT_ZERO_DIMENSIONAL,
        Some(Error::RefinementBudgetExceeded { .. } | Error::Timeout) => EXIT_BUDGET,
        _ => EXIT_OTHER,
    }
}

fn run_solve(args: SolveArgs) -> anyhow::Result<()> {
    let mut input = match (&args.system, &args.f, &args.g) {
        (Some(s), _, _) => parse_system(s).map_err(Error::from)?,
        (None, Some(f), Some(g)) => parse_system_parts(f, g).map_err(Error::from)?,
        _ => bail!("give the system with --system or with --f and --g"),
    };
    input.options = args.common.options()?;
    input.options.format = match args.format {
        FormatArg::Text => OutputFormat::Text,
        FormatArg::Json => OutputFormat::Json,
    };
    if let Some(t) = args.time_limit {
        input.options.time_limit = Some(Duration::try_from_secs_f64(t).context("invalid --time-limit")?);
    }
    let report = solve(&input)?;
    match input.options.format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json()),
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> anyhow::Result<()> {
    let config = BenchConfig {
        family: args.family.into(),
        min_degree: args.min_degree,
        max_degree: args.max_degree,
        coeff_bound: args.coeff_bound,
        instances: args.instances,
        seed: args.seed,
        time_budget: Duration::try_from_secs_f64(args.time_budget).context("invalid --time-budget")?,
        options: args.common.options()?,
    };
    let table = bench_run(&config)?;
    print!("{}", table.to_text());
    if let Some(path) = args.out {
        std::fs::write(&path, table.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
