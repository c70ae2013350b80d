//! Command-line driver for the benchmark harness.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepbench::bench::{self, report, SuiteConfig, TargetSet, TrialLog};
use sepbench::linesearch::{BRENT_TOL, BSRR_EPSILON};
use sepbench::optimizers::{AlgorithmKind, AlgorithmVariant};
use sepbench::problems::{make_problem, FunctionId};
use sepbench::Error;

#[derive(Parser)]
#[command(
    name = "sepbench",
    version,
    about = "Derivative-free local search benchmarks"
)]
struct Cli {
    /// Master seed for all trials.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for `run`; log directory for `analyze`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all available processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Config file with `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark suite and write one log per trial plus a manifest.
    Run(RunArgs),
    /// Compute ERT, ECDF or rank-sum tables from a suite directory.
    Analyze(AnalyzeArgs),
    /// Time 2D evaluations per problem for each optimizer family.
    Timing(TimingArgs),
    /// List functions and algorithm variants.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated variants, e.g. `HJ-5,BSrr` or `HJ-c0.7-s0.4`.
    #[arg(long)]
    algo: Option<String>,
    /// Comma-separated function ids, e.g. `f1,f3`.
    #[arg(long)]
    func: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    dim: Option<String>,
    /// Instance range `1-15` or list `1,2,3`.
    #[arg(long)]
    instances: Option<String>,
    #[arg(long)]
    restarts: Option<String>,
    #[arg(long)]
    budget_hj: Option<String>,
    #[arg(long)]
    budget_mts: Option<String>,
    #[arg(long)]
    budget_bsrr: Option<String>,
    /// Comma-separated target precisions; must include 1e-8.
    #[arg(long)]
    targets: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Ert,
    Ecdf,
    Ranksum,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(value_enum)]
    mode: Mode,
    /// Suite directory; defaults to `--out`, then `results`.
    #[arg(long)]
    logs: Option<PathBuf>,
    /// Restrict to these algorithms; `ranksum` needs exactly two.
    #[arg(long, value_delimiter = ',')]
    algs: Vec<String>,
    /// Comma-separated target precisions (default `1e2,...,1e-8`).
    #[arg(long)]
    targets: Option<String>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TimingArgs {
    #[arg(long, value_delimiter = ',', default_value = "20,40,80,160")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Comma-separated function ids (default: all).
    #[arg(long)]
    func: Option<String>,
    /// Instance used for every function.
    #[arg(long, default_value_t = 1)]
    instance: u32,
}

fn usage(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::Manifest(_) | Error::Parse { .. } => 3,
        _ => 2,
    }
}

fn read_config(cli: &Cli) -> sepbench::Result<SuiteConfig> {
    let mut config = SuiteConfig::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
        config.apply_text(&text)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    Ok(config)
}

fn jobs(cli: &Cli) -> sepbench::Result<Option<usize>> {
    match cli.jobs {
        Some(0) => Err(usage("jobs", "must be at least 1")),
        j => Ok(j),
    }
}

fn cmd_run(cli: &Cli, args: &RunArgs) -> sepbench::Result<()> {
    let mut config = read_config(cli)?;
    let flags = [
        ("algo", &args.algo),
        ("func", &args.func),
        ("dim", &args.dim),
        ("instances", &args.instances),
        ("restarts", &args.restarts),
        ("budget_hj", &args.budget_hj),
        ("budget_mts", &args.budget_mts),
        ("budget_bsrr", &args.budget_bsrr),
        ("targets", &args.targets),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, v)?;
        }
    }
    config.validate()?;
    let logs = bench::run_suite(&config, jobs(cli)?, &|log| {
        let best = log
            .final_delta()
            .map_or("-".to_string(), |d| format!("{d:.3e}"));
        eprintln!(
            "{} {} D={} i={}: {} evals, best delta_f {best}",
            log.algorithm_id, log.function_id, log.dimension, log.instance_id, log.total_evals
        );
    })?;
    println!(
        "{} trials written to {}",
        logs.len(),
        config.output_dir.display()
    );
    Ok(())
}

fn parse_targets(value: Option<&str>) -> sepbench::Result<TargetSet> {
    let Some(value) = value else {
        return Ok(TargetSet::default());
    };
    let mut config = SuiteConfig::default();
    config.set("targets", value)?;
    Ok(config.targets)
}

fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs) -> sepbench::Result<()> {
    if matches!(args.mode, Mode::Ranksum) && args.algs.len() != 2 {
        return Err(usage("algs", "ranksum needs exactly two algorithm ids"));
    }
    let targets = parse_targets(args.targets.as_deref())?;
    let dir = args
        .logs
        .clone()
        .or_else(|| cli.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let (_, logs) = bench::load_suite(&dir)?;
    for alg in &args.algs {
        if !logs.iter().any(|l| &l.algorithm_id == alg) {
            return Err(usage(
                "algs",
                format!("no trials of algorithm `{alg}` in {}", dir.display()),
            ));
        }
    }
    let selected: Vec<TrialLog> = if args.algs.is_empty() {
        logs
    } else {
        logs.into_iter()
            .filter(|l| args.algs.contains(&l.algorithm_id))
            .collect()
    };
    let csv = match args.mode {
        Mode::Ert => report::ert_csv(&selected, &targets)?,
        Mode::Ecdf => report::ecdf_csv(&selected, &targets)?,
        Mode::Ranksum => report::ranksum_csv(&selected, &args.algs[0], &args.algs[1], &targets)?,
    };
    match &args.output {
        Some(path) => fs::write(path, csv).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            let _ = std::io::stdout().write_all(csv.as_bytes());
            Ok(())
        }
    }
}

fn cmd_timing(args: &TimingArgs) -> sepbench::Result<()> {
    if args.dims.is_empty() || args.dims.contains(&0) {
        return Err(usage("dims", "dimensions must be at least 1"));
    }
    if args.reps == 0 {
        return Err(usage("reps", "must be at least 1"));
    }
    let functions = match &args.func {
        Some(v) => {
            let mut config = SuiteConfig::default();
            config.set("func", v)?;
            config.functions
        }
        None => FunctionId::ALL.to_vec(),
    };
    let mut problems = Vec::new();
    for &d in &args.dims {
        for &f in &functions {
            problems.push(
                make_problem(f, d, args.instance).map_err(|e| usage("instance", e.to_string()))?,
            );
        }
    }
    let variants = [
        AlgorithmVariant::hooke_jeeves(0.5),
        AlgorithmVariant::mts_ls1(0.5),
        AlgorithmVariant::bsrr(),
    ];
    let report = bench::timing_experiment(&variants, &problems, args.reps)?;
    println!("seconds per evaluation, units of 1e-5 s");
    print!("{}", report.to_table());
    Ok(())
}

fn cmd_list() {
    println!("functions:");
    for f in FunctionId::ALL {
        let kind = if f.is_separable() {
            "separable"
        } else {
            "non-separable"
        };
        println!("  {f:<4} {} ({kind})", f.description());
    }
    println!("algorithms:");
    for v in AlgorithmVariant::builtins() {
        let params = match v.kind {
            AlgorithmKind::Bsrr => format!("tol={BRENT_TOL:e} epsilon={BSRR_EPSILON:e}"),
            _ => format!("c={} sigma_init={}", v.c, v.sigma_init),
        };
        println!(
            "  {:<10} {params:<26} budget={}*D",
            v.name(),
            v.kind.default_budget_multiplier()
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(&cli, args),
        Command::Analyze(args) => cmd_analyze(&cli, args),
        Command::Timing(args) => cmd_timing(args),
        Command::List => {
            cmd_list();
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
