//! `harq` command line: route OpenQASM benchmarks onto a calibrated device
//! and report added-gate, duration and fidelity estimates.
//!
//! Exit codes: 0 on success, 1 when a routed circuit fails verification,
//! 2 on input or calibration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use harq_core::distance::Alphas;
use harq_core::harness::{self, InitialEngine, ReportFormat, RunConfig};
use harq_core::router::RouterConfig;

#[derive(Parser)]
#[command(name = "harq", version, about = "Hardware-aware qubit routing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Route benchmarks, verify the results, and write reports.
    Run(CommonArgs),
    /// Route with the configured heuristic and with a swap-only hop-count
    /// baseline on identical initial mappings, and tabulate the deltas.
    Compare(CommonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BridgeFlag {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitialFlag {
    Random,
    Sabre,
    Hsa,
}

impl From<InitialFlag> for InitialEngine {
    fn from(f: InitialFlag) -> Self {
        match f {
            InitialFlag::Random => InitialEngine::Random,
            InitialFlag::Sabre => InitialEngine::Sabre,
            InitialFlag::Hsa => InitialEngine::Hsa,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFlag {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// QASM files or directories containing them.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Device calibration document (JSON).
    #[arg(long)]
    calibration: PathBuf,

    /// Weight of the hop-count distance term.
    #[arg(long, default_value_t = 0.5)]
    alpha1: f64,

    /// Weight of the swap-error distance term.
    #[arg(long, default_value_t = 0.5)]
    alpha2: f64,

    /// Weight of the swap-duration distance term.
    #[arg(long, default_value_t = 0.0)]
    alpha3: f64,

    /// Extended-layer weight in the swap cost.
    #[arg(long, default_value_t = 0.5)]
    weight: f64,

    /// Look-ahead window size (two-qubit gates).
    #[arg(long, default_value_t = 20)]
    extended_size: usize,

    /// Whether the router may insert Bridge gates.
    #[arg(long, value_enum, default_value_t = BridgeFlag::On)]
    bridge: BridgeFlag,

    /// Initial-mapping engine.
    #[arg(long, value_enum, default_value_t = InitialFlag::Sabre)]
    initial: InitialFlag,

    /// Independent (initial mapping, route) attempts per benchmark.
    #[arg(long, default_value_t = 10)]
    trials: usize,

    /// Routing-call budget of the initial-mapping search.
    #[arg(long, default_value_t = 100)]
    budget: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Directory for reports and routed QASM files.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Format of the report printed to stdout.
    #[arg(long, value_enum, default_value_t = ReportFlag::Csv)]
    report: ReportFlag,
}

impl CommonArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            inputs: self.inputs.clone(),
            calibration: self.calibration.clone(),
            router: RouterConfig {
                alphas: Alphas::new(self.alpha1, self.alpha2, self.alpha3),
                lookahead_weight: self.weight,
                extended_size: self.extended_size,
                bridge_enabled: matches!(self.bridge, BridgeFlag::On),
                seed: self.seed,
            },
            initial: self.initial.into(),
            trials: self.trials,
            mapping_call_budget: self.budget,
            seed: self.seed,
            out_dir: self.out.clone(),
            report_format: match self.report {
                ReportFlag::Json => ReportFormat::Json,
                ReportFlag::Csv => ReportFormat::Csv,
            },
        }
    }
}

fn run_command(args: &CommonArgs) -> ExitCode {
    let config = args.to_config();
    let outcome = match harness::run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match config.report_format {
        ReportFormat::Json => match outcome.report.to_json() {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        ReportFormat::Csv => print!("{}", outcome.report.to_csv()),
    }
    for b in &outcome.report.benchmarks {
        if b.status != "ok" {
            eprintln!("{}: {}", b.benchmark, b.status);
        }
    }
    if outcome.input_errors > 0 {
        ExitCode::from(2)
    } else if outcome.verification_failures > 0 {
        eprintln!(
            "error: {} benchmark(s) failed verification",
            outcome.verification_failures
        );
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn compare_command(args: &CommonArgs) -> ExitCode {
    let config = args.to_config();
    let report = match harness::compare_baseline(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match config.report_format {
        ReportFormat::Json => match report.to_json() {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        ReportFormat::Csv => print!("{}", report.to_csv()),
    }
    let failures = report.rows.iter().filter(|r| r.status != "ok").count();
    for row in report.rows.iter().filter(|r| r.status != "ok") {
        eprintln!("{}: {}", row.benchmark, row.status);
    }
    if let Some(mean) = report.mean_delta_g_pct() {
        eprintln!("mean delta g vs baseline: {mean:.1}%");
        if mean > 0.0 {
            eprintln!("warning: heuristic added more gates than the baseline on average");
        }
    }
    for row in &report.rows {
        if row.delta_g_pct.is_some_and(|d| d > 0.0) {
            eprintln!(
                "warning: {} regressed vs baseline ({:+.1}%)",
                row.benchmark,
                row.delta_g_pct.unwrap()
            );
        }
    }
    if failures > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Compare(args) => compare_command(args),
    }
}
