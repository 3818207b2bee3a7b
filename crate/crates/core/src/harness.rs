//! Benchmark harness: run the routing pipeline over a QASM corpus, verify
//! the results, and serialise aggregate reports as JSON and CSV.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::Circuit;
use crate::dag::{build_dag, DependencyDag};
use crate::distance::{Alphas, DistanceBundle, DistanceError};
use crate::hardware::{HardwareError, HardwareModel};
use crate::initial::{anneal_initial, random_mapping, sabre_initial, AnnealConfig, InitialError};
use crate::mapping::Mapping;
use crate::metrics::{estimate_execution_time, fidelity_proxy};
use crate::qasm::{emit_qasm, parse_qasm};
use crate::router::{route, RoutedCircuit, RouterConfig, RoutingError};
use crate::sim::{verify_equivalence, SimulationError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("calibration: {0}")]
    Hardware(#[from] HardwareError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("report serialisation: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialEngine {
    Random,
    Sabre,
    Hsa,
}

impl InitialEngine {
    pub fn name(self) -> &'static str {
        match self {
            InitialEngine::Random => "random",
            InitialEngine::Sabre => "sabre",
            InitialEngine::Hsa => "hsa",
        }
    }
}

impl std::str::FromStr for InitialEngine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(InitialEngine::Random),
            "sabre" => Ok(InitialEngine::Sabre),
            "hsa" => Ok(InitialEngine::Hsa),
            other => Err(format!("unknown initial-mapping engine `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Full configuration of a harness invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub calibration: PathBuf,
    pub router: RouterConfig,
    pub initial: InitialEngine,
    pub trials: usize,
    pub mapping_call_budget: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub report_format: ReportFormat,
}

impl RunConfig {
    pub fn new(calibration: impl Into<PathBuf>, inputs: Vec<PathBuf>) -> Self {
        RunConfig {
            inputs,
            calibration: calibration.into(),
            router: RouterConfig::default(),
            initial: InitialEngine::Sabre,
            trials: 10,
            mapping_call_budget: 100,
            seed: 0,
            out_dir: None,
            report_format: ReportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialMetrics {
    pub trial: usize,
    pub added_cnots: usize,
    pub swaps: usize,
    pub bridges: usize,
    pub exec_time_ns: f64,
    pub fidelity_proxy: f64,
    pub compliant: bool,
    /// Statevector equivalence of the emitted circuit; checked on the best
    /// trial when the circuit is within simulator range, `None` otherwise.
    pub equivalent: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub benchmark: String,
    pub status: String,
    pub n: usize,
    pub g_all: usize,
    pub original_cx: usize,
    /// Mean added CNOTs over trials.
    pub g: f64,
    /// Minimum added CNOTs over trials.
    pub g_min: usize,
    /// Execution-time estimate of the best trial, nanoseconds.
    pub time_ns: f64,
    /// Fidelity proxy of the best trial.
    pub fidelity_proxy: f64,
    /// Wall-clock seconds spent routing all trials of this benchmark.
    pub runtime_s: f64,
    pub trials: Vec<TrialMetrics>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    /// The success-rate column is an analytic estimate, not a hardware
    /// measurement.
    pub fidelity_note: String,
    pub benchmarks: Vec<BenchmarkReport>,
}

impl MetricsReport {
    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// CSV with one row per benchmark.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("benchmark,n,g_all,g,g_min,time_ns,fidelity_proxy,runtime_s\n");
        for b in &self.benchmarks {
            let _ = writeln!(
                out,
                "{},{},{},{:.2},{},{:.1},{:.6},{:.3}",
                b.benchmark, b.n, b.g_all, b.g, b.g_min, b.time_ns, b.fidelity_proxy, b.runtime_s
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub benchmark: String,
    pub status: String,
    pub n: usize,
    pub g_all: usize,
    pub g_ha: f64,
    pub g_min_ha: usize,
    pub g_base: f64,
    pub g_min_base: usize,
    /// Percent change of mean added CNOTs versus the baseline; `None` when
    /// the baseline added nothing but the heuristic did.
    pub delta_g_pct: Option<f64>,
    pub delta_g_min_pct: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "benchmark,n,g_all,g_ha,g_min_ha,g_base,g_min_base,delta_g_pct,delta_g_min_pct\n",
        );
        let fmt_delta = |d: Option<f64>| match d {
            Some(v) => format!("{v:.1}"),
            None => "n/a".to_string(),
        };
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.2},{},{:.2},{},{},{}",
                r.benchmark,
                r.n,
                r.g_all,
                r.g_ha,
                r.g_min_ha,
                r.g_base,
                r.g_min_base,
                fmt_delta(r.delta_g_pct),
                fmt_delta(r.delta_g_min_pct),
            );
        }
        out
    }

    /// Mean of the per-benchmark mean deltas, ignoring rows without one.
    pub fn mean_delta_g_pct(&self) -> Option<f64> {
        let deltas: Vec<f64> = self.rows.iter().filter_map(|r| r.delta_g_pct).collect();
        if deltas.is_empty() {
            None
        } else {
            Some(deltas.iter().sum::<f64>() / deltas.len() as f64)
        }
    }
}

/// Outcome of a harness run, with the failure tallies that drive exit codes.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: MetricsReport,
    pub input_errors: usize,
    pub verification_failures: usize,
}

/// SplitMix-style seed derivation; stable across runs and thread schedules.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    let mut z = base
        ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Expand files and directories into a sorted list of `.qasm` paths.
pub fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, HarnessError> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            for entry in std::fs::read_dir(input)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "qasm") {
                    files.push(path);
                }
            }
        } else {
            files.push(input.clone());
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

#[derive(Debug, Error)]
enum TrialError {
    #[error(transparent)]
    Initial(#[from] InitialError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
}

#[allow(clippy::too_many_arguments)]
fn initial_mapping_for(
    engine: InitialEngine,
    circuit: &Circuit,
    dag: &DependencyDag,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    router: &RouterConfig,
    budget: usize,
    seed: u64,
) -> Result<Mapping, InitialError> {
    match engine {
        InitialEngine::Random => Ok(random_mapping(circuit.num_qubits, model, seed)?),
        InitialEngine::Sabre => sabre_initial(circuit, dag, model, bundle, router, budget, seed),
        InitialEngine::Hsa => {
            let config = AnnealConfig {
                mapping_call_budget: budget,
                seed,
                ..AnnealConfig::default()
            };
            anneal_initial(circuit, dag, model, bundle, router, &config)
        }
    }
}

struct BenchmarkOutcome {
    report: BenchmarkReport,
    best_routed: Option<RoutedCircuit>,
    failed: bool,
    verification_failed: bool,
}

fn run_benchmark(
    path: &Path,
    file_index: usize,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    config: &RunConfig,
) -> BenchmarkOutcome {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let started = Instant::now();

    let fail = |status: String| BenchmarkOutcome {
        report: BenchmarkReport {
            benchmark: name.clone(),
            status,
            n: 0,
            g_all: 0,
            original_cx: 0,
            g: 0.0,
            g_min: 0,
            time_ns: 0.0,
            fidelity_proxy: 0.0,
            runtime_s: 0.0,
            trials: vec![],
        },
        best_routed: None,
        failed: true,
        verification_failed: false,
    };

    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return fail(format!("read error: {e}")),
    };
    let circuit = match parse_qasm(&source) {
        Ok(c) => c,
        Err(e) => return fail(format!("parse error: {e}")),
    };
    if circuit.num_qubits > model.num_qubits() {
        return fail(format!(
            "circuit uses {} qubits but the device has {}",
            circuit.num_qubits,
            model.num_qubits()
        ));
    }
    let dag = build_dag(&circuit);

    let mut trials = Vec::with_capacity(config.trials);
    let mut routed_circuits = Vec::with_capacity(config.trials);
    for trial in 0..config.trials.max(1) {
        let seed = derive_seed(config.seed, file_index as u64, trial as u64);
        let result: Result<RoutedCircuit, TrialError> = initial_mapping_for(
            config.initial,
            &circuit,
            &dag,
            model,
            bundle,
            &config.router,
            config.mapping_call_budget,
            seed,
        )
        .map_err(TrialError::from)
        .and_then(|mapping| {
            route(&circuit, &dag, model, bundle, &mapping, &config.router).map_err(TrialError::from)
        });
        let routed = match result {
            Ok(r) => r,
            Err(e) => return fail(format!("trial {trial}: {e}")),
        };
        trials.push(TrialMetrics {
            trial,
            added_cnots: routed.added_cnot_count(),
            swaps: routed.swap_count(),
            bridges: routed.bridge_count(),
            exec_time_ns: estimate_execution_time(&routed, model),
            fidelity_proxy: fidelity_proxy(&routed, model),
            compliant: routed.is_topology_compliant(model),
            equivalent: None,
        });
        routed_circuits.push(routed);
    }

    let best_index = trials
        .iter()
        .enumerate()
        .min_by_key(|(_, t)| t.added_cnots)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut verification_failed = trials.iter().any(|t| !t.compliant);

    // Exact equivalence check of the emitted artifact, when feasible.
    match verify_equivalence(&circuit, &routed_circuits[best_index]) {
        Ok(ok) => {
            trials[best_index].equivalent = Some(ok);
            if !ok {
                verification_failed = true;
            }
        }
        Err(SimulationError::TooManyQubits { .. }) => {}
    }

    let g_mean = trials.iter().map(|t| t.added_cnots as f64).sum::<f64>() / trials.len() as f64;
    let g_min = trials.iter().map(|t| t.added_cnots).min().unwrap_or(0);
    let best = &trials[best_index];

    BenchmarkOutcome {
        report: BenchmarkReport {
            benchmark: name,
            status: "ok".to_string(),
            n: circuit.num_qubits,
            g_all: circuit.gates.len(),
            original_cx: circuit.cx_count(),
            g: g_mean,
            g_min,
            time_ns: best.exec_time_ns,
            fidelity_proxy: best.fidelity_proxy,
            runtime_s: started.elapsed().as_secs_f64(),
            trials,
        },
        best_routed: Some(routed_circuits.swap_remove(best_index)),
        failed: false,
        verification_failed,
    }
}

/// Route every benchmark `trials` times, verify the emitted artifacts, write
/// reports and the best routed QASM per benchmark, and tally failures.
pub fn run(config: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let model = HardwareModel::load_calibration(&config.calibration)?;
    let bundle = DistanceBundle::build(&model, config.router.alphas)?;
    let files = collect_inputs(&config.inputs)?;

    let outcomes: Vec<BenchmarkOutcome> = files
        .par_iter()
        .enumerate()
        .map(|(index, path)| run_benchmark(path, index, &model, &bundle, config))
        .collect();

    let input_errors = outcomes.iter().filter(|o| o.failed).count();
    let verification_failures = outcomes.iter().filter(|o| o.verification_failed).count();

    let report = MetricsReport {
        fidelity_note:
            "fidelity_proxy is an analytic per-gate success-rate product, not a hardware \
             measurement"
                .to_string(),
        benchmarks: outcomes.iter().map(|o| o.report.clone()).collect(),
    };

    if let Some(out_dir) = &config.out_dir {
        let routed_dir = out_dir.join("routed");
        std::fs::create_dir_all(&routed_dir)?;
        std::fs::write(out_dir.join("report.json"), report.to_json()?)?;
        std::fs::write(out_dir.join("report.csv"), report.to_csv())?;
        for outcome in &outcomes {
            if let Some(routed) = &outcome.best_routed {
                let file = routed_dir.join(format!("{}_routed.qasm", outcome.report.benchmark));
                std::fs::write(file, emit_qasm(routed))?;
            }
        }
    }

    Ok(RunOutcome {
        report,
        input_errors,
        verification_failures,
    })
}

/// Route each benchmark with the configured heuristic and with the swap-only
/// hop-count baseline, reusing identical initial mappings, and tabulate the
/// added-gate deltas.
pub fn compare_baseline(config: &RunConfig) -> Result<ComparisonReport, HarnessError> {
    let model = HardwareModel::load_calibration(&config.calibration)?;
    let bundle = DistanceBundle::build(&model, config.router.alphas)?;
    let baseline_router = RouterConfig {
        alphas: Alphas::hops_only(),
        bridge_enabled: false,
        ..config.router
    };
    let baseline_bundle = DistanceBundle::build(&model, baseline_router.alphas)?;
    let files = collect_inputs(&config.inputs)?;

    let rows: Vec<ComparisonRow> = files
        .par_iter()
        .enumerate()
        .map(|(index, path)| {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            let fail = |status: String| ComparisonRow {
                benchmark: name.clone(),
                status,
                n: 0,
                g_all: 0,
                g_ha: 0.0,
                g_min_ha: 0,
                g_base: 0.0,
                g_min_base: 0,
                delta_g_pct: None,
                delta_g_min_pct: None,
            };
            let source = match std::fs::read_to_string(path) {
                Ok(s) => s,
                Err(e) => return fail(format!("read error: {e}")),
            };
            let circuit = match parse_qasm(&source) {
                Ok(c) => c,
                Err(e) => return fail(format!("parse error: {e}")),
            };
            if circuit.num_qubits > model.num_qubits() {
                return fail("circuit larger than device".to_string());
            }
            let dag = build_dag(&circuit);

            let mut ha_added = Vec::new();
            let mut base_added = Vec::new();
            for trial in 0..config.trials.max(1) {
                let seed = derive_seed(config.seed, index as u64, trial as u64);
                let mapping = match initial_mapping_for(
                    config.initial,
                    &circuit,
                    &dag,
                    &model,
                    &bundle,
                    &config.router,
                    config.mapping_call_budget,
                    seed,
                ) {
                    Ok(m) => m,
                    Err(e) => return fail(format!("trial {trial}: {e}")),
                };
                let ha = route(&circuit, &dag, &model, &bundle, &mapping, &config.router);
                let base = route(
                    &circuit,
                    &dag,
                    &model,
                    &baseline_bundle,
                    &mapping,
                    &baseline_router,
                );
                match (ha, base) {
                    (Ok(a), Ok(b)) => {
                        ha_added.push(a.added_cnot_count());
                        base_added.push(b.added_cnot_count());
                    }
                    (Err(e), _) | (_, Err(e)) => return fail(format!("trial {trial}: {e}")),
                }
            }

            let mean = |v: &[usize]| v.iter().sum::<usize>() as f64 / v.len() as f64;
            let g_ha = mean(&ha_added);
            let g_base = mean(&base_added);
            let g_min_ha = *ha_added.iter().min().unwrap();
            let g_min_base = *base_added.iter().min().unwrap();
            let pct = |ha: f64, base: f64| {
                if base > 0.0 {
                    Some(100.0 * (ha - base) / base)
                } else if ha == 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            };
            ComparisonRow {
                benchmark: name,
                status: "ok".to_string(),
                n: circuit.num_qubits,
                g_all: circuit.gates.len(),
                g_ha,
                g_min_ha,
                g_base,
                g_min_base,
                delta_g_pct: pct(g_ha, g_base),
                delta_g_min_pct: pct(g_min_ha as f64, g_min_base as f64),
            }
        })
        .collect();

    let report = ComparisonReport { rows };
    if let Some(out_dir) = &config.out_dir {
        std::fs::create_dir_all(out_dir)?;
        std::fs::write(out_dir.join("comparison.json"), report.to_json()?)?;
        std::fs::write(out_dir.join("comparison.csv"), report.to_csv())?;
    }
    Ok(report)
}
