//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with the measured numbers (visible with `--nocapture`).
//!
//! Run with `cargo test --test acceptance`.

// Index loops read better than iterator chains for matrix comparisons.
#![allow(clippy::needless_range_loop)]

mod common;

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use harq_core::circuit::{Circuit, GateKind, OneQubitGate};
use harq_core::dag::build_dag;
use harq_core::distance::{Alphas, DistanceBundle};
use harq_core::harness::{
    compare_baseline, derive_seed, run, InitialEngine, ReportFormat, RunConfig,
};
use harq_core::initial::{
    anneal_initial, metropolis_accept, random_mapping, routing_cost, AnnealConfig,
};
use harq_core::mapping::Mapping;
use harq_core::router::{find_swap_candidates, route, RoutedOp, RouterConfig};
use harq_core::sim::verify_equivalence_with_limit;

use common::{
    almaden, bfs_all_pairs, exhaustive_min_path, fixture_path, random_circuit,
    random_connected_model, valencia,
};

fn hops_only_config() -> RouterConfig {
    RouterConfig {
        alphas: Alphas::hops_only(),
        ..RouterConfig::default()
    }
}

/// X on q1 then the CX chain (0,1), (1,2), (2,3) over five declared qubits.
fn chain_fixture() -> Circuit {
    let mut c = Circuit::new(5, 0);
    c.push(
        GateKind::OneQubit {
            gate: OneQubitGate::X,
            params: vec![],
        },
        vec![1],
    );
    c.push(GateKind::Cx, vec![0, 1]);
    c.push(GateKind::Cx, vec![1, 2]);
    c.push(GateKind::Cx, vec![2, 3]);
    c
}

/// CX(0,1), CX(1,2), CX(0,3), CX(0,1), CX(1,2): the blocked middle gate sits
/// at hop distance two while the best swap damages both look-ahead gates.
fn bridge_fixture() -> Circuit {
    let mut c = Circuit::new(5, 0);
    c.push(GateKind::Cx, vec![0, 1]);
    c.push(GateKind::Cx, vec![1, 2]);
    c.push(GateKind::Cx, vec![0, 3]);
    c.push(GateKind::Cx, vec![0, 1]);
    c.push(GateKind::Cx, vec![1, 2]);
    c
}

#[test]
fn criterion_1_distance_matrices_match_independent_oracles() {
    let started = Instant::now();

    // Hop matrix against breadth-first search, exact, on 50 random devices.
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_connected_model(&mut rng, 20);
        let bundle = DistanceBundle::build(&model, Alphas::default()).unwrap();
        let oracle = bfs_all_pairs(&model);
        for a in 0..model.num_qubits() {
            for b in 0..model.num_qubits() {
                assert_eq!(bundle.hops(a, b), oracle[a][b], "hops({a},{b}) seed {seed}");
            }
        }
    }

    // Error and duration matrices against exhaustive simple-path
    // enumeration on 50 small devices, after identical normalisation.
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let model = random_connected_model(&mut rng, 8);
        let bundle = DistanceBundle::build(&model, Alphas::default()).unwrap();
        let n = model.num_qubits();
        let check = |raw: Vec<Vec<f64>>, actual: &dyn Fn(usize, usize) -> f64, label: &str| {
            let max = raw
                .iter()
                .flat_map(|row| row.iter().copied())
                .fold(0.0f64, f64::max);
            for a in 0..n {
                for b in 0..n {
                    let expected = if max > 0.0 { raw[a][b] / max } else { 0.0 };
                    assert!(
                        (actual(a, b) - expected).abs() <= 1e-12,
                        "{label}({a},{b}) seed {seed}: {} vs {expected}",
                        actual(a, b)
                    );
                }
            }
        };
        check(
            exhaustive_min_path(&model, &|a, b| model.swap_error_edge(a, b).unwrap()),
            &|a, b| bundle.error_norm(a, b),
            "error",
        );
        check(
            exhaustive_min_path(&model, &|a, b| model.swap_time_edge(a, b).unwrap()),
            &|a, b| bundle.time_norm(a, b),
            "time",
        );
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "oracle sweep took {elapsed:?}"
    );
    println!(
        "PASS criterion 1: distance matrices match BFS and path-enumeration oracles ({elapsed:?})"
    );
}

#[test]
fn criterion_2_worked_swap_selection_is_exact() {
    let model = valencia();
    // Fixture premise: the 1-2 link carries strictly lower swap error than
    // the 1-3 link.
    assert!(model.swap_error_edge(1, 2).unwrap() < model.swap_error_edge(1, 3).unwrap());

    let circuit = chain_fixture();
    let mapping = Mapping::identity(5, 5).unwrap();
    let candidates = find_swap_candidates(&circuit, &[3], &mapping, &model);
    assert_eq!(candidates, vec![(1, 2), (1, 3), (3, 4)]);

    let config = hops_only_config();
    let bundle = DistanceBundle::build(&model, config.alphas).unwrap();
    let dag = build_dag(&circuit);
    let routed = route(&circuit, &dag, &model, &bundle, &mapping, &config).unwrap();

    let swaps: Vec<_> = routed
        .ops
        .iter()
        .filter_map(|op| match op {
            RoutedOp::Swap { a, b } => Some((*a, *b)),
            _ => None,
        })
        .collect();
    assert_eq!(swaps, vec![(1, 2)], "exactly one swap, on sites 1 and 2");
    assert_eq!(routed.final_mapping.as_slice(), &[0, 2, 1, 3, 4]);
    println!(
        "PASS criterion 2: candidates {{(1,2),(1,3),(3,4)}}, swap (1,2), final mapping q0->0 q1->2 q2->1 q3->3 q4->4"
    );
}

#[test]
fn criterion_3_bridge_saves_half_the_added_gates() {
    let model = valencia();
    let circuit = bridge_fixture();
    let dag = build_dag(&circuit);
    let mapping = Mapping::identity(5, 5).unwrap();

    for alphas in [Alphas::hops_only(), Alphas::default()] {
        let bundle = DistanceBundle::build(&model, alphas).unwrap();
        let with_bridges = RouterConfig {
            alphas,
            ..RouterConfig::default()
        };
        let swap_only = RouterConfig {
            bridge_enabled: false,
            ..with_bridges
        };
        let bridged = route(&circuit, &dag, &model, &bundle, &mapping, &with_bridges).unwrap();
        let swapped = route(&circuit, &dag, &model, &bundle, &mapping, &swap_only).unwrap();
        assert_eq!(bridged.bridge_count(), 1);
        assert_eq!(bridged.added_cnot_count(), 3);
        assert_eq!(swapped.added_cnot_count(), 6);
        assert_eq!(2 * bridged.added_cnot_count(), swapped.added_cnot_count());
    }
    println!("PASS criterion 3: bridge route adds 3 CNOTs, swap-only adds 6 (exact 2x)");
}

#[test]
fn criterion_4_randomized_correctness_sweep() {
    let started = Instant::now();
    let engines = [
        InitialEngine::Sabre,
        InitialEngine::Hsa,
        InitialEngine::Random,
    ];
    let devices = [valencia(), almaden()];

    // 200 circuits: half small enough for the 5-qubit device, half up to 10
    // qubits for the 20-qubit device.
    let circuits: Vec<Circuit> = (0..200u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
            if seed % 2 == 0 {
                random_circuit(&mut rng, 2, 5, 60)
            } else {
                random_circuit(&mut rng, 6, 10, 60)
            }
        })
        .collect();

    let cases: Vec<(usize, usize, usize)> = (0..circuits.len())
        .flat_map(|c| {
            (0..devices.len()).flat_map(move |d| (0..engines.len()).map(move |e| (c, d, e)))
        })
        .filter(|&(c, d, _)| circuits[c].num_qubits <= devices[d].num_qubits())
        .collect();

    let ran: Vec<bool> = cases
        .par_iter()
        .map(|&(c, d, e)| {
            let circuit = &circuits[c];
            let model = &devices[d];
            let config = RouterConfig::default();
            let bundle = DistanceBundle::build(model, config.alphas).unwrap();
            let dag = build_dag(circuit);
            let seed = derive_seed(99, c as u64, (d * 3 + e) as u64);
            let mapping = match engines[e] {
                InitialEngine::Random => random_mapping(circuit.num_qubits, model, seed).unwrap(),
                InitialEngine::Sabre => harq_core::initial::sabre_initial(
                    circuit, &dag, model, &bundle, &config, 8, seed,
                )
                .unwrap(),
                InitialEngine::Hsa => anneal_initial(
                    circuit,
                    &dag,
                    model,
                    &bundle,
                    &config,
                    &AnnealConfig {
                        mapping_call_budget: 8,
                        seed,
                        ..AnnealConfig::default()
                    },
                )
                .unwrap(),
            };
            let routed = route(circuit, &dag, model, &bundle, &mapping, &config).unwrap();
            assert!(
                routed.is_topology_compliant(model),
                "case ({c},{d},{e}) not compliant"
            );
            assert!(
                verify_equivalence_with_limit(circuit, &routed, model.num_qubits()).unwrap(),
                "case ({c},{d},{e}) not equivalent"
            );
            true
        })
        .collect();

    let elapsed = started.elapsed();
    assert!(
        ran.len() >= 200,
        "sweep must cover every circuit at least once"
    );
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "sweep took {elapsed:?} for {} cases",
        ran.len()
    );
    println!(
        "PASS criterion 4: {} routed circuits, 100% topology compliance and statevector equivalence ({elapsed:?})",
        ran.len()
    );
}

#[test]
fn criterion_5_annealing_contract() {
    // Best-so-far monotonicity over 100 seeded runs.
    let circuit = chain_fixture();
    let dag = build_dag(&circuit);
    let model = valencia();
    let router = RouterConfig::default();
    let bundle = DistanceBundle::build(&model, router.alphas).unwrap();
    for seed in 0..100u64 {
        let config = AnnealConfig {
            seed,
            mapping_call_budget: 20,
            ..AnnealConfig::default()
        };
        // The annealer's starting placement is reproduced by the public
        // seeded constructor because both consume the stream identically.
        let start = random_mapping(circuit.num_qubits, &model, seed).unwrap();
        let start_cost = routing_cost(&circuit, &dag, &model, &bundle, &start, &router).unwrap();
        let best = anneal_initial(&circuit, &dag, &model, &bundle, &router, &config).unwrap();
        let best_cost = routing_cost(&circuit, &dag, &model, &bundle, &best, &router).unwrap();
        assert!(
            best_cost <= start_cost + 1e-12,
            "seed {seed}: {best_cost} > {start_cost}"
        );
    }

    // Acceptance probability against 1e5 Bernoulli samples, within three
    // standard errors, at both temperatures.
    let trials = 100_000u64;
    let worse_by = 0.5f64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for temperature in [1.0, 0.1] {
        let p = (-worse_by / temperature).exp();
        let accepted = (0..trials)
            .filter(|_| metropolis_accept(0.0, worse_by, temperature, &mut rng))
            .count() as f64;
        let rate = accepted / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (rate - p).abs() <= 3.0 * sigma,
            "T={temperature}: rate {rate} vs {p} (3 sigma = {})",
            3.0 * sigma
        );
    }
    println!("PASS criterion 5: best-so-far monotone on 100 runs; Metropolis rate within 3 sigma at T=1.0 and T=0.1");
}

/// Reports are byte-reproducible apart from the wall-clock runtime column,
/// which is masked before comparison; routed QASM artifacts must be
/// byte-identical with no masking.
#[test]
fn criterion_6_seeded_runs_are_reproducible() {
    let scrub_json = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("\"runtime_s\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let scrub_csv = |s: &str| -> String {
        s.lines()
            .map(|l| {
                l.rsplit_once(',')
                    .map(|(head, _)| head.to_string())
                    .unwrap_or_else(|| l.to_string())
            })
            .collect::<Vec<_>>()
            .join("\n")
    };

    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = tempfile::tempdir().unwrap();
        let config = RunConfig {
            inputs: vec![fixture_path("benchmarks")],
            calibration: fixture_path("calibrations/almaden.json"),
            router: RouterConfig::default(),
            initial: InitialEngine::Hsa,
            trials: 3,
            mapping_call_budget: 6,
            seed: 123,
            out_dir: Some(out.path().to_path_buf()),
            report_format: ReportFormat::Csv,
        };
        let outcome = run(&config).unwrap();
        assert_eq!(outcome.input_errors, 0);
        assert_eq!(outcome.verification_failures, 0);

        let json = std::fs::read_to_string(out.path().join("report.json")).unwrap();
        let csv = std::fs::read_to_string(out.path().join("report.csv")).unwrap();
        let mut routed: Vec<(String, String)> = std::fs::read_dir(out.path().join("routed"))
            .unwrap()
            .map(|e| {
                let path = e.unwrap().path();
                (
                    path.file_name().unwrap().to_string_lossy().into_owned(),
                    std::fs::read_to_string(&path).unwrap(),
                )
            })
            .collect();
        routed.sort();
        outputs.push((scrub_json(&json), scrub_csv(&csv), routed));
    }

    assert_eq!(outputs[0].0, outputs[1].0, "JSON reports differ");
    assert_eq!(outputs[0].1, outputs[1].1, "CSV reports differ");
    assert_eq!(outputs[0].2, outputs[1].2, "routed QASM artifacts differ");
    assert_eq!(outputs[0].2.len(), 10, "whole corpus routed");
    println!("PASS criterion 6: two seeded runs produced byte-identical artifacts and reports (runtime column masked)");
}

#[test]
fn criterion_7_tracked_comparison_against_swap_only_baseline() {
    let config = RunConfig {
        inputs: vec![fixture_path("benchmarks")],
        calibration: fixture_path("calibrations/almaden.json"),
        router: RouterConfig {
            alphas: Alphas::hops_only(),
            ..RouterConfig::default()
        },
        initial: InitialEngine::Random,
        trials: 10,
        mapping_call_budget: 100,
        seed: 2024,
        out_dir: None,
        report_format: ReportFormat::Csv,
    };
    let report = compare_baseline(&config).unwrap();
    assert_eq!(report.rows.len(), 10);
    let mut regressions = 0;
    for row in &report.rows {
        assert_eq!(row.status, "ok", "{}: {}", row.benchmark, row.status);
        let delta = row
            .delta_g_pct
            .map(|d| format!("{d:+.1}%"))
            .unwrap_or_else(|| "n/a".into());
        println!(
            "  {}: mean added {} (baseline {}) delta {}",
            row.benchmark, row.g_ha, row.g_base, delta
        );
        if row.g_ha > row.g_base {
            regressions += 1;
            println!(
                "  warning: {} added more gates than the swap-only baseline",
                row.benchmark
            );
        }
    }
    let mean = report.mean_delta_g_pct().unwrap_or(0.0);
    println!(
        "PASS criterion 7: tracked regression metric over {} circuits x 10 shared initial mappings; mean delta g {mean:+.1}%, {regressions} warning(s)",
        report.rows.len()
    );
}

#[test]
fn criterion_8_large_circuit_routes_within_budget() {
    let model = almaden();
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let mut circuit = Circuit::new(16, 0);
    for _ in 0..5_000 {
        let a = rng.gen_range(0..16);
        let mut b = rng.gen_range(0..16);
        while b == a {
            b = rng.gen_range(0..16);
        }
        circuit.push(GateKind::Cx, vec![a, b]);
    }
    let config = RouterConfig::default();
    let bundle = DistanceBundle::build(&model, config.alphas).unwrap();
    let dag = build_dag(&circuit);
    let mapping = random_mapping(16, &model, 1).unwrap();

    let started = Instant::now();
    let routed = route(&circuit, &dag, &model, &bundle, &mapping, &config).unwrap();
    let elapsed = started.elapsed();

    assert!(routed.is_topology_compliant(&model));
    assert_eq!(
        routed.emitted_cx().count(),
        5_000 + routed.added_cnot_count()
    );
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "routing 5000 CNOTs took {elapsed:?}"
    );
    println!(
        "PASS criterion 8: 16-qubit 5000-CNOT circuit routed in {elapsed:?} with {} added CNOTs",
        routed.added_cnot_count()
    );
}
