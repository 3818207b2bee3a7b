//! Shared generators and independent oracles for the integration and
//! acceptance suites. Everything here deliberately avoids the library's own
//! shortest-path and replay code paths.

// Each test binary uses a different subset of these helpers; index loops
// read better than iterator chains for matrix oracles.
#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::collections::VecDeque;
use std::path::PathBuf;

use rand::Rng;

use harq_core::circuit::{Circuit, GateKind, OneQubitGate};
use harq_core::dag::build_dag;
use harq_core::hardware::{EdgeCalibration, HardwareModel};
use harq_core::router::{RoutedCircuit, RoutedOp};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(name)
}

pub fn valencia() -> HardwareModel {
    HardwareModel::load_calibration(fixture_path("calibrations/valencia.json")).unwrap()
}

pub fn almaden() -> HardwareModel {
    HardwareModel::load_calibration(fixture_path("calibrations/almaden.json")).unwrap()
}

/// Random connected device: a random spanning tree plus extra edges, with
/// random directed calibration values.
pub fn random_connected_model(rng: &mut impl Rng, max_qubits: usize) -> HardwareModel {
    let n = rng.gen_range(2..=max_qubits);
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        seen.insert((u, v));
        edges.push((u, v));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && seen.insert((a, b)) {
            edges.push((a, b));
        }
    }
    let calibrated: Vec<EdgeCalibration> = edges
        .into_iter()
        .map(|(a, b)| EdgeCalibration {
            q0: a,
            q1: b,
            cx_error_01: Some(rng.gen_range(0.001..0.08)),
            cx_error_10: Some(rng.gen_range(0.001..0.08)),
            cx_time_01_ns: Some(rng.gen_range(100.0..900.0)),
            cx_time_10_ns: Some(rng.gen_range(100.0..900.0)),
        })
        .collect();
    let readout = (0..n).map(|_| rng.gen_range(0.0..0.1)).collect();
    HardwareModel::new(n, &calibrated, Some(readout)).unwrap()
}

/// All-pairs hop counts by breadth-first search; the oracle for the
/// Floyd-Warshall hop matrix.
pub fn bfs_all_pairs(model: &HardwareModel) -> Vec<Vec<u32>> {
    let n = model.num_qubits();
    let mut dist = vec![vec![u32::MAX; n]; n];
    for start in 0..n {
        dist[start][start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            for &nb in model.neighbours(q) {
                if dist[start][nb] == u32::MAX {
                    dist[start][nb] = dist[start][q] + 1;
                    queue.push_back(nb);
                }
            }
        }
    }
    dist
}

/// Minimum additive path weight between every pair by exhaustive simple-path
/// enumeration; the oracle for the error and duration matrices. Only viable
/// for small graphs.
pub fn exhaustive_min_path(
    model: &HardwareModel,
    edge_weight: &dyn Fn(usize, usize) -> f64,
) -> Vec<Vec<f64>> {
    let n = model.num_qubits();
    let mut best = vec![vec![f64::INFINITY; n]; n];
    for start in 0..n {
        best[start][start] = 0.0;
        let mut visited = vec![false; n];
        visited[start] = true;
        fn dfs(
            model: &HardwareModel,
            edge_weight: &dyn Fn(usize, usize) -> f64,
            at: usize,
            weight: f64,
            visited: &mut Vec<bool>,
            best: &mut Vec<f64>,
        ) {
            for &nb in model.neighbours(at) {
                if visited[nb] {
                    continue;
                }
                let w = weight + edge_weight(at, nb);
                if w < best[nb] {
                    best[nb] = w;
                }
                visited[nb] = true;
                dfs(model, edge_weight, nb, w, visited, best);
                visited[nb] = false;
            }
        }
        let mut row = std::mem::take(&mut best[start]);
        dfs(model, edge_weight, start, 0.0, &mut visited, &mut row);
        best[start] = row;
    }
    best
}

/// Random circuit over `2..=max_qubits` qubits with at most `max_gates`
/// gates, biased to include superposing one-qubit gates so that statevector
/// comparison is sensitive to every CNOT.
pub fn random_circuit(
    rng: &mut impl Rng,
    min_qubits: usize,
    max_qubits: usize,
    max_gates: usize,
) -> Circuit {
    let n = rng.gen_range(min_qubits..=max_qubits);
    let g = rng.gen_range(1..=max_gates);
    let mut circuit = Circuit::new(n, n);
    for _ in 0..g {
        let draw: f64 = rng.gen();
        if draw < 0.40 || n == 1 {
            let gate = match rng.gen_range(0..6) {
                0 => OneQubitGate::H,
                1 => OneQubitGate::T,
                2 => OneQubitGate::S,
                3 => OneQubitGate::X,
                4 => OneQubitGate::Rz,
                _ => OneQubitGate::Ry,
            };
            let params = match gate {
                OneQubitGate::Rz | OneQubitGate::Ry => {
                    vec![rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)]
                }
                _ => vec![],
            };
            let q = rng.gen_range(0..n);
            circuit.push(GateKind::OneQubit { gate, params }, vec![q]);
        } else if draw < 0.95 {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            circuit.push(GateKind::Cx, vec![a, b]);
        } else {
            let q = rng.gen_range(0..n);
            circuit.push(GateKind::Measure { cbit: q }, vec![q]);
        }
    }
    circuit
}

/// One step of the routed circuit replayed in the logical frame.
#[derive(Debug, Clone, PartialEq)]
pub enum ReplayedGate {
    Cx(usize, usize),
    OneQubit(OneQubitGate, Vec<f64>, usize),
    Measure(usize, usize),
}

/// Replay a routed circuit while tracking the evolving physical-to-logical
/// map: SWAPs permute the map, bridges replay as the logical CNOT they
/// execute.
pub fn replay_logical(routed: &RoutedCircuit) -> Vec<ReplayedGate> {
    let mut phys_to_log: Vec<Option<usize>> = vec![None; routed.num_physical];
    for l in 0..routed.num_logical {
        phys_to_log[routed.initial_mapping.phys(l)] = Some(l);
    }
    let mut replay = Vec::new();
    for op in &routed.ops {
        match op {
            RoutedOp::Cx { control, target } => replay.push(ReplayedGate::Cx(
                phys_to_log[*control].expect("CX on occupied site"),
                phys_to_log[*target].expect("CX on occupied site"),
            )),
            RoutedOp::OneQubit {
                gate,
                params,
                qubit,
            } => replay.push(ReplayedGate::OneQubit(
                *gate,
                params.clone(),
                phys_to_log[*qubit].expect("gate on occupied site"),
            )),
            RoutedOp::Measure { qubit, cbit } => replay.push(ReplayedGate::Measure(
                phys_to_log[*qubit].expect("measure on occupied site"),
                *cbit,
            )),
            RoutedOp::Swap { a, b } => phys_to_log.swap(*a, *b),
            RoutedOp::Bridge {
                control, target, ..
            } => replay.push(ReplayedGate::Cx(
                phys_to_log[*control].expect("bridge control occupied"),
                phys_to_log[*target].expect("bridge target occupied"),
            )),
        }
    }
    replay
}

fn matches_gate(gate: &harq_core::circuit::GateNode, replayed: &ReplayedGate) -> bool {
    match (&gate.kind, replayed) {
        (GateKind::Cx, ReplayedGate::Cx(c, t)) => gate.qubits == vec![*c, *t],
        (GateKind::OneQubit { gate: g, params }, ReplayedGate::OneQubit(rg, rp, q)) => {
            g == rg && params == rp && gate.qubits == vec![*q]
        }
        (GateKind::Measure { cbit }, ReplayedGate::Measure(q, c)) => {
            cbit == c && gate.qubits == vec![*q]
        }
        _ => false,
    }
}

/// True when the replayed logical sequence is a dependency-respecting
/// execution of exactly the original gate list (barriers excepted).
pub fn replay_is_valid_execution(original: &Circuit, replay: &[ReplayedGate]) -> bool {
    let dag = build_dag(original);
    let mut remaining: Vec<usize> = (0..original.gates.len()).map(|g| dag.indegree(g)).collect();
    let mut executed = vec![false; original.gates.len()];
    let mut ready: std::collections::BTreeSet<usize> = (0..original.gates.len())
        .filter(|&g| remaining[g] == 0)
        .collect();

    let retire = |g: usize,
                  ready: &mut std::collections::BTreeSet<usize>,
                  remaining: &mut Vec<usize>,
                  executed: &mut Vec<bool>| {
        ready.remove(&g);
        executed[g] = true;
        for &s in dag.successors(g) {
            remaining[s] -= 1;
            if remaining[s] == 0 {
                ready.insert(s);
            }
        }
    };

    for step in replay {
        // Barriers are invisible in the replay; retire them as they become
        // ready.
        loop {
            let barrier = ready
                .iter()
                .copied()
                .find(|&g| matches!(original.gates[g].kind, GateKind::Barrier));
            match barrier {
                Some(b) => retire(b, &mut ready, &mut remaining, &mut executed),
                None => break,
            }
        }
        let matched = ready
            .iter()
            .copied()
            .find(|&g| matches_gate(&original.gates[g], step));
        match matched {
            Some(g) => retire(g, &mut ready, &mut remaining, &mut executed),
            None => return false,
        }
    }
    loop {
        let barrier = ready
            .iter()
            .copied()
            .find(|&g| matches!(original.gates[g].kind, GateKind::Barrier));
        match barrier {
            Some(b) => retire(b, &mut ready, &mut remaining, &mut executed),
            None => break,
        }
    }
    executed.iter().all(|&e| e)
}
