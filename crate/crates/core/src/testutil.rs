//! Shared fixtures for unit tests: small devices and the worked example
//! circuits used across modules.

use crate::circuit::{Circuit, GateKind, OneQubitGate};
use crate::hardware::{EdgeCalibration, HardwareModel};

fn edge(q0: usize, q1: usize, e01: f64, e10: f64, t01: f64, t10: f64) -> EdgeCalibration {
    EdgeCalibration {
        q0,
        q1,
        cx_error_01: Some(e01),
        cx_error_10: Some(e10),
        cx_time_01_ns: Some(t01),
        cx_time_10_ns: Some(t10),
    }
}

/// The 5-qubit T-shaped device: edges 0-1, 1-2, 1-3, 3-4, with the 1-2 link
/// calibrated strictly better than 1-3. Mirrors `calibrations/valencia.json`.
pub fn valencia_model() -> HardwareModel {
    HardwareModel::new(
        5,
        &[
            edge(0, 1, 0.0094, 0.0102, 270.0, 306.0),
            edge(1, 2, 0.0070, 0.0078, 334.0, 370.0),
            edge(1, 3, 0.0122, 0.0131, 462.0, 426.0),
            edge(3, 4, 0.0097, 0.0088, 348.0, 313.0),
        ],
        Some(vec![0.021, 0.034, 0.028, 0.019, 0.046]),
    )
    .unwrap()
}

/// A path of `n` qubits with uniform calibration.
pub fn line_model(n: usize) -> HardwareModel {
    let edges: Vec<EdgeCalibration> = (0..n - 1)
        .map(|i| edge(i, i + 1, 0.01, 0.01, 300.0, 300.0))
        .collect();
    HardwareModel::new(n, &edges, None).unwrap()
}

/// A fully connected device with uniform calibration; routing on it never
/// inserts gates.
pub fn complete_model(n: usize) -> HardwareModel {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push(edge(a, b, 0.01, 0.01, 300.0, 300.0));
        }
    }
    HardwareModel::new(n, &edges, None).unwrap()
}

/// X on q1 followed by the CX chain (0,1), (1,2), (2,3); under the linear
/// mapping on the T-shaped device only the last gate is blocked.
pub fn chain_fixture_circuit() -> Circuit {
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

/// Five CX gates on the T-shaped device under the identity mapping. Gates
/// CX(0,1) and CX(1,2) execute directly; CX(0,3) is stuck at hop distance
/// two while the look-ahead window holds CX(0,1) and CX(1,2) again. The best
/// swap (sites 0 and 1) would break both window gates, so a bridge executes
/// CX(0,3) in place and everything after it runs without further insertions.
pub fn bridge_fixture_circuit() -> Circuit {
    let mut c = Circuit::new(5, 0);
    c.push(GateKind::Cx, vec![0, 1]);
    c.push(GateKind::Cx, vec![1, 2]);
    c.push(GateKind::Cx, vec![0, 3]);
    c.push(GateKind::Cx, vec![0, 1]);
    c.push(GateKind::Cx, vec![1, 2]);
    c
}
