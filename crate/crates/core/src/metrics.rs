//! Post-routing estimates: added-gate counts, an as-soon-as-possible
//! execution-time estimate, and an analytic fidelity proxy.
//!
//! The fidelity proxy multiplies per-CNOT success rates and per-measured-
//! qubit readout success rates. It stands in for a hardware-measured success
//! rate, which cannot be obtained without running on a device; reports label
//! it accordingly.

use std::collections::BTreeSet;

use crate::hardware::HardwareModel;
use crate::router::{RoutedCircuit, RoutedOp};

/// CNOTs added by routing; three per SWAP and three net per Bridge.
pub fn count_added_gates(routed: &RoutedCircuit) -> usize {
    routed.added_cnot_count()
}

/// Makespan of the routed circuit in nanoseconds under an ASAP schedule:
/// every gate starts when all its operand qubits are free and occupies them
/// for its calibrated duration. One-qubit gates take `one_qubit_gate_ns`.
pub fn estimate_execution_time_with(
    routed: &RoutedCircuit,
    model: &HardwareModel,
    one_qubit_gate_ns: f64,
) -> f64 {
    let mut ready = vec![0.0f64; routed.num_physical];
    for op in &routed.ops {
        match op {
            RoutedOp::OneQubit { qubit, .. } => {
                ready[*qubit] += one_qubit_gate_ns;
            }
            RoutedOp::Measure { .. } => {}
            other => {
                for (c, t) in other.expanded_cx() {
                    let start = ready[c].max(ready[t]);
                    let end = start + model.cnot_time(c, t);
                    ready[c] = end;
                    ready[t] = end;
                }
            }
        }
    }
    ready.into_iter().fold(0.0, f64::max)
}

/// [`estimate_execution_time_with`] with zero-duration one-qubit gates;
/// two-qubit gates dominate by an order of magnitude on current devices.
pub fn estimate_execution_time(routed: &RoutedCircuit, model: &HardwareModel) -> f64 {
    estimate_execution_time_with(routed, model, 0.0)
}

/// Product of per-CNOT success probabilities over every emitted CNOT, times
/// readout success for every measured qubit.
pub fn fidelity_proxy(routed: &RoutedCircuit, model: &HardwareModel) -> f64 {
    let mut fidelity = 1.0;
    for (c, t) in routed.emitted_cx() {
        fidelity *= 1.0 - model.cnot_error(c, t);
    }
    let measured: BTreeSet<usize> = routed
        .ops
        .iter()
        .filter_map(|op| match op {
            RoutedOp::Measure { qubit, .. } => Some(*qubit),
            _ => None,
        })
        .collect();
    for q in measured {
        fidelity *= 1.0 - model.readout_error(q);
    }
    fidelity
}
