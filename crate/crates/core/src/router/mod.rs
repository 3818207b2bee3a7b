//! The routing pass: walk the dependency DAG, execute gates whose physical
//! operands are coupled, and insert SWAP or Bridge gates chosen by the
//! calibration-weighted heuristic when the front layer is stuck.

mod heuristic;
mod layers;

pub use heuristic::{find_swap_candidates, score_swap, select_action, Action, SwapScore};
pub use layers::LayerState;

use thiserror::Error;

use crate::circuit::{Circuit, GateKind, OneQubitGate};
use crate::dag::DependencyDag;
use crate::distance::{Alphas, DistanceBundle};
use crate::hardware::HardwareModel;
use crate::mapping::Mapping;

#[derive(Debug, Error)]
pub enum RoutingError {
    #[error("initial mapping covers {mapped} logical qubits but the circuit declares {required}")]
    MappingSize { mapped: usize, required: usize },
    #[error("mapping addresses {mapped} physical qubits but the device has {device}")]
    DeviceSize { mapped: usize, device: usize },
    #[error("look-ahead weight must be non-negative, got {0}")]
    NegativeLookaheadWeight(f64),
    #[error("routing exceeded the {cap}-insertion budget without finishing; heuristic livelock")]
    InsertionCapExceeded { cap: usize },
}

/// Tunables of a routing run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouterConfig {
    pub alphas: Alphas,
    /// Weight of the extended-layer term in the swap cost.
    pub lookahead_weight: f64,
    /// Maximum number of two-qubit gates kept in the look-ahead window.
    pub extended_size: usize,
    pub bridge_enabled: bool,
    /// Stream seed for the stochastic initial-mapping engines; the routing
    /// pass itself is deterministic.
    pub seed: u64,
}

impl Default for RouterConfig {
    fn default() -> Self {
        RouterConfig {
            alphas: Alphas::default(),
            lookahead_weight: 0.5,
            extended_size: 20,
            bridge_enabled: true,
            seed: 0,
        }
    }
}

/// One operation of a routed circuit, over physical qubit indices.
#[derive(Debug, Clone, PartialEq)]
pub enum RoutedOp {
    Cx {
        control: usize,
        target: usize,
    },
    OneQubit {
        gate: OneQubitGate,
        params: Vec<f64>,
        qubit: usize,
    },
    Measure {
        qubit: usize,
        cbit: usize,
    },
    /// Exchange of two physical sites; expands to three CNOTs.
    Swap {
        a: usize,
        b: usize,
    },
    /// In-place CNOT between qubits at hop distance two; expands to four
    /// CNOTs and leaves the mapping unchanged.
    Bridge {
        control: usize,
        middle: usize,
        target: usize,
    },
}

impl RoutedOp {
    /// The directed CNOTs this operation expands to on hardware.
    pub fn expanded_cx(&self) -> Vec<(usize, usize)> {
        match *self {
            RoutedOp::Cx { control, target } => vec![(control, target)],
            RoutedOp::Swap { a, b } => vec![(a, b), (b, a), (a, b)],
            RoutedOp::Bridge {
                control,
                middle,
                target,
            } => vec![
                (middle, target),
                (control, middle),
                (middle, target),
                (control, middle),
            ],
            _ => vec![],
        }
    }
}

/// A hardware-compliant circuit together with the mapping it starts and ends
/// with.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    pub num_physical: usize,
    pub num_logical: usize,
    pub num_clbits: usize,
    pub ops: Vec<RoutedOp>,
    pub initial_mapping: Mapping,
    pub final_mapping: Mapping,
    pub original_cx_count: usize,
}

impl RoutedCircuit {
    pub fn swap_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, RoutedOp::Swap { .. }))
            .count()
    }

    pub fn bridge_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, RoutedOp::Bridge { .. }))
            .count()
    }

    /// CNOTs added by routing: three per SWAP and three net per Bridge.
    pub fn added_cnot_count(&self) -> usize {
        3 * (self.swap_count() + self.bridge_count())
    }

    /// Every directed CNOT the circuit executes, with SWAPs and Bridges
    /// expanded.
    pub fn emitted_cx(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ops.iter().flat_map(|op| op.expanded_cx())
    }

    /// True when every emitted CNOT acts on a coupling edge.
    pub fn is_topology_compliant(&self, model: &HardwareModel) -> bool {
        self.emitted_cx().all(|(c, t)| model.has_edge(c, t))
    }
}

fn is_executable(
    circuit: &Circuit,
    gate_id: usize,
    mapping: &Mapping,
    model: &HardwareModel,
) -> bool {
    let gate = &circuit.gates[gate_id];
    match gate.kind {
        GateKind::Cx => model.has_edge(mapping.phys(gate.control()), mapping.phys(gate.target())),
        _ => true,
    }
}

fn emit_gate(ops: &mut Vec<RoutedOp>, circuit: &Circuit, gate_id: usize, mapping: &Mapping) {
    let gate = &circuit.gates[gate_id];
    match &gate.kind {
        GateKind::Cx => ops.push(RoutedOp::Cx {
            control: mapping.phys(gate.control()),
            target: mapping.phys(gate.target()),
        }),
        GateKind::OneQubit { gate: g, params } => ops.push(RoutedOp::OneQubit {
            gate: *g,
            params: params.clone(),
            qubit: mapping.phys(gate.qubits[0]),
        }),
        GateKind::Measure { cbit } => ops.push(RoutedOp::Measure {
            qubit: mapping.phys(gate.qubits[0]),
            cbit: *cbit,
        }),
        // Barriers order the DAG but produce no hardware operation.
        GateKind::Barrier => {}
    }
}

/// Route a circuit onto a device starting from the given mapping.
///
/// The loop alternates two phases: retire every front-layer gate whose
/// physical operands are coupled (one-qubit gates, measurements and barriers
/// always retire), then, if gates remain, insert the SWAP or Bridge chosen by
/// [`select_action`] and continue. Gate insertions are capped at
/// `10 * gates * qubits`; exceeding the cap signals a heuristic livelock and
/// aborts rather than looping forever.
pub fn route(
    circuit: &Circuit,
    dag: &DependencyDag,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    initial_mapping: &Mapping,
    config: &RouterConfig,
) -> Result<RoutedCircuit, RoutingError> {
    if initial_mapping.num_logical() != circuit.num_qubits {
        return Err(RoutingError::MappingSize {
            mapped: initial_mapping.num_logical(),
            required: circuit.num_qubits,
        });
    }
    if initial_mapping.num_physical() != model.num_qubits() {
        return Err(RoutingError::DeviceSize {
            mapped: initial_mapping.num_physical(),
            device: model.num_qubits(),
        });
    }
    if config.lookahead_weight.is_nan() || config.lookahead_weight < 0.0 {
        return Err(RoutingError::NegativeLookaheadWeight(
            config.lookahead_weight,
        ));
    }

    let mut mapping = initial_mapping.clone();
    let mut layers = LayerState::new(dag);
    let mut ops = Vec::new();
    let cap = 10 * circuit.gates.len().max(1) * model.num_qubits();
    let mut insertions = 0usize;

    loop {
        // Retire everything currently executable, smallest gate id first.
        loop {
            let next = layers
                .front()
                .iter()
                .copied()
                .find(|&g| is_executable(circuit, g, &mapping, model));
            match next {
                Some(g) => {
                    emit_gate(&mut ops, circuit, g, &mapping);
                    layers.retire(g, dag);
                }
                None => break,
            }
        }
        if layers.all_executed() {
            break;
        }

        if insertions >= cap {
            return Err(RoutingError::InsertionCapExceeded { cap });
        }
        insertions += 1;

        layers.refresh_extended(circuit, dag, config.extended_size);
        let front: Vec<usize> = layers.front().iter().copied().collect();
        match select_action(
            circuit,
            dag,
            &front,
            layers.extended(),
            &mapping,
            bundle,
            model,
            config,
        ) {
            Action::Swap { edge } => {
                ops.push(RoutedOp::Swap {
                    a: edge.0,
                    b: edge.1,
                });
                mapping.swap_physical(edge.0, edge.1);
            }
            Action::Bridge {
                gate,
                control,
                middle,
                target,
            } => {
                ops.push(RoutedOp::Bridge {
                    control,
                    middle,
                    target,
                });
                layers.retire(gate, dag);
            }
        }
    }

    Ok(RoutedCircuit {
        num_physical: model.num_qubits(),
        num_logical: circuit.num_qubits,
        num_clbits: circuit.num_clbits,
        ops,
        initial_mapping: initial_mapping.clone(),
        final_mapping: mapping,
        original_cx_count: circuit.cx_count(),
    })
}
