//! Swap-candidate enumeration, cost scoring, and the SWAP-versus-Bridge
//! decision.

use crate::circuit::Circuit;
use crate::dag::DependencyDag;
use crate::distance::DistanceBundle;
use crate::hardware::HardwareModel;
use crate::mapping::Mapping;
use crate::router::RouterConfig;

/// Outcome of scoring one swap candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapScore {
    /// Heuristic cost: mean post-swap distance over the front layer plus the
    /// weighted mean over the extended layer.
    pub cost: f64,
    /// Net improvement of the extended layer (current minus post-swap
    /// distance, summed). Negative means the swap hurts upcoming gates.
    pub effect: f64,
}

/// The gate the router decides to insert when the front layer is stuck.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Swap {
        edge: (usize, usize),
    },
    /// Execute front-layer gate `gate` in place via its common neighbour,
    /// leaving the mapping unchanged.
    Bridge {
        gate: usize,
        control: usize,
        middle: usize,
        target: usize,
    },
}

/// All coupling edges incident to the physical images of qubits used by the
/// front layer's two-qubit gates. Sorted and deduplicated.
pub fn find_swap_candidates(
    circuit: &Circuit,
    front: &[usize],
    mapping: &Mapping,
    model: &HardwareModel,
) -> Vec<(usize, usize)> {
    let mut candidates = Vec::new();
    for &gate_id in front {
        let gate = &circuit.gates[gate_id];
        if !gate.is_two_qubit() {
            continue;
        }
        for &q in &gate.qubits {
            let phys = mapping.phys(q);
            for &nb in model.neighbours(phys) {
                candidates.push((phys.min(nb), phys.max(nb)));
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    candidates
}

/// Score one candidate swap against the front and extended layers.
///
/// The swap is applied to a temporary copy of the mapping; the front-layer
/// term is the mean combined distance of its two-qubit gates under that
/// mapping, and the extended-layer term is weighted by `lookahead_weight`
/// and dropped entirely when the window is empty.
pub fn score_swap(
    circuit: &Circuit,
    swap: (usize, usize),
    front: &[usize],
    extended: &[usize],
    mapping: &Mapping,
    bundle: &DistanceBundle,
    lookahead_weight: f64,
) -> SwapScore {
    let mut temp = mapping.clone();
    temp.swap_physical(swap.0, swap.1);

    let mut front_sum = 0.0;
    let mut front_len = 0usize;
    for &gate_id in front {
        let gate = &circuit.gates[gate_id];
        if !gate.is_two_qubit() {
            continue;
        }
        front_sum += bundle.combined(temp.phys(gate.control()), temp.phys(gate.target()));
        front_len += 1;
    }
    debug_assert!(front_len > 0, "front layer must hold a blocked CX");
    let mut cost = front_sum / front_len.max(1) as f64;

    let mut effect = 0.0;
    if !extended.is_empty() {
        let mut extended_sum = 0.0;
        for &gate_id in extended {
            let gate = &circuit.gates[gate_id];
            let d_temp = bundle.combined(temp.phys(gate.control()), temp.phys(gate.target()));
            let d_current =
                bundle.combined(mapping.phys(gate.control()), mapping.phys(gate.target()));
            extended_sum += d_temp;
            effect += d_current - d_temp;
        }
        cost += lookahead_weight * extended_sum / extended.len() as f64;
    }

    SwapScore { cost, effect }
}

/// Choose the gate to insert for a stuck front layer.
///
/// The minimum-cost swap wins, with ties broken towards the smallest edge.
/// A Bridge replaces it only when bridges are enabled, the best swap has a
/// negative extended-layer effect, some front gate would become executable
/// (the earliest such gate in topological order is taken), and that gate's
/// endpoints sit at hop distance exactly two. The bridge middle qubit is the
/// common neighbour minimising the two directed CNOT error rates it uses.
#[allow(clippy::too_many_arguments)]
pub fn select_action(
    circuit: &Circuit,
    dag: &DependencyDag,
    front: &[usize],
    extended: &[usize],
    mapping: &Mapping,
    bundle: &DistanceBundle,
    model: &HardwareModel,
    config: &RouterConfig,
) -> Action {
    let candidates = find_swap_candidates(circuit, front, mapping, model);
    debug_assert!(
        !candidates.is_empty(),
        "connected device always has candidates"
    );

    let mut best_edge = candidates[0];
    let mut best_score = score_swap(
        circuit,
        best_edge,
        front,
        extended,
        mapping,
        bundle,
        config.lookahead_weight,
    );
    for &edge in &candidates[1..] {
        let score = score_swap(
            circuit,
            edge,
            front,
            extended,
            mapping,
            bundle,
            config.lookahead_weight,
        );
        // Strict comparison keeps the lexicographically smallest edge on ties
        // because candidates are sorted.
        if score.cost < best_score.cost {
            best_edge = edge;
            best_score = score;
        }
    }

    if config.bridge_enabled && best_score.effect < 0.0 {
        let mut temp = mapping.clone();
        temp.swap_physical(best_edge.0, best_edge.1);
        let unblocked = front
            .iter()
            .copied()
            .filter(|&g| circuit.gates[g].is_two_qubit())
            .filter(|&g| {
                let gate = &circuit.gates[g];
                model.has_edge(temp.phys(gate.control()), temp.phys(gate.target()))
            })
            .min_by_key(|&g| dag.topo_position(g));
        if let Some(gate_id) = unblocked {
            let gate = &circuit.gates[gate_id];
            let control = mapping.phys(gate.control());
            let target = mapping.phys(gate.target());
            if bundle.hops(control, target) == 2 {
                if let Some(middle) = bridge_middle(model, control, target) {
                    return Action::Bridge {
                        gate: gate_id,
                        control,
                        middle,
                        target,
                    };
                }
            }
        }
    }

    Action::Swap { edge: best_edge }
}

/// Common neighbour of `control` and `target` minimising the summed error of
/// the two directed CNOTs a bridge executes through it; smallest index on
/// ties.
fn bridge_middle(model: &HardwareModel, control: usize, target: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for &m in model.neighbours(control) {
        if !model.has_edge(m, target) {
            continue;
        }
        let cost = model.cnot_error(control, m) + model.cnot_error(m, target);
        if best.is_none_or(|(_, c)| cost < c) {
            best = Some((m, cost));
        }
    }
    best.map(|(m, _)| m)
}
