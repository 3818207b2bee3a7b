//! Front and extended layer bookkeeping over the dependency DAG.

use std::collections::BTreeSet;

use crate::circuit::Circuit;
use crate::dag::DependencyDag;

/// Execution state of a routing run: which gates are retired, which are
/// ready (the front layer), and the bounded look-ahead window of upcoming
/// two-qubit gates (the extended layer).
#[derive(Debug, Clone)]
pub struct LayerState {
    executed: Vec<bool>,
    remaining_preds: Vec<usize>,
    front: BTreeSet<usize>,
    extended: Vec<usize>,
    executed_count: usize,
    /// Smallest topo position that might still be pending; scan cursor for
    /// extended-layer rebuilds.
    first_pending: usize,
}

impl LayerState {
    pub fn new(dag: &DependencyDag) -> Self {
        let n = dag.num_gates();
        let remaining_preds: Vec<usize> = (0..n).map(|g| dag.indegree(g)).collect();
        let front = (0..n).filter(|&g| remaining_preds[g] == 0).collect();
        LayerState {
            executed: vec![false; n],
            remaining_preds,
            front,
            extended: Vec::new(),
            executed_count: 0,
            first_pending: 0,
        }
    }

    /// Gates whose predecessors have all executed, ascending by id.
    pub fn front(&self) -> &BTreeSet<usize> {
        &self.front
    }

    /// The current look-ahead window; valid after [`refresh_extended`].
    ///
    /// [`refresh_extended`]: LayerState::refresh_extended
    pub fn extended(&self) -> &[usize] {
        &self.extended
    }

    pub fn is_executed(&self, gate: usize) -> bool {
        self.executed[gate]
    }

    pub fn all_executed(&self) -> bool {
        self.executed_count == self.executed.len()
    }

    /// Mark a front-layer gate as executed and promote any successors whose
    /// dependencies are now satisfied.
    pub fn retire(&mut self, gate: usize, dag: &DependencyDag) {
        let was_front = self.front.remove(&gate);
        debug_assert!(was_front, "retired gate {gate} was not in the front layer");
        debug_assert!(!self.executed[gate]);
        self.executed[gate] = true;
        self.executed_count += 1;
        for &s in dag.successors(gate) {
            self.remaining_preds[s] -= 1;
            if self.remaining_preds[s] == 0 {
                self.front.insert(s);
            }
        }
    }

    /// Rebuild the extended layer: walk forward in topological order and
    /// collect up to `size` two-qubit gates that are neither executed nor in
    /// the front layer.
    pub fn refresh_extended(&mut self, circuit: &Circuit, dag: &DependencyDag, size: usize) {
        self.extended.clear();
        if size == 0 {
            return;
        }
        let order = dag.topo_order();
        while self.first_pending < order.len() && self.executed[order[self.first_pending]] {
            self.first_pending += 1;
        }
        for &gate in &order[self.first_pending..] {
            if self.extended.len() == size {
                break;
            }
            if self.executed[gate] || self.front.contains(&gate) {
                continue;
            }
            if circuit.gates[gate].is_two_qubit() {
                self.extended.push(gate);
            }
        }
    }
}
