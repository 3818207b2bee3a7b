//! Gate dependency graph. A directed edge `(i, j)` means gate `i` is the most
//! recent earlier gate sharing a qubit with gate `j`, so `i` must execute
//! before `j`. Transitive dependencies are not duplicated.

use std::collections::BinaryHeap;

use crate::circuit::Circuit;

#[derive(Debug, Clone)]
pub struct DependencyDag {
    num_gates: usize,
    edges: Vec<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    indegree: Vec<usize>,
    topo_order: Vec<usize>,
    /// topo_position[gate] = rank of `gate` in `topo_order`.
    topo_position: Vec<usize>,
}

impl DependencyDag {
    pub fn num_gates(&self) -> usize {
        self.num_gates
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn successors(&self, gate: usize) -> &[usize] {
        &self.successors[gate]
    }

    pub fn indegree(&self, gate: usize) -> usize {
        self.indegree[gate]
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn topo_position(&self, gate: usize) -> usize {
        self.topo_position[gate]
    }
}

/// Build the dependency DAG of a circuit.
///
/// Every gate (including measurements and barriers) occupies a node; a
/// barrier's operands therefore fence all earlier gates on those qubits from
/// all later ones. The topological order is computed with Kahn's algorithm,
/// always picking the smallest ready id, which reproduces source order.
pub fn build_dag(circuit: &Circuit) -> DependencyDag {
    let n = circuit.gates.len();
    let mut last_touch: Vec<Option<usize>> = vec![None; circuit.num_qubits];
    let mut edges = Vec::new();
    let mut successors = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];

    for gate in &circuit.gates {
        let mut preds: Vec<usize> = gate.qubits.iter().filter_map(|&q| last_touch[q]).collect();
        preds.sort_unstable();
        preds.dedup();
        for p in preds {
            edges.push((p, gate.id));
            successors[p].push(gate.id);
            indegree[gate.id] += 1;
        }
        for &q in &gate.qubits {
            last_touch[q] = Some(gate.id);
        }
    }

    // Min-id Kahn pass; deterministic and stable under the forward-only edges.
    let mut remaining = indegree.clone();
    let mut ready: BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&g| remaining[g] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut topo_order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(g)) = ready.pop() {
        topo_order.push(g);
        for &s in &successors[g] {
            remaining[s] -= 1;
            if remaining[s] == 0 {
                ready.push(std::cmp::Reverse(s));
            }
        }
    }
    debug_assert_eq!(topo_order.len(), n, "dependency graph must be acyclic");

    let mut topo_position = vec![0usize; n];
    for (pos, &g) in topo_order.iter().enumerate() {
        topo_position[g] = pos;
    }

    DependencyDag {
        num_gates: n,
        edges,
        successors,
        indegree,
        topo_order,
        topo_position,
    }
}
