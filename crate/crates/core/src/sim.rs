//! Dense statevector simulation for small registers, and the exact
//! equivalence check between a routed circuit and its source circuit.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind, OneQubitGate};
use crate::router::{RoutedCircuit, RoutedOp};

/// Hard register-size limit of the public simulation entry points.
pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Error)]
pub enum SimulationError {
    #[error("register of {requested} qubits exceeds the {limit}-qubit simulation limit")]
    TooManyQubits { requested: usize, limit: usize },
}

/// State of a `k`-qubit register; qubit `q` is bit `q` of the amplitude
/// index.
#[derive(Debug, Clone)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0> over `num_qubits` qubits.
    pub fn zero(num_qubits: usize, limit: usize) -> Result<Self, SimulationError> {
        if num_qubits > limit {
            return Err(SimulationError::TooManyQubits {
                requested: num_qubits,
                limit,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>.
    pub fn overlap(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.num_qubits, other.num_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply_one_qubit(&mut self, m: [[Complex64; 2]; 2], qubit: usize) {
        let bit = 1usize << qubit;
        for base in 0..self.amps.len() {
            if base & bit != 0 {
                continue;
            }
            let a0 = self.amps[base];
            let a1 = self.amps[base | bit];
            self.amps[base] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[base | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        debug_assert_ne!(control, target);
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for base in 0..self.amps.len() {
            if base & cbit != 0 && base & tbit == 0 {
                self.amps.swap(base, base | tbit);
            }
        }
    }
}

/// The 2x2 matrix of a supported one-qubit gate.
pub fn one_qubit_matrix(gate: OneQubitGate, params: &[f64]) -> [[Complex64; 2]; 2] {
    let j = Complex64::new(0.0, 1.0);
    let c = |re: f64| Complex64::new(re, 0.0);
    let expi = |theta: f64| Complex64::new(0.0, theta).exp();
    let u3 = |theta: f64, phi: f64, lam: f64| {
        let (sin, cos) = (theta / 2.0).sin_cos();
        [
            [c(cos), -expi(lam) * sin],
            [expi(phi) * sin, expi(phi + lam) * cos],
        ]
    };
    match gate {
        OneQubitGate::U3 => u3(params[0], params[1], params[2]),
        OneQubitGate::U2 => u3(std::f64::consts::FRAC_PI_2, params[0], params[1]),
        OneQubitGate::U1 => [[c(1.0), c(0.0)], [c(0.0), expi(params[0])]],
        OneQubitGate::X => [[c(0.0), c(1.0)], [c(1.0), c(0.0)]],
        OneQubitGate::Y => [[c(0.0), -j], [j, c(0.0)]],
        OneQubitGate::Z => [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]],
        OneQubitGate::H => {
            let s = c(std::f64::consts::FRAC_1_SQRT_2);
            [[s, s], [s, -s]]
        }
        OneQubitGate::S => [[c(1.0), c(0.0)], [c(0.0), j]],
        OneQubitGate::Sdg => [[c(1.0), c(0.0)], [c(0.0), -j]],
        OneQubitGate::T => [
            [c(1.0), c(0.0)],
            [c(0.0), expi(std::f64::consts::FRAC_PI_4)],
        ],
        OneQubitGate::Tdg => [
            [c(1.0), c(0.0)],
            [c(0.0), expi(-std::f64::consts::FRAC_PI_4)],
        ],
        OneQubitGate::Rx => {
            let (sin, cos) = (params[0] / 2.0).sin_cos();
            [[c(cos), -j * sin], [-j * sin, c(cos)]]
        }
        OneQubitGate::Ry => {
            let (sin, cos) = (params[0] / 2.0).sin_cos();
            [[c(cos), c(-sin)], [c(sin), c(cos)]]
        }
        OneQubitGate::Rz => {
            let half = params[0] / 2.0;
            [[expi(-half), c(0.0)], [c(0.0), expi(half)]]
        }
        OneQubitGate::Id => [[c(1.0), c(0.0)], [c(0.0), c(1.0)]],
    }
}

/// Exact pre-measurement state of a circuit over its logical qubits.
/// Measurements and barriers are skipped.
pub fn simulate(circuit: &Circuit) -> Result<StateVector, SimulationError> {
    let mut state = StateVector::zero(circuit.num_qubits, MAX_QUBITS)?;
    for gate in &circuit.gates {
        match &gate.kind {
            GateKind::Cx => state.apply_cx(gate.qubits[0], gate.qubits[1]),
            GateKind::OneQubit { gate: g, params } => {
                state.apply_one_qubit(one_qubit_matrix(*g, params), gate.qubits[0])
            }
            GateKind::Measure { .. } | GateKind::Barrier => {}
        }
    }
    Ok(state)
}

/// Exact pre-measurement state of a routed circuit over its physical
/// register, with SWAPs and Bridges expanded to their CNOT decompositions.
pub fn simulate_routed(routed: &RoutedCircuit) -> Result<StateVector, SimulationError> {
    simulate_routed_with_limit(routed, MAX_QUBITS)
}

fn simulate_routed_compact(
    routed: &RoutedCircuit,
    support: &[usize],
    limit: usize,
) -> Result<StateVector, SimulationError> {
    let index_of = |phys: usize| support.binary_search(&phys).expect("qubit in support");
    let mut state = StateVector::zero(support.len(), limit)?;
    for op in &routed.ops {
        match op {
            RoutedOp::OneQubit {
                gate,
                params,
                qubit,
            } => state.apply_one_qubit(one_qubit_matrix(*gate, params), index_of(*qubit)),
            RoutedOp::Measure { .. } => {}
            other => {
                for (c, t) in other.expanded_cx() {
                    state.apply_cx(index_of(c), index_of(t));
                }
            }
        }
    }
    Ok(state)
}

/// Physical qubits that can hold anything other than |0>: the image of the
/// initial mapping plus every qubit an operation touches.
fn support_set(routed: &RoutedCircuit) -> Vec<usize> {
    let mut support: BTreeSet<usize> = routed.initial_mapping.as_slice().iter().copied().collect();
    for op in &routed.ops {
        match op {
            RoutedOp::Cx { control, target } => {
                support.insert(*control);
                support.insert(*target);
            }
            RoutedOp::OneQubit { qubit, .. } => {
                support.insert(*qubit);
            }
            RoutedOp::Measure { qubit, .. } => {
                support.insert(*qubit);
            }
            RoutedOp::Swap { a, b } => {
                support.insert(*a);
                support.insert(*b);
            }
            RoutedOp::Bridge {
                control,
                middle,
                target,
            } => {
                support.insert(*control);
                support.insert(*middle);
                support.insert(*target);
            }
        }
    }
    support.into_iter().collect()
}

/// Simulate a routed circuit over its physical register, factoring out
/// physical qubits that provably stay in |0> so that large devices with few
/// occupied qubits stay within reach. `limit` bounds the simulated register
/// after that reduction.
pub fn simulate_routed_with_limit(
    routed: &RoutedCircuit,
    limit: usize,
) -> Result<StateVector, SimulationError> {
    let support = support_set(routed);
    simulate_routed_compact(routed, &support, limit)
}

/// Check that a routed circuit implements the original up to the final
/// qubit permutation: simulate both, relabel the routed state through the
/// final mapping, and require overlap magnitude 1 within `1e-9`.
pub fn verify_equivalence(
    original: &Circuit,
    routed: &RoutedCircuit,
) -> Result<bool, SimulationError> {
    verify_equivalence_with_limit(original, routed, MAX_QUBITS)
}

/// [`verify_equivalence`] with an explicit register limit for the routed
/// side. The zero-state reduction is exact, so raising the limit to the
/// device size changes cost, not correctness.
pub fn verify_equivalence_with_limit(
    original: &Circuit,
    routed: &RoutedCircuit,
    limit: usize,
) -> Result<bool, SimulationError> {
    let logical_state = simulate(original)?;

    let support = support_set(routed);
    let routed_state = simulate_routed_compact(routed, &support, limit)?;
    let index_of = |phys: usize| support.binary_search(&phys).expect("qubit in support");

    // Relabel: amplitude of logical basis state b is read from the routed
    // state at the index placing bit b_q on final_mapping(q), zeros
    // elsewhere. Any amplitude the routed state holds outside that slice
    // shows up as lost norm and fails the overlap test.
    let k = original.num_qubits;
    let mut relabelled = StateVector::zero(k, limit.max(k))?;
    let positions: Vec<usize> = (0..k)
        .map(|q| index_of(routed.final_mapping.phys(q)))
        .collect();
    for b in 0..(1usize << k) {
        let mut phys_index = 0usize;
        for (q, &pos) in positions.iter().enumerate() {
            if b & (1 << q) != 0 {
                phys_index |= 1 << pos;
            }
        }
        relabelled.amps[b] = routed_state.amps[phys_index];
    }

    let overlap = logical_state.overlap(&relabelled).norm();
    Ok((overlap - 1.0).abs() <= 1e-9)
}
