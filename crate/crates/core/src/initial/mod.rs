//! Initial placement search: random injections, forward-backward routing
//! refinement, and hardware-aware simulated annealing.

mod anneal;
mod neighbour;

pub use anneal::{anneal_initial, metropolis_accept, AnnealConfig, PolicyProbs};
pub use neighbour::{get_neighbour, qubit_weights, QubitWeight};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::Circuit;
use crate::dag::{build_dag, DependencyDag};
use crate::distance::{Alphas, DistanceBundle};
use crate::hardware::HardwareModel;
use crate::mapping::{Mapping, MappingError};
use crate::metrics::{estimate_execution_time, fidelity_proxy};
use crate::router::{route, RoutedCircuit, RouterConfig, RoutingError};

#[derive(Debug, Error)]
pub enum InitialError {
    #[error(transparent)]
    Mapping(#[from] MappingError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error("policy probabilities ({0}, {1}, {2}) do not sum to 1")]
    BadPolicyProbs(f64, f64, f64),
    #[error("final temperature {t_final} must be positive and below the initial {t_init}")]
    BadTemperatures { t_init: f64, t_final: f64 },
}

/// Uniformly random injection of `num_logical` qubits into the device.
pub fn random_mapping(
    num_logical: usize,
    model: &HardwareModel,
    seed: u64,
) -> Result<Mapping, MappingError> {
    random_mapping_rng(num_logical, model, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn random_mapping_rng(
    num_logical: usize,
    model: &HardwareModel,
    rng: &mut impl Rng,
) -> Result<Mapping, MappingError> {
    if num_logical > model.num_qubits() {
        return Err(MappingError::TooManyLogical {
            requested: num_logical,
            available: model.num_qubits(),
        });
    }
    let mut sites: Vec<usize> = (0..model.num_qubits()).collect();
    sites.shuffle(rng);
    sites.truncate(num_logical);
    Mapping::new(sites, model.num_qubits())
}

/// Composite quality of a routed circuit under the configured weights: the
/// added-CNOT ratio, the fidelity-proxy shortfall, and the makespan as a
/// fraction of fully serial execution.
pub fn route_quality(routed: &RoutedCircuit, model: &HardwareModel, alphas: Alphas) -> f64 {
    let added = routed.added_cnot_count() as f64 / routed.original_cx_count.max(1) as f64;
    let infidelity = 1.0 - fidelity_proxy(routed, model);
    let serial: f64 = routed
        .emitted_cx()
        .map(|(c, t)| model.cnot_time(c, t))
        .sum();
    let time = if serial > 0.0 {
        estimate_execution_time(routed, model) / serial
    } else {
        0.0
    };
    alphas.hops * added + alphas.error * infidelity + alphas.time * time
}

/// Route a circuit from a candidate placement and score the result; the cost
/// function used by the placement searches.
pub fn routing_cost(
    circuit: &Circuit,
    dag: &DependencyDag,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    mapping: &Mapping,
    config: &RouterConfig,
) -> Result<f64, RoutingError> {
    let routed = route(circuit, dag, model, bundle, mapping, config)?;
    Ok(route_quality(&routed, model, config.alphas))
}

/// Forward-backward placement refinement with random restarts.
///
/// Each refinement routes the circuit forward from a fresh random placement,
/// then routes the reversed gate list from the resulting final mapping; the
/// backward pass ends at the candidate placement and its routing cost is the
/// recorded estimate of routing the forward circuit from that candidate.
/// Every refinement spends two routing calls, so a budget of `b` calls funds
/// `max(1, b / 2)` restarts; the cheapest candidate wins.
pub fn sabre_initial(
    circuit: &Circuit,
    dag: &DependencyDag,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    config: &RouterConfig,
    mapping_call_budget: usize,
    seed: u64,
) -> Result<Mapping, InitialError> {
    let reversed = circuit.reversed();
    let reversed_dag = build_dag(&reversed);
    let refinements = (mapping_call_budget / 2).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best: Option<(Mapping, f64)> = None;
    for _ in 0..refinements {
        let start = random_mapping_rng(circuit.num_qubits, model, &mut rng)?;
        let forward = route(circuit, dag, model, bundle, &start, config)?;
        let backward = route(
            &reversed,
            &reversed_dag,
            model,
            bundle,
            &forward.final_mapping,
            config,
        )?;
        let cost = route_quality(&backward, model, config.alphas);
        if best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((backward.final_mapping.clone(), cost));
        }
    }
    Ok(best.expect("at least one refinement ran").0)
}
