//! Simulated annealing over placements with the hardware-aware neighbour
//! moves.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::dag::DependencyDag;
use crate::distance::DistanceBundle;
use crate::hardware::HardwareModel;
use crate::initial::neighbour::{get_neighbour_with_weights, qubit_weights};
use crate::initial::{random_mapping_rng, routing_cost, InitialError};
use crate::mapping::Mapping;
use crate::router::RouterConfig;

/// Probabilities of the three neighbour policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyProbs {
    pub shuffle: f64,
    pub expand: f64,
    pub reset: f64,
}

impl PolicyProbs {
    pub fn sum(&self) -> f64 {
        self.shuffle + self.expand + self.reset
    }
}

impl Default for PolicyProbs {
    fn default() -> Self {
        PolicyProbs {
            shuffle: 0.9,
            expand: 0.08,
            reset: 0.02,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealConfig {
    pub t_init: f64,
    pub t_final: f64,
    /// Multiplicative cooling factor in (0, 1). `None` derives the factor
    /// that walks from `t_init` to `t_final` in exactly the call budget.
    pub delta: Option<f64>,
    pub policy_probs: PolicyProbs,
    /// Maximum number of cost evaluations (each one routes the circuit).
    pub mapping_call_budget: usize,
    pub seed: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            t_init: 1.0,
            t_final: 0.01,
            delta: None,
            policy_probs: PolicyProbs::default(),
            mapping_call_budget: 100,
            seed: 0,
        }
    }
}

impl AnnealConfig {
    fn validate(&self) -> Result<(), InitialError> {
        if !(self.t_final > 0.0 && self.t_final < self.t_init) {
            return Err(InitialError::BadTemperatures {
                t_init: self.t_init,
                t_final: self.t_final,
            });
        }
        let p = self.policy_probs;
        if (p.sum() - 1.0).abs() > 1e-9 || p.shuffle < 0.0 || p.expand < 0.0 || p.reset < 0.0 {
            return Err(InitialError::BadPolicyProbs(p.shuffle, p.expand, p.reset));
        }
        Ok(())
    }

    fn cooling_factor(&self) -> f64 {
        self.delta.unwrap_or_else(|| {
            let budget = self.mapping_call_budget.max(1) as f64;
            (self.t_final / self.t_init).powf(1.0 / budget)
        })
    }
}

/// Metropolis acceptance rule for a worse neighbour: accept with probability
/// `exp((current - neighbour) / temperature)`.
pub fn metropolis_accept(
    current_cost: f64,
    neighbour_cost: f64,
    temperature: f64,
    rng: &mut impl Rng,
) -> bool {
    rng.gen::<f64>() < ((current_cost - neighbour_cost) / temperature).exp()
}

/// Simulated-annealing placement search.
///
/// Starting from a random placement, repeatedly draws a neighbour, routes it
/// to obtain its cost, always accepts improvements over the current state,
/// accepts regressions with the Metropolis probability, and cools the
/// temperature geometrically. The best placement ever seen is returned, so
/// the result never costs more than the starting point. Stops at the final
/// temperature or when the evaluation budget is spent, whichever is first.
pub fn anneal_initial(
    circuit: &Circuit,
    dag: &DependencyDag,
    model: &HardwareModel,
    bundle: &DistanceBundle,
    router_config: &RouterConfig,
    config: &AnnealConfig,
) -> Result<Mapping, InitialError> {
    config.validate()?;
    let weights = qubit_weights(model);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let delta = config.cooling_factor();
    let budget = config.mapping_call_budget.max(1);

    let mut current = random_mapping_rng(circuit.num_qubits, model, &mut rng)?;
    let mut current_cost = routing_cost(circuit, dag, model, bundle, &current, router_config)?;
    let mut evaluations = 1usize;

    let mut best = current.clone();
    let mut best_cost = current_cost;

    let mut temperature = config.t_init;
    while temperature >= config.t_final && evaluations < budget {
        let neighbour =
            get_neighbour_with_weights(&current, model, &weights, config.policy_probs, &mut rng);
        let neighbour_cost = routing_cost(circuit, dag, model, bundle, &neighbour, router_config)?;
        evaluations += 1;

        if neighbour_cost < best_cost {
            best_cost = neighbour_cost;
            best = neighbour.clone();
        }
        if neighbour_cost < current_cost
            || metropolis_accept(current_cost, neighbour_cost, temperature, &mut rng)
        {
            current_cost = neighbour_cost;
            current = neighbour;
        }
        temperature *= delta;
    }
    Ok(best)
}
