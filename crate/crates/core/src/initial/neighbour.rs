//! Hardware-aware neighbour moves for the annealing search: shuffle the
//! current placement, expand it onto a better adjacent qubit, or reset to a
//! freshly grown placement.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hardware::HardwareModel;
use crate::initial::PolicyProbs;
use crate::mapping::Mapping;

/// Connectivity-and-readout figure of merit for one physical qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitWeight {
    pub qubit: usize,
    pub score: f64,
}

/// Score every physical qubit: normalised degree, plus normalised summed
/// link quality (one minus the mean directed CNOT error per neighbour),
/// minus the qubit's readout error. Deterministic for a given model.
pub fn qubit_weights(model: &HardwareModel) -> Vec<QubitWeight> {
    let n = model.num_qubits();
    let strength = |q: usize| -> f64 {
        model
            .neighbours(q)
            .iter()
            .map(|&nb| 1.0 - 0.5 * (model.cnot_error(q, nb) + model.cnot_error(nb, q)))
            .sum()
    };
    let max_degree = (0..n).map(|q| model.degree(q)).max().unwrap_or(0);
    let max_strength = (0..n).map(strength).fold(0.0f64, f64::max);
    (0..n)
        .map(|q| {
            let degree_term = if max_degree > 0 {
                model.degree(q) as f64 / max_degree as f64
            } else {
                0.0
            };
            let strength_term = if max_strength > 0.0 {
                strength(q) / max_strength
            } else {
                0.0
            };
            QubitWeight {
                qubit: q,
                score: degree_term + strength_term - model.readout_error(q),
            }
        })
        .collect()
}

/// Permute the logical assignments over the same set of physical qubits.
pub(crate) fn shuffle_mapping(mapping: &Mapping, rng: &mut impl Rng) -> Mapping {
    let mut image = mapping.as_slice().to_vec();
    image.shuffle(rng);
    Mapping::new(image, mapping.num_physical()).expect("shuffle preserves injectivity")
}

fn subset_connected(model: &HardwareModel, set: &[bool], size: usize) -> bool {
    let Some(start) = set.iter().position(|&s| s) else {
        return true;
    };
    let mut seen = vec![false; set.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(q) = stack.pop() {
        for &nb in model.neighbours(q) {
            if set[nb] && !seen[nb] {
                seen[nb] = true;
                count += 1;
                stack.push(nb);
            }
        }
    }
    count == size
}

/// Replace the lowest-weight occupied qubit by the highest-weight free
/// neighbour of the remaining set, rejecting moves that disconnect the
/// occupied set. `None` when no such move exists (in particular when the
/// device is full).
pub(crate) fn expand_mapping(
    mapping: &Mapping,
    model: &HardwareModel,
    weights: &[QubitWeight],
) -> Option<Mapping> {
    let n = model.num_qubits();
    if mapping.num_logical() == n {
        return None;
    }
    let by_weight_asc = |a: &usize, b: &usize| {
        weights[*a]
            .score
            .partial_cmp(&weights[*b].score)
            .unwrap()
            .then(a.cmp(b))
    };

    let mut occupied = mapping.occupied();
    occupied.sort_by(by_weight_asc);

    for &out in &occupied {
        let mut remaining = vec![false; n];
        for &q in &occupied {
            remaining[q] = true;
        }
        remaining[out] = false;

        // Free qubits adjacent to the remaining set, best first.
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&q| q != out && mapping.logical_at(q).is_none())
            .filter(|&q| model.neighbours(q).iter().any(|&nb| remaining[nb]))
            .collect();
        candidates.sort_by(by_weight_asc);
        candidates.reverse();

        for add in candidates {
            remaining[add] = true;
            if subset_connected(model, &remaining, mapping.num_logical()) {
                let mut moved = mapping.clone();
                moved.relocate(out, add);
                return Some(moved);
            }
            remaining[add] = false;
        }
    }
    None
}

/// Grow a fresh placement from a random seed qubit, repeatedly absorbing the
/// highest-weight neighbouring qubit; logical qubits are assigned in the
/// order sites were added.
pub(crate) fn reset_mapping(
    mapping: &Mapping,
    model: &HardwareModel,
    weights: &[QubitWeight],
    rng: &mut impl Rng,
) -> Mapping {
    let n = model.num_qubits();
    let k = mapping.num_logical();
    let mut chosen = Vec::with_capacity(k);
    let mut in_set = vec![false; n];
    let seed = rng.gen_range(0..n);
    chosen.push(seed);
    in_set[seed] = true;
    while chosen.len() < k {
        let mut best: Option<usize> = None;
        for &q in &chosen {
            for &nb in model.neighbours(q) {
                if in_set[nb] {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => {
                        weights[nb].score > weights[b].score
                            || (weights[nb].score == weights[b].score && nb < b)
                    }
                };
                if better {
                    best = Some(nb);
                }
            }
        }
        let next = best.expect("connected device keeps a frontier until full");
        chosen.push(next);
        in_set[next] = true;
    }
    Mapping::new(chosen, n).expect("grown placement is injective")
}

/// Draw one neighbouring placement according to the policy probabilities:
/// shuffle, expand (falling back to shuffle when impossible), or reset.
pub fn get_neighbour(
    mapping: &Mapping,
    model: &HardwareModel,
    probs: PolicyProbs,
    rng: &mut impl Rng,
) -> Mapping {
    let weights = qubit_weights(model);
    get_neighbour_with_weights(mapping, model, &weights, probs, rng)
}

pub(crate) fn get_neighbour_with_weights(
    mapping: &Mapping,
    model: &HardwareModel,
    weights: &[QubitWeight],
    probs: PolicyProbs,
    rng: &mut impl Rng,
) -> Mapping {
    let draw: f64 = rng.gen();
    if draw < probs.shuffle {
        shuffle_mapping(mapping, rng)
    } else if draw < probs.shuffle + probs.expand {
        expand_mapping(mapping, model, weights).unwrap_or_else(|| shuffle_mapping(mapping, rng))
    } else {
        reset_mapping(mapping, model, weights, rng)
    }
}
