//! All-pairs distance matrices over the coupling graph: hop counts, swap
//! error and swap duration, each normalised to [0, 1], combined into a single
//! weighted matrix that drives swap selection.

use thiserror::Error;

use crate::hardware::{HardwareError, HardwareModel};

#[derive(Debug, Error)]
pub enum DistanceError {
    #[error(transparent)]
    Hardware(#[from] HardwareError),
    #[error("distance weights must be non-negative, got ({0}, {1}, {2})")]
    NegativeWeight(f64, f64, f64),
}

/// Weights of the hop, error and duration components of the combined metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alphas {
    pub hops: f64,
    pub error: f64,
    pub time: f64,
}

impl Alphas {
    pub fn new(hops: f64, error: f64, time: f64) -> Self {
        Alphas { hops, error, time }
    }

    /// Pure gate-count weighting.
    pub fn hops_only() -> Self {
        Alphas::new(1.0, 0.0, 0.0)
    }
}

impl Default for Alphas {
    fn default() -> Self {
        Alphas::new(0.5, 0.5, 0.0)
    }
}

/// Shortest-path matrices of a device, fixed at calibration-load time and
/// shared read-only by all routing runs.
#[derive(Debug, Clone)]
pub struct DistanceBundle {
    n: usize,
    hops: Vec<u32>,
    s_norm: Vec<f64>,
    e_norm: Vec<f64>,
    t_norm: Vec<f64>,
    combined: Vec<f64>,
    alphas: Alphas,
}

fn floyd_warshall(n: usize, edges: impl Iterator<Item = (usize, usize, f64)>) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; n * n];
    for i in 0..n {
        dist[i * n + i] = 0.0;
    }
    for (a, b, w) in edges {
        dist[a * n + b] = w;
        dist[b * n + a] = w;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = dik + dist[k * n + j];
                if through < dist[i * n + j] {
                    dist[i * n + j] = through;
                }
            }
        }
    }
    dist
}

/// Divide by the maximum entry; an all-zero matrix (single-qubit device) is
/// left untouched.
fn normalise(m: &mut [f64]) {
    let max = m.iter().cloned().fold(0.0f64, f64::max);
    if max > 0.0 {
        for v in m.iter_mut() {
            *v /= max;
        }
    }
}

impl DistanceBundle {
    /// Build all matrices for a model. Hop counts come from unit edge
    /// weights; the error and duration matrices accumulate the per-edge swap
    /// weights additively along shortest paths.
    pub fn build(model: &HardwareModel, alphas: Alphas) -> Result<Self, DistanceError> {
        if alphas.hops < 0.0 || alphas.error < 0.0 || alphas.time < 0.0 {
            return Err(DistanceError::NegativeWeight(
                alphas.hops,
                alphas.error,
                alphas.time,
            ));
        }
        let n = model.num_qubits();

        let s_raw = floyd_warshall(n, model.edges().iter().map(|&(a, b)| (a, b, 1.0)));
        let hops = s_raw.iter().map(|&v| v as u32).collect();

        let mut e_weights = Vec::with_capacity(model.edges().len());
        let mut t_weights = Vec::with_capacity(model.edges().len());
        for &(a, b) in model.edges() {
            e_weights.push((a, b, model.swap_error_edge(a, b)?));
            t_weights.push((a, b, model.swap_time_edge(a, b)?));
        }
        let mut s_norm = s_raw;
        let mut e_norm = floyd_warshall(n, e_weights.into_iter());
        let mut t_norm = floyd_warshall(n, t_weights.into_iter());
        normalise(&mut s_norm);
        normalise(&mut e_norm);
        normalise(&mut t_norm);

        let combined = (0..n * n)
            .map(|i| alphas.hops * s_norm[i] + alphas.error * e_norm[i] + alphas.time * t_norm[i])
            .collect();

        Ok(DistanceBundle {
            n,
            hops,
            s_norm,
            e_norm,
            t_norm,
            combined,
            alphas,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphas(&self) -> Alphas {
        self.alphas
    }

    /// Exact shortest-path hop count between two physical qubits.
    pub fn hops(&self, a: usize, b: usize) -> u32 {
        self.hops[a * self.n + b]
    }

    /// Normalised hop distance.
    pub fn hop_norm(&self, a: usize, b: usize) -> f64 {
        self.s_norm[a * self.n + b]
    }

    /// Normalised accumulated swap-error distance.
    pub fn error_norm(&self, a: usize, b: usize) -> f64 {
        self.e_norm[a * self.n + b]
    }

    /// Normalised accumulated swap-duration distance.
    pub fn time_norm(&self, a: usize, b: usize) -> f64 {
        self.t_norm[a * self.n + b]
    }

    /// The combined weighted distance used by the routing heuristic.
    pub fn combined(&self, a: usize, b: usize) -> f64 {
        self.combined[a * self.n + b]
    }
}
