//! Device model: coupling graph plus per-edge CNOT calibration and per-qubit
//! readout errors, loaded from a JSON calibration document.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HardwareError {
    #[error("failed to read calibration file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse calibration file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("device must have at least one qubit")]
    Empty,
    #[error("edge {0}-{1}: qubit index out of range for {2} qubits")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("edge {0}-{1}: self-loops are not allowed")]
    SelfLoop(usize, usize),
    #[error("edge {0}-{1} declared twice")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1}: missing calibration ({2})")]
    MissingCalibration(usize, usize, &'static str),
    #[error("edge {0}-{1}: CNOT error rate {2} outside [0, 1)")]
    ErrorRateOutOfRange(usize, usize, f64),
    #[error("edge {0}-{1}: CNOT duration {2} ns is not positive")]
    NonPositiveTime(usize, usize, f64),
    #[error("readout error list has {0} entries for {1} qubits")]
    ReadoutLengthMismatch(usize, usize),
    #[error("qubit {0}: readout error {1} outside [0, 1]")]
    ReadoutOutOfRange(usize, f64),
    #[error("coupling graph is not connected")]
    Disconnected,
    #[error("qubits {0} and {1} are not coupled")]
    NotAdjacent(usize, usize),
}

/// Calibration data for one undirected coupling edge. Directed entries that
/// are absent in the source document are mirrored from the other direction.
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct EdgeCalibration {
    pub q0: usize,
    pub q1: usize,
    #[serde(default)]
    pub cx_error_01: Option<f64>,
    #[serde(default)]
    pub cx_error_10: Option<f64>,
    #[serde(default)]
    pub cx_time_01_ns: Option<f64>,
    #[serde(default)]
    pub cx_time_10_ns: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct CalibrationFile {
    num_qubits: usize,
    edges: Vec<EdgeCalibration>,
    #[serde(default)]
    readout_error: Option<Vec<f64>>,
}

/// A validated device: connected coupling graph with complete directed
/// calibration for every edge.
#[derive(Debug, Clone)]
pub struct HardwareModel {
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    cnot_error: HashMap<(usize, usize), f64>,
    cnot_time: HashMap<(usize, usize), f64>,
    readout_error: Vec<f64>,
}

impl HardwareModel {
    pub fn new(
        num_qubits: usize,
        edges: &[EdgeCalibration],
        readout_error: Option<Vec<f64>>,
    ) -> Result<Self, HardwareError> {
        if num_qubits == 0 {
            return Err(HardwareError::Empty);
        }
        let mut model = HardwareModel {
            num_qubits,
            edges: Vec::with_capacity(edges.len()),
            adjacency: vec![Vec::new(); num_qubits],
            cnot_error: HashMap::new(),
            cnot_time: HashMap::new(),
            readout_error: vec![0.0; num_qubits],
        };

        for e in edges {
            let (a, b) = (e.q0.min(e.q1), e.q0.max(e.q1));
            if e.q0 >= num_qubits || e.q1 >= num_qubits {
                return Err(HardwareError::EdgeOutOfRange(e.q0, e.q1, num_qubits));
            }
            if a == b {
                return Err(HardwareError::SelfLoop(a, b));
            }
            if model.cnot_error.contains_key(&(e.q0, e.q1)) {
                return Err(HardwareError::DuplicateEdge(e.q0, e.q1));
            }
            let err_01 = e
                .cx_error_01
                .or(e.cx_error_10)
                .ok_or(HardwareError::MissingCalibration(e.q0, e.q1, "error rate"))?;
            let err_10 = e.cx_error_10.unwrap_or(err_01);
            let time_01 = e
                .cx_time_01_ns
                .or(e.cx_time_10_ns)
                .ok_or(HardwareError::MissingCalibration(e.q0, e.q1, "duration"))?;
            let time_10 = e.cx_time_10_ns.unwrap_or(time_01);
            for err in [err_01, err_10] {
                if !(0.0..1.0).contains(&err) {
                    return Err(HardwareError::ErrorRateOutOfRange(e.q0, e.q1, err));
                }
            }
            for t in [time_01, time_10] {
                // Rejects NaN as well.
                if !(t.is_finite() && t > 0.0) {
                    return Err(HardwareError::NonPositiveTime(e.q0, e.q1, t));
                }
            }
            model.edges.push((a, b));
            model.adjacency[a].push(b);
            model.adjacency[b].push(a);
            model.cnot_error.insert((e.q0, e.q1), err_01);
            model.cnot_error.insert((e.q1, e.q0), err_10);
            model.cnot_time.insert((e.q0, e.q1), time_01);
            model.cnot_time.insert((e.q1, e.q0), time_10);
        }
        model.edges.sort_unstable();
        for adj in &mut model.adjacency {
            adj.sort_unstable();
        }

        if let Some(readout) = readout_error {
            if readout.len() != num_qubits {
                return Err(HardwareError::ReadoutLengthMismatch(
                    readout.len(),
                    num_qubits,
                ));
            }
            for (q, &r) in readout.iter().enumerate() {
                if !(0.0..=1.0).contains(&r) {
                    return Err(HardwareError::ReadoutOutOfRange(q, r));
                }
            }
            model.readout_error = readout;
        }

        if !model.is_connected() {
            return Err(HardwareError::Disconnected);
        }
        Ok(model)
    }

    /// Load and validate a JSON calibration document.
    pub fn load_calibration(path: impl AsRef<Path>) -> Result<Self, HardwareError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, HardwareError> {
        let file: CalibrationFile = serde_json::from_str(text)?;
        Self::new(file.num_qubits, &file.edges, file.readout_error)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.num_qubits];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(q) = stack.pop() {
            for &nb in &self.adjacency[q] {
                if !seen[nb] {
                    seen[nb] = true;
                    count += 1;
                    stack.push(nb);
                }
            }
        }
        count == self.num_qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Undirected coupling edges, sorted, each with the smaller index first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.cnot_error.contains_key(&(a, b))
    }

    /// Directed CNOT error rate for a coupled pair.
    pub fn cnot_error(&self, control: usize, target: usize) -> f64 {
        self.cnot_error[&(control, target)]
    }

    /// Directed CNOT duration in nanoseconds for a coupled pair.
    pub fn cnot_time(&self, control: usize, target: usize) -> f64 {
        self.cnot_time[&(control, target)]
    }

    pub fn readout_error(&self, q: usize) -> f64 {
        self.readout_error[q]
    }

    /// Error weight of a SWAP executed on the edge `(a, b)`: one minus the
    /// product of the three CNOT success rates, taking the better direction
    /// for the repeated CNOT.
    pub fn swap_error_edge(&self, a: usize, b: usize) -> Result<f64, HardwareError> {
        if !self.has_edge(a, b) {
            return Err(HardwareError::NotAdjacent(a, b));
        }
        let s_ab = 1.0 - self.cnot_error(a, b);
        let s_ba = 1.0 - self.cnot_error(b, a);
        Ok(1.0 - s_ab * s_ba * s_ab.max(s_ba))
    }

    /// Duration weight of a SWAP executed on the edge `(a, b)`: both directed
    /// CNOT durations plus the cheaper of the two for the repeated CNOT.
    pub fn swap_time_edge(&self, a: usize, b: usize) -> Result<f64, HardwareError> {
        if !self.has_edge(a, b) {
            return Err(HardwareError::NotAdjacent(a, b));
        }
        let t_ab = self.cnot_time(a, b);
        let t_ba = self.cnot_time(b, a);
        Ok(t_ab + t_ba + t_ab.min(t_ba))
    }
}
