//! Hardware-aware qubit routing.
//!
//! Takes an OpenQASM 2.0 circuit and a device calibration document, finds an
//! initial logical-to-physical placement, and inserts SWAP or Bridge gates so
//! that every two-qubit gate lands on a coupled pair. Swap selection is
//! driven by a distance matrix that blends hop counts with per-edge CNOT
//! error rates and durations, so the inserted gates favour the quieter and
//! faster parts of the chip. Routed circuits can be verified against the
//! original with an exact statevector check and summarised with added-gate,
//! duration and fidelity estimates.

pub mod circuit;
pub mod dag;
pub mod distance;
pub mod hardware;
pub mod harness;
pub mod initial;
pub mod mapping;
pub mod metrics;
pub mod qasm;
pub mod router;
pub mod sim;

#[cfg(test)]
pub(crate) mod testutil;

pub use circuit::{Circuit, GateKind, GateNode, OneQubitGate};
pub use dag::{build_dag, DependencyDag};
pub use distance::{Alphas, DistanceBundle};
pub use hardware::{EdgeCalibration, HardwareError, HardwareModel};
pub use mapping::{Mapping, MappingError};
pub use qasm::{emit_circuit, emit_qasm, parse_qasm, ParseError};
pub use router::{route, RoutedCircuit, RoutedOp, RouterConfig, RoutingError};
