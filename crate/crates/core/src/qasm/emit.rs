//! OpenQASM 2.0 emission for routed and plain circuits.

use std::fmt::Write;

use crate::circuit::{Circuit, GateKind, OneQubitGate};
use crate::router::{RoutedCircuit, RoutedOp};

fn write_params(out: &mut String, params: &[f64]) {
    if params.is_empty() {
        return;
    }
    out.push('(');
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        // `{}` on f64 prints the shortest representation that parses back to
        // the same value, which keeps emit -> parse a fixed point.
        let _ = write!(out, "{p}");
    }
    out.push(')');
}

fn write_one_qubit(out: &mut String, gate: OneQubitGate, params: &[f64], qubit: usize) {
    out.push_str(gate.name());
    write_params(out, params);
    let _ = writeln!(out, " q[{qubit}];");
}

fn write_cx(out: &mut String, control: usize, target: usize) {
    let _ = writeln!(out, "cx q[{control}],q[{target}];");
}

/// Emit a routed circuit as OpenQASM 2.0 over physical qubit indices.
///
/// SWAPs are expanded to three CNOTs and Bridges to four, so the output is
/// directly executable on the coupling graph. A header comment records the
/// initial and final logical-to-physical mappings.
pub fn emit_qasm(routed: &RoutedCircuit) -> String {
    let mut out = String::new();
    let fmt_mapping = |m: &crate::mapping::Mapping| {
        (0..m.num_logical())
            .map(|l| format!("q{l}->Q{}", m.phys(l)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        "// initial mapping: {}",
        fmt_mapping(&routed.initial_mapping)
    );
    let _ = writeln!(
        out,
        "// final mapping: {}",
        fmt_mapping(&routed.final_mapping)
    );
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", routed.num_physical);
    if routed.num_clbits > 0 {
        let _ = writeln!(out, "creg c[{}];", routed.num_clbits);
    }
    for op in &routed.ops {
        match op {
            RoutedOp::Cx { control, target } => write_cx(&mut out, *control, *target),
            RoutedOp::OneQubit {
                gate,
                params,
                qubit,
            } => write_one_qubit(&mut out, *gate, params, *qubit),
            RoutedOp::Measure { qubit, cbit } => {
                let _ = writeln!(out, "measure q[{qubit}] -> c[{cbit}];");
            }
            RoutedOp::Swap { a, b } => {
                write_cx(&mut out, *a, *b);
                write_cx(&mut out, *b, *a);
                write_cx(&mut out, *a, *b);
            }
            RoutedOp::Bridge {
                control,
                middle,
                target,
            } => {
                write_cx(&mut out, *middle, *target);
                write_cx(&mut out, *control, *middle);
                write_cx(&mut out, *middle, *target);
                write_cx(&mut out, *control, *middle);
            }
        }
    }
    out
}

/// Emit a plain (unrouted) circuit as OpenQASM 2.0 over its logical indices.
pub fn emit_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits);
    if circuit.num_clbits > 0 {
        let _ = writeln!(out, "creg c[{}];", circuit.num_clbits);
    }
    for gate in &circuit.gates {
        match &gate.kind {
            GateKind::Cx => write_cx(&mut out, gate.qubits[0], gate.qubits[1]),
            GateKind::OneQubit { gate: g, params } => {
                write_one_qubit(&mut out, *g, params, gate.qubits[0])
            }
            GateKind::Measure { cbit } => {
                let _ = writeln!(out, "measure q[{}] -> c[{cbit}];", gate.qubits[0]);
            }
            GateKind::Barrier => {
                let args = gate
                    .qubits
                    .iter()
                    .map(|q| format!("q[{q}]"))
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(out, "barrier {args};");
            }
        }
    }
    out
}
