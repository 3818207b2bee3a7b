//! Logical circuit representation: the gate list as written in the source
//! program, before any placement or routing has happened.

/// One-qubit gates accepted by the frontend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneQubitGate {
    U1,
    U2,
    U3,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Id,
}

impl OneQubitGate {
    pub fn name(self) -> &'static str {
        match self {
            OneQubitGate::U1 => "u1",
            OneQubitGate::U2 => "u2",
            OneQubitGate::U3 => "u3",
            OneQubitGate::X => "x",
            OneQubitGate::Y => "y",
            OneQubitGate::Z => "z",
            OneQubitGate::H => "h",
            OneQubitGate::S => "s",
            OneQubitGate::Sdg => "sdg",
            OneQubitGate::T => "t",
            OneQubitGate::Tdg => "tdg",
            OneQubitGate::Rx => "rx",
            OneQubitGate::Ry => "ry",
            OneQubitGate::Rz => "rz",
            OneQubitGate::Id => "id",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "u1" => OneQubitGate::U1,
            "u2" => OneQubitGate::U2,
            "u3" => OneQubitGate::U3,
            "x" => OneQubitGate::X,
            "y" => OneQubitGate::Y,
            "z" => OneQubitGate::Z,
            "h" => OneQubitGate::H,
            "s" => OneQubitGate::S,
            "sdg" => OneQubitGate::Sdg,
            "t" => OneQubitGate::T,
            "tdg" => OneQubitGate::Tdg,
            "rx" => OneQubitGate::Rx,
            "ry" => OneQubitGate::Ry,
            "rz" => OneQubitGate::Rz,
            "id" => OneQubitGate::Id,
            _ => return None,
        })
    }

    /// Number of angle parameters the gate expects.
    pub fn param_count(self) -> usize {
        match self {
            OneQubitGate::U3 => 3,
            OneQubitGate::U2 => 2,
            OneQubitGate::U1 | OneQubitGate::Rx | OneQubitGate::Ry | OneQubitGate::Rz => 1,
            _ => 0,
        }
    }
}

/// What a gate does. Operand qubit indices live in [`GateNode::qubits`].
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    /// Controlled-X; operands are `[control, target]`.
    Cx,
    /// A supported one-qubit gate; operand is `[qubit]`.
    OneQubit {
        gate: OneQubitGate,
        params: Vec<f64>,
    },
    /// Measurement of `[qubit]` into classical bit `cbit`.
    Measure { cbit: usize },
    /// Ordering fence across its operands. Participates in dependency
    /// ordering only; it is dropped from the routed output.
    Barrier,
}

/// A single gate in the program, identified by its position in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct GateNode {
    pub id: usize,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateNode {
    pub fn is_two_qubit(&self) -> bool {
        matches!(self.kind, GateKind::Cx)
    }

    /// Control operand of a CX gate.
    pub fn control(&self) -> usize {
        debug_assert!(self.is_two_qubit());
        self.qubits[0]
    }

    /// Target operand of a CX gate.
    pub fn target(&self) -> usize {
        debug_assert!(self.is_two_qubit());
        self.qubits[1]
    }
}

/// A parsed program: gates in source order over a flat qubit index space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub num_clbits: usize,
    pub gates: Vec<GateNode>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Self {
        Circuit {
            num_qubits,
            num_clbits,
            gates: Vec::new(),
        }
    }

    /// Append a gate, assigning the next id. Operand indices must already be
    /// validated against `num_qubits`.
    pub fn push(&mut self, kind: GateKind, qubits: Vec<usize>) -> usize {
        debug_assert!(qubits.iter().all(|&q| q < self.num_qubits));
        let id = self.gates.len();
        self.gates.push(GateNode { id, kind, qubits });
        id
    }

    pub fn cx_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Number of distinct qubits referenced by at least one gate.
    pub fn used_qubits(&self) -> usize {
        let mut seen = vec![false; self.num_qubits];
        for gate in &self.gates {
            for &q in &gate.qubits {
                seen[q] = true;
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// The same gates in reverse order, re-numbered in the new order.
    pub fn reversed(&self) -> Circuit {
        let mut out = Circuit::new(self.num_qubits, self.num_clbits);
        for gate in self.gates.iter().rev() {
            out.push(gate.kind.clone(), gate.qubits.clone());
        }
        out
    }
}
