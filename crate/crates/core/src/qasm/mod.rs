//! OpenQASM 2.0 frontend: a parser for the gate subset handled by the router
//! and an emitter for routed circuits. Emitted programs parse back to the
//! same gate list.

mod emit;
mod lex;
mod parse;

pub use emit::{emit_circuit, emit_qasm};
pub use parse::parse_qasm;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnsupportedGate(String),
    /// Gates on three or more qubits are not handled; they must be decomposed
    /// into one- and two-qubit gates before routing.
    MultiQubitGate(String),
    IndexOutOfRange {
        register: String,
        index: usize,
        size: usize,
    },
    UnknownRegister(String),
    DuplicateOperand,
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {col}: {}", self.describe())]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }

    fn describe(&self) -> String {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => format!("syntax error: {msg}"),
            ParseErrorKind::UnsupportedGate(name) => format!("unsupported gate `{name}`"),
            ParseErrorKind::MultiQubitGate(name) => format!(
                "gate `{name}` acts on three or more qubits; decompose it into \
                 one- and two-qubit gates before routing"
            ),
            ParseErrorKind::IndexOutOfRange {
                register,
                index,
                size,
            } => format!("index {index} out of range for register `{register}` of size {size}"),
            ParseErrorKind::UnknownRegister(name) => format!("unknown register `{name}`"),
            ParseErrorKind::DuplicateOperand => {
                "two-qubit gate applied to the same qubit twice".to_string()
            }
            ParseErrorKind::Unsupported(what) => format!("unsupported construct: {what}"),
        }
    }
}
