//! Recursive-descent parser producing a [`Circuit`] from OpenQASM 2.0 text.

use std::collections::HashMap;

use super::lex::{tokenize, Spanned, Token};
use super::{ParseError, ParseErrorKind};
use crate::circuit::{Circuit, GateKind, OneQubitGate};

/// Gates we recognise as acting on three or more qubits, rejected with a
/// dedicated message.
const MULTI_QUBIT_GATES: &[&str] = &["ccx", "cswap", "c3x", "c4x", "mcx", "ccz", "rccx", "rc3x"];

/// Parse an OpenQASM 2.0 program.
///
/// Multiple quantum (and classical) registers are flattened into a single
/// index space in declaration order. The `OPENQASM 2.0;` header and
/// `include` statements are accepted and ignored. Whole-register operands
/// broadcast in the usual OpenQASM way; a barrier over registers fences all
/// of their qubits with a single node.
pub fn parse_qasm(source: &str) -> Result<Circuit, ParseError> {
    let tokens = tokenize(source)?;
    Parser::new(tokens).parse_program()
}

struct Register {
    offset: usize,
    size: usize,
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    qregs: HashMap<String, Register>,
    qreg_order: Vec<String>,
    cregs: HashMap<String, Register>,
    num_qubits: usize,
    num_clbits: usize,
}

/// A resolved operand: one qubit or a whole register's worth of them.
enum Operand {
    Single(usize),
    Whole(Vec<usize>),
}

impl Parser {
    fn new(tokens: Vec<Spanned>) -> Self {
        Parser {
            tokens,
            pos: 0,
            qregs: HashMap::new(),
            qreg_order: Vec::new(),
            cregs: HashMap::new(),
            num_qubits: 0,
            num_clbits: 0,
        }
    }

    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, kind)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.token == token => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Spanned {
                token: Token::Ident(name),
                ..
            }) => Ok(name),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.syntax("expected identifier"))
            }
        }
    }

    fn expect_int(&mut self) -> Result<usize, ParseError> {
        match self.next() {
            Some(Spanned {
                token: Token::Int(v),
                ..
            }) => Ok(v),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.syntax("expected integer"))
            }
        }
    }

    fn parse_program(mut self) -> Result<Circuit, ParseError> {
        // Two passes over the statements would complicate broadcasting; the
        // grammar requires registers to be declared before use, so a single
        // pass suffices.
        let mut circuit = Circuit::new(0, 0);
        while let Some(t) = self.peek() {
            let t = t.clone();
            match &t.token {
                Token::Ident(name) => match name.as_str() {
                    "OPENQASM" => {
                        self.pos += 1;
                        // Version number: integer or real, ignored.
                        match self.next().map(|t| t.token) {
                            Some(Token::Real(_)) | Some(Token::Int(_)) => {}
                            _ => return Err(self.syntax("expected version number")),
                        }
                        self.expect(Token::Semicolon, "`;`")?;
                    }
                    "include" => {
                        self.pos += 1;
                        match self.next().map(|t| t.token) {
                            Some(Token::Str(_)) => {}
                            _ => return Err(self.syntax("expected file name string")),
                        }
                        self.expect(Token::Semicolon, "`;`")?;
                    }
                    "qreg" => {
                        self.pos += 1;
                        self.parse_register_decl(true)?;
                        circuit.num_qubits = self.num_qubits;
                    }
                    "creg" => {
                        self.pos += 1;
                        self.parse_register_decl(false)?;
                        circuit.num_clbits = self.num_clbits;
                    }
                    "measure" => {
                        self.pos += 1;
                        self.parse_measure(&mut circuit)?;
                    }
                    "barrier" => {
                        self.pos += 1;
                        self.parse_barrier(&mut circuit)?;
                    }
                    "if" => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            ParseErrorKind::Unsupported("classical conditional `if`".into()),
                        ))
                    }
                    "gate" | "opaque" => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            ParseErrorKind::Unsupported(format!("`{name}` definition")),
                        ))
                    }
                    "reset" => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            ParseErrorKind::Unsupported("`reset`".into()),
                        ))
                    }
                    _ => {
                        self.pos += 1;
                        self.parse_gate(name.clone(), t.line, t.col, &mut circuit)?;
                    }
                },
                _ => return Err(self.syntax("expected statement")),
            }
        }
        Ok(circuit)
    }

    fn parse_register_decl(&mut self, quantum: bool) -> Result<(), ParseError> {
        let name = self.expect_ident()?;
        self.expect(Token::LBracket, "`[`")?;
        let size = self.expect_int()?;
        self.expect(Token::RBracket, "`]`")?;
        self.expect(Token::Semicolon, "`;`")?;
        if size == 0 {
            return Err(self.syntax(format!("register `{name}` has size 0")));
        }
        let (regs, total) = if quantum {
            (&mut self.qregs, &mut self.num_qubits)
        } else {
            (&mut self.cregs, &mut self.num_clbits)
        };
        if regs.contains_key(&name) {
            return Err(self.syntax(format!("register `{name}` declared twice")));
        }
        regs.insert(
            name.clone(),
            Register {
                offset: *total,
                size,
            },
        );
        if quantum {
            self.qreg_order.push(name);
        }
        *total += size;
        Ok(())
    }

    /// `name` or `name[idx]`, resolved against the given register table.
    fn parse_operand(&mut self, quantum: bool) -> Result<Operand, ParseError> {
        let (line, col) = self.here();
        let name = self.expect_ident()?;
        let reg = if quantum {
            self.qregs.get(&name)
        } else {
            self.cregs.get(&name)
        }
        .ok_or_else(|| ParseError::new(line, col, ParseErrorKind::UnknownRegister(name.clone())))?;
        let (offset, size) = (reg.offset, reg.size);
        if matches!(self.peek().map(|t| &t.token), Some(Token::LBracket)) {
            self.pos += 1;
            let (iline, icol) = self.here();
            let index = self.expect_int()?;
            self.expect(Token::RBracket, "`]`")?;
            if index >= size {
                return Err(ParseError::new(
                    iline,
                    icol,
                    ParseErrorKind::IndexOutOfRange {
                        register: name,
                        index,
                        size,
                    },
                ));
            }
            Ok(Operand::Single(offset + index))
        } else {
            Ok(Operand::Whole((offset..offset + size).collect()))
        }
    }

    /// Expand a list of operands according to OpenQASM broadcast rules: all
    /// whole-register operands must have equal length and single qubits
    /// repeat across the broadcast width.
    fn broadcast(&self, operands: Vec<Operand>) -> Result<Vec<Vec<usize>>, ParseError> {
        let width = operands
            .iter()
            .filter_map(|o| match o {
                Operand::Whole(qs) => Some(qs.len()),
                Operand::Single(_) => None,
            })
            .max()
            .unwrap_or(1);
        for o in &operands {
            if let Operand::Whole(qs) = o {
                if qs.len() != width {
                    return Err(self.syntax("register operands have mismatched sizes"));
                }
            }
        }
        Ok((0..width)
            .map(|i| {
                operands
                    .iter()
                    .map(|o| match o {
                        Operand::Single(q) => *q,
                        Operand::Whole(qs) => qs[i],
                    })
                    .collect()
            })
            .collect())
    }

    fn parse_measure(&mut self, circuit: &mut Circuit) -> Result<(), ParseError> {
        let src = self.parse_operand(true)?;
        self.expect(Token::Arrow, "`->`")?;
        let dst = self.parse_operand(false)?;
        self.expect(Token::Semicolon, "`;`")?;
        let pairs = self.broadcast(vec![src, dst])?;
        for pair in pairs {
            circuit.push(GateKind::Measure { cbit: pair[1] }, vec![pair[0]]);
        }
        Ok(())
    }

    fn parse_barrier(&mut self, circuit: &mut Circuit) -> Result<(), ParseError> {
        let mut qubits = Vec::new();
        loop {
            match self.parse_operand(true)? {
                Operand::Single(q) => qubits.push(q),
                Operand::Whole(qs) => qubits.extend(qs),
            }
            match self.peek().map(|t| &t.token) {
                Some(Token::Comma) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.expect(Token::Semicolon, "`;`")?;
        qubits.sort_unstable();
        qubits.dedup();
        circuit.push(GateKind::Barrier, qubits);
        Ok(())
    }

    fn parse_gate(
        &mut self,
        name: String,
        line: usize,
        col: usize,
        circuit: &mut Circuit,
    ) -> Result<(), ParseError> {
        if MULTI_QUBIT_GATES.contains(&name.as_str()) {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::MultiQubitGate(name),
            ));
        }
        let one_qubit = OneQubitGate::from_name(&name);
        if name != "cx" && one_qubit.is_none() {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::UnsupportedGate(name),
            ));
        }

        let mut params = Vec::new();
        if matches!(self.peek().map(|t| &t.token), Some(Token::LParen)) {
            self.pos += 1;
            if !matches!(self.peek().map(|t| &t.token), Some(Token::RParen)) {
                loop {
                    params.push(self.parse_expr()?);
                    match self.peek().map(|t| &t.token) {
                        Some(Token::Comma) => {
                            self.pos += 1;
                        }
                        _ => break,
                    }
                }
            }
            self.expect(Token::RParen, "`)`")?;
        }

        let expected_params = match one_qubit {
            Some(g) => g.param_count(),
            None => 0,
        };
        if params.len() != expected_params {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::Syntax(format!(
                    "gate `{name}` takes {expected_params} parameter(s), got {}",
                    params.len()
                )),
            ));
        }

        let mut operands = Vec::new();
        loop {
            operands.push(self.parse_operand(true)?);
            match self.peek().map(|t| &t.token) {
                Some(Token::Comma) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.expect(Token::Semicolon, "`;`")?;

        let arity = if one_qubit.is_some() { 1 } else { 2 };
        if operands.len() != arity {
            return Err(ParseError::new(
                line,
                col,
                ParseErrorKind::Syntax(format!(
                    "gate `{name}` takes {arity} operand(s), got {}",
                    operands.len()
                )),
            ));
        }

        for qubits in self.broadcast(operands)? {
            match one_qubit {
                Some(gate) => {
                    circuit.push(
                        GateKind::OneQubit {
                            gate,
                            params: params.clone(),
                        },
                        qubits,
                    );
                }
                None => {
                    if qubits[0] == qubits[1] {
                        return Err(ParseError::new(line, col, ParseErrorKind::DuplicateOperand));
                    }
                    circuit.push(GateKind::Cx, qubits);
                }
            }
        }
        Ok(())
    }

    // Parameter expressions: + - * / with unary sign, parentheses, `pi`.
    fn parse_expr(&mut self) -> Result<f64, ParseError> {
        let mut value = self.parse_term()?;
        loop {
            match self.peek().map(|t| &t.token) {
                Some(Token::Plus) => {
                    self.pos += 1;
                    value += self.parse_term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    value -= self.parse_term()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn parse_term(&mut self) -> Result<f64, ParseError> {
        let mut value = self.parse_factor()?;
        loop {
            match self.peek().map(|t| &t.token) {
                Some(Token::Star) => {
                    self.pos += 1;
                    value *= self.parse_factor()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    value /= self.parse_factor()?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<f64, ParseError> {
        match self.peek().map(|t| t.token.clone()) {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.parse_factor()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.parse_factor()
            }
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(v as f64)
            }
            Some(Token::Real(v)) => {
                self.pos += 1;
                Ok(v)
            }
            Some(Token::Ident(name)) if name == "pi" => {
                self.pos += 1;
                Ok(std::f64::consts::PI)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let value = self.parse_expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(value)
            }
            _ => Err(self.syntax("expected expression")),
        }
    }
}
