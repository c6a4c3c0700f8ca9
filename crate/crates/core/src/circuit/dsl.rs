//! Line-oriented text format for circuits.
//!
//! ```text
//! wires a b c
//! not <w>
//! cnot <ctrl> <tgt>
//! cu <uspec> <ctrl> <tgt>        uspec: X | Y | Z | V | V(<float>) | U(<8 floats>)
//! ccphase <phasespec> <w1> <w2>  phasespec: i | -i | -1 | 1 | theta=<float>
//! ```
//!
//! `#` starts a comment. `U(...)` takes eight floats, the row-major re/im
//! pairs of a 2×2 unitary (checked to 1e−9). Serialization is canonical:
//! single spaces, lowercase keywords, floats in shortest round-trip form, so
//! parse ∘ serialize is the identity on circuit values.

use num_complex::Complex64;

use super::Circuit;
use crate::algebra::{Kernel, SquareMatrix, UMatrix};
use crate::error::{Error, ParseError, Result};
use crate::gates::{
    conditional_u, doubly_controlled_phase, not_gate, pauli, v_gate, GateSpec, Phase, Wire,
};

struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    col: s + 1,
                    text: &line[s..i],
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            col: s + 1,
            text: &line[s..],
        });
    }
    tokens
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, col, msg)
}

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut wires: Option<Vec<Wire>> = None;
    let mut ops: Vec<GateSpec> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let keyword = &tokens[0];
        if keyword.text == "wires" {
            if wires.is_some() {
                return Err(err(lineno, keyword.col, "duplicate wires declaration"));
            }
            wires = Some(parse_wires(lineno, &tokens)?);
            continue;
        }
        let declared = wires
            .as_ref()
            .ok_or_else(|| err(lineno, keyword.col, "wires declaration must come first"))?;
        let op = match keyword.text {
            "not" => {
                expect_arity(lineno, &tokens, 2)?;
                not_gate(parse_wire(lineno, &tokens[1], declared)?)
            }
            "cnot" => {
                let (ctrl, tgt) = parse_wire_pair(lineno, &tokens[1..], declared)?;
                expect_arity(lineno, &tokens, 3)?;
                conditional_u(pauli(1).expect("σ₁ exists"), ctrl, tgt)
                    .map_err(|e| gate_err(lineno, tokens[1].col, e))?
            }
            "cu" => {
                if tokens.len() < 4 {
                    return Err(err(lineno, keyword.col, "expected: cu <uspec> <ctrl> <tgt>"));
                }
                let uspec_col = tokens[1].col;
                let uspec = tokens[1..tokens.len() - 2]
                    .iter()
                    .map(|t| t.text)
                    .collect::<Vec<_>>()
                    .join(" ");
                let payload = parse_uspec(lineno, uspec_col, &uspec)?;
                let (ctrl, tgt) =
                    parse_wire_pair(lineno, &tokens[tokens.len() - 2..], declared)?;
                conditional_u(payload, ctrl, tgt)
                    .map_err(|e| gate_err(lineno, uspec_col, e))?
            }
            "ccphase" => {
                expect_arity(lineno, &tokens, 4)?;
                let phase = parse_phase(lineno, &tokens[1])?;
                let (w1, w2) = parse_wire_pair(lineno, &tokens[2..], declared)?;
                doubly_controlled_phase(phase, w1, w2)
                    .map_err(|e| gate_err(lineno, tokens[1].col, e))?
            }
            other => {
                return Err(err(
                    lineno,
                    keyword.col,
                    format!("unknown keyword '{other}'"),
                ))
            }
        };
        ops.push(op);
    }

    let wires =
        wires.ok_or_else(|| err(text.lines().count().max(1), 1, "missing wires declaration"))?;
    Ok(Circuit { wires, ops })
}

fn gate_err(line: usize, col: usize, e: Error) -> ParseError {
    err(line, col, e.to_string())
}

fn expect_arity(line: usize, tokens: &[Token<'_>], want: usize) -> Result<(), ParseError> {
    if tokens.len() != want {
        return Err(err(
            line,
            tokens[0].col,
            format!(
                "'{}' takes {} argument(s), found {}",
                tokens[0].text,
                want - 1,
                tokens.len() - 1
            ),
        ));
    }
    Ok(())
}

fn parse_wires(line: usize, tokens: &[Token<'_>]) -> Result<Vec<Wire>, ParseError> {
    if tokens.len() != 4 {
        return Err(err(line, tokens[0].col, "expected: wires a b c"));
    }
    let mut out = Vec::with_capacity(3);
    for t in &tokens[1..] {
        let w = parse_wire_label(line, t)?;
        if out.contains(&w) {
            return Err(err(line, t.col, format!("duplicate wire '{w}'")));
        }
        out.push(w);
    }
    Ok(out)
}

fn parse_wire_label(line: usize, token: &Token<'_>) -> Result<Wire, ParseError> {
    let mut chars = token.text.chars();
    match (chars.next().and_then(Wire::from_label), chars.next()) {
        (Some(w), None) => Ok(w),
        _ => Err(err(
            line,
            token.col,
            format!("unknown wire label '{}'", token.text),
        )),
    }
}

fn parse_wire(line: usize, token: &Token<'_>, declared: &[Wire]) -> Result<Wire, ParseError> {
    let w = parse_wire_label(line, token)?;
    if !declared.contains(&w) {
        return Err(err(line, token.col, format!("undeclared wire '{w}'")));
    }
    Ok(w)
}

fn parse_wire_pair(
    line: usize,
    tokens: &[Token<'_>],
    declared: &[Wire],
) -> Result<(Wire, Wire), ParseError> {
    if tokens.len() < 2 {
        return Err(err(line, tokens[0].col, "expected two wire arguments"));
    }
    let w1 = parse_wire(line, &tokens[0], declared)?;
    let w2 = parse_wire(line, &tokens[1], declared)?;
    if w1 == w2 {
        return Err(err(line, tokens[1].col, "control equals target"));
    }
    Ok((w1, w2))
}

fn parse_f64(line: usize, col: usize, text: &str) -> Result<f64, ParseError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| err(line, col, format!("bad number '{text}'")))?;
    if !v.is_finite() {
        return Err(err(line, col, format!("non-finite number '{text}'")));
    }
    Ok(v)
}

fn parse_uspec(line: usize, col: usize, uspec: &str) -> Result<UMatrix, ParseError> {
    match uspec {
        "X" => Ok(pauli(1).expect("σ₁ exists")),
        "Y" => Ok(pauli(2).expect("σ₂ exists")),
        "Z" => Ok(pauli(3).expect("σ₃ exists")),
        "V" => Ok(v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).expect("exact V exists")),
        _ => {
            if let Some(inner) = uspec.strip_prefix("V(").and_then(|s| s.strip_suffix(')')) {
                let lambda = parse_f64(line, col, inner)?;
                return v_gate(lambda, Kernel::Float).map_err(|e| gate_err(line, col, e));
            }
            if let Some(inner) = uspec.strip_prefix("U(").and_then(|s| s.strip_suffix(')')) {
                let parts: Vec<&str> = inner.split_whitespace().collect();
                if parts.len() != 8 {
                    return Err(err(
                        line,
                        col,
                        format!("U(...) takes 8 floats, found {}", parts.len()),
                    ));
                }
                let mut vals = [0.0f64; 8];
                for (i, p) in parts.iter().enumerate() {
                    vals[i] = parse_f64(line, col, p)?;
                }
                let entries = vec![
                    Complex64::new(vals[0], vals[1]),
                    Complex64::new(vals[2], vals[3]),
                    Complex64::new(vals[4], vals[5]),
                    Complex64::new(vals[6], vals[7]),
                ];
                let m = UMatrix::float(SquareMatrix::new(2, entries))
                    .map_err(|e| gate_err(line, col, e))?;
                if !m.is_unitary(crate::gates::UNITARY_TOL) {
                    return Err(err(line, col, "malformed unitary literal: not unitary"));
                }
                return Ok(m);
            }
            Err(err(line, col, format!("unknown unitary spec '{uspec}'")))
        }
    }
}

fn parse_phase(line: usize, token: &Token<'_>) -> Result<Phase, ParseError> {
    match token.text {
        "i" => Ok(Phase::i()),
        "-i" => Ok(Phase::minus_i()),
        "1" => Ok(Phase::one()),
        "-1" => Ok(Phase::minus_one()),
        other => {
            if let Some(v) = other.strip_prefix("theta=") {
                Ok(Phase::Angle(parse_f64(line, token.col, v)?))
            } else {
                Err(err(
                    line,
                    token.col,
                    format!("bad phase literal '{other}'"),
                ))
            }
        }
    }
}

pub fn serialize(circuit: &Circuit) -> Result<String> {
    let mut out = String::from("wires");
    for w in &circuit.wires {
        out.push(' ');
        out.push(w.label());
    }
    out.push('\n');
    for op in &circuit.ops {
        match op {
            GateSpec::Not { wire } => out.push_str(&format!("not {wire}\n")),
            GateSpec::ConditionalU { ctrl, tgt, payload } => {
                let uspec = render_uspec(payload)?;
                if uspec == "X" {
                    out.push_str(&format!("cnot {ctrl} {tgt}\n"));
                } else {
                    out.push_str(&format!("cu {uspec} {ctrl} {tgt}\n"));
                }
            }
            GateSpec::DoublyControlledPhase { wires, phase } => {
                out.push_str(&format!(
                    "ccphase {} {} {}\n",
                    render_phase(phase)?,
                    wires.0,
                    wires.1
                ));
            }
            GateSpec::TwoBody { .. } => return Err(Error::NotRepresentable),
        }
    }
    Ok(out)
}

fn render_uspec(payload: &UMatrix) -> Result<String> {
    match payload {
        UMatrix::Exact(_) => {
            if *payload == pauli(1).expect("σ₁ exists") {
                Ok("X".to_string())
            } else if *payload == pauli(2).expect("σ₂ exists") {
                Ok("Y".to_string())
            } else if *payload == pauli(3).expect("σ₃ exists") {
                Ok("Z".to_string())
            } else if *payload == v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).expect("exact V")
            {
                Ok("V".to_string())
            } else {
                Err(Error::NotRepresentable)
            }
        }
        UMatrix::Float(m) => {
            let mut parts = Vec::with_capacity(8);
            for i in 0..2 {
                for j in 0..2 {
                    let z = m.get(i, j);
                    parts.push(format!("{}", z.re));
                    parts.push(format!("{}", z.im));
                }
            }
            Ok(format!("U({})", parts.join(" ")))
        }
    }
}

fn render_phase(phase: &Phase) -> Result<String> {
    match phase {
        Phase::Exact(p) => {
            if *p == crate::algebra::ExactScalar::i() {
                Ok("i".to_string())
            } else if *p == crate::algebra::ExactScalar::minus_i() {
                Ok("-i".to_string())
            } else if *p == crate::algebra::ExactScalar::one() {
                Ok("1".to_string())
            } else if *p == crate::algebra::ExactScalar::from_int(-1) {
                Ok("-1".to_string())
            } else {
                Err(Error::NotRepresentable)
            }
        }
        Phase::Angle(theta) => Ok(format!("theta={theta}")),
    }
}
