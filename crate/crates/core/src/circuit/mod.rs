//! Circuit intermediate representation: temporal gate lists, compilation to
//! an 8×8 unitary, gate merging, gate counting and truth-table extraction.
//!
//! The text format lives in [`dsl`]; [`Circuit::parse`] and
//! [`Circuit::to_dsl`] are the entry points.

pub mod dsl;

use serde::{Deserialize, Serialize};

use crate::algebra::{Kernel, ScalarValue, UMatrix};
use crate::error::{Error, ParseError, Result};
use crate::gates::{embed, embed_on_pair, GateSpec, Wire};

/// An ordered list of gate applications. The first element acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub wires: Vec<Wire>,
    pub ops: Vec<GateSpec>,
}

impl Circuit {
    /// Empty circuit on the standard wires `a b c`.
    pub fn new() -> Self {
        Circuit {
            wires: Wire::ALL.to_vec(),
            ops: Vec::new(),
        }
    }

    pub fn with_ops(ops: Vec<GateSpec>) -> Self {
        Circuit {
            wires: Wire::ALL.to_vec(),
            ops,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        dsl::parse(text)
    }

    pub fn to_dsl(&self) -> Result<String> {
        dsl::serialize(self)
    }

    /// True when every gate payload lives in the exact kernel.
    pub fn is_exact_representable(&self) -> bool {
        self.ops.iter().all(GateSpec::is_exact)
    }

    /// Multiplies the embedded gates together; later ops end up on the left.
    pub fn compile(&self, kernel: Kernel) -> Result<UMatrix> {
        let mut acc = UMatrix::identity(8, kernel)?;
        for op in &self.ops {
            acc = embed(op, kernel)?.matmul(&acc)?;
        }
        Ok(acc)
    }

    /// Greedy left-to-right fusion of maximal gate runs whose combined wire
    /// support fits inside a single two-wire set. Fused runs become one
    /// [`GateSpec::TwoBody`] gate; the compiled unitary is unchanged.
    pub fn merge_adjacent(&self) -> Circuit {
        let mut out: Vec<GateSpec> = Vec::new();
        let mut run: Vec<GateSpec> = Vec::new();
        let mut run_mask = 0u8;

        let flush = |run: &mut Vec<GateSpec>, run_mask: &mut u8, out: &mut Vec<GateSpec>| {
            match run.len() {
                0 => {}
                1 => out.push(run.pop().expect("len checked")),
                _ => {
                    out.push(fuse_run(run, *run_mask));
                    run.clear();
                }
            }
            *run_mask = 0;
        };

        for op in &self.ops {
            let mask = op.support_mask();
            if run.is_empty() || ((run_mask | mask).count_ones() <= 2) {
                run_mask |= mask;
                run.push(op.clone());
            } else {
                flush(&mut run, &mut run_mask, &mut out);
                run_mask = mask;
                run.push(op.clone());
            }
        }
        flush(&mut run, &mut run_mask, &mut out);

        Circuit {
            wires: self.wires.clone(),
            ops: out,
        }
    }

    /// Gate counts by wire-support size.
    pub fn count_gates(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for op in &self.ops {
            match op.body_count() {
                1 => counts.one_body += 1,
                _ => counts.two_body += 1,
            }
        }
        counts
    }
}

impl Default for Circuit {
    fn default() -> Self {
        Circuit::new()
    }
}

fn fuse_run(run: &[GateSpec], mask: u8) -> GateSpec {
    let mut wires: Vec<Wire> = Wire::ALL
        .into_iter()
        .filter(|w| mask & (1 << w.bit()) != 0)
        .collect();
    if wires.len() == 1 {
        // A run of one-body gates on a single wire still fuses to a
        // two-body payload; pair it with the first other wire.
        let companion = Wire::ALL
            .into_iter()
            .find(|w| *w != wires[0])
            .expect("three wires exist");
        wires.push(companion);
        wires.sort();
    }
    let pair = (wires[0], wires[1]);
    let kernel = if run.iter().all(GateSpec::is_exact) {
        Kernel::Exact
    } else {
        Kernel::Float
    };
    let mut payload = UMatrix::identity(4, kernel).expect("dim 4 supported");
    for op in run {
        let m = embed_on_pair(op, pair, kernel).expect("support inside pair");
        payload = m.matmul(&payload).expect("same shape");
    }
    GateSpec::TwoBody {
        wires: pair,
        payload,
    }
}

/// Gate counts per support size.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub one_body: usize,
    pub two_body: usize,
}

/// Classical action of a permutation-with-phases unitary.
///
/// `mapping[j]` is the output basis index for input `j`; `phases[j]` is the
/// amplitude carried along. Reconstructing a matrix from the pair gives back
/// the source matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub mapping: [usize; 8],
    pub phases: Vec<ScalarValue>,
}

impl TruthTable {
    pub fn reconstruct(&self) -> UMatrix {
        use crate::algebra::{ExactScalar, SquareMatrix};
        use num_complex::Complex64;
        let exact = self
            .phases
            .iter()
            .all(|p| matches!(p, ScalarValue::Exact(_)));
        if exact {
            let mut m = SquareMatrix::<ExactScalar>::zeros(8);
            for (col, &row) in self.mapping.iter().enumerate() {
                if let ScalarValue::Exact(p) = &self.phases[col] {
                    m.set(row, col, p.clone());
                }
            }
            UMatrix::Exact(m)
        } else {
            let mut m = SquareMatrix::<Complex64>::zeros(8);
            for (col, &row) in self.mapping.iter().enumerate() {
                m.set(row, col, self.phases[col].to_complex());
            }
            UMatrix::Float(m)
        }
    }

    /// Renders the 8 rows as `a b c | a b c` input/output bit patterns,
    /// with a phase column when any phase differs from 1.
    pub fn render_text(&self) -> String {
        let show_phases = !self.phases.iter().all(ScalarValue::is_one);
        let mut lines = vec![if show_phases {
            "a b c | a b c | phase".to_string()
        } else {
            "a b c | a b c".to_string()
        }];
        for j in 0..8 {
            let out = self.mapping[j];
            let mut line = format!(
                "{} {} {} | {} {} {}",
                (j >> 2) & 1,
                (j >> 1) & 1,
                j & 1,
                (out >> 2) & 1,
                (out >> 1) & 1,
                out & 1,
            );
            if show_phases {
                line.push_str(&format!(" | {}", self.phases[j]));
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

/// Tolerance below which a float entry is treated as zero when classifying
/// truth-table columns.
const CLASSICAL_TOL: f64 = 1e-9;

/// Extracts the classical permutation-plus-phase action of a unitary.
///
/// Fails with [`Error::NotClassical`] when some column is a superposition:
/// in the float kernel an entry counts as "the one" only if its modulus
/// exceeds `1 − 1e−9` while every other entry stays below `1e−9`.
pub fn truth_table(m: &UMatrix) -> Result<TruthTable> {
    if m.dim() != 8 {
        return Err(Error::DimMismatch(m.dim(), 8));
    }
    let mut mapping = [0usize; 8];
    let mut phases = Vec::with_capacity(8);
    for col in 0..8 {
        let mut found: Option<usize> = None;
        for row in 0..8 {
            let is_live = match m {
                UMatrix::Exact(me) => !me.get(row, col).is_zero(),
                UMatrix::Float(mf) => mf.get(row, col).norm() >= CLASSICAL_TOL,
            };
            if !is_live {
                continue;
            }
            let unit = match m {
                UMatrix::Exact(me) => me.get(row, col).norm_sqr().is_one(),
                UMatrix::Float(mf) => mf.get(row, col).norm() > 1.0 - CLASSICAL_TOL,
            };
            if !unit || found.is_some() {
                return Err(Error::NotClassical(col));
            }
            found = Some(row);
        }
        let row = found.ok_or(Error::NotClassical(col))?;
        mapping[col] = row;
        phases.push(match m {
            UMatrix::Exact(me) => ScalarValue::Exact(me.get(row, col).clone()),
            UMatrix::Float(mf) => ScalarValue::Float(*mf.get(row, col)),
        });
    }
    Ok(TruthTable { mapping, phases })
}
