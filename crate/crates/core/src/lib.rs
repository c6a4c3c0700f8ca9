//! fredkit — a workbench for three-q-bit reversible gates.
//!
//! The crate builds the Fredkin (controlled-swap) gate out of one- and
//! two-body quantum gates, verifies the construction exactly in the ring
//! ℚ(i,√2), and searches numerically for alternative controlled-gate
//! decompositions of related targets.
//!
//! Module map:
//! * [`algebra`] — exact and float scalar kernels, dense matrices, the
//!   kernel-tagged [`algebra::UMatrix`] and its JSON format.
//! * [`gates`] — gate constructors (NOT, conditional-U, doubly-controlled
//!   phase), ladder operators, and embedding into the 3-wire space.
//! * [`circuit`] — circuit IR, the text DSL, compilation, gate merging and
//!   truth tables.
//! * [`constructions`] — the named gates and identities (Fredkin, Toffoli,
//!   the commutator trick, the λ-family) plus verification reports.
//! * [`synth`] — seeded derivative-free search for controlled-gate
//!   sequences realizing a target up to global phase.

pub mod algebra;
pub mod circuit;
pub mod constructions;
pub mod error;
pub mod gates;
pub mod synth;

pub use error::{Error, ParseError, Result};
