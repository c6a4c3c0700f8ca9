//! The named gates and identities of the Fredkin construction, with
//! verdict-returning verification routines.
//!
//! Two independent routes build the Fredkin gate — transcribing its truth
//! table and assembling it from ladder operators — and a third compiles the
//! canonical nine-gate circuit. All three must agree entrywise in the exact
//! kernel. The remaining routines cover the Toffoli form reached by
//! conjugating with a two-gate adder, the commutator identity behind the
//! core block, the determinant argument that rules out a bare σ₁ commutator,
//! and the λ-parameterized family of targets.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExactScalar, Kernel, SquareMatrix, UMatrix};
use crate::circuit::Circuit;
use crate::error::Result;
use crate::gates::{
    conditional_u, doubly_controlled_phase, not_gate, pauli, permutation_matrix, v_gate,
    GateSpec, Phase, Wire,
};
use crate::synth::param_to_unitary;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fredkin gate transcribed from its truth table: wires `b` and `c` swap
/// exactly when `a` is 1, i.e. basis indices 5 and 6 exchange.
pub fn fredkin_from_table() -> UMatrix {
    let perm: [usize; 8] = [0, 1, 2, 3, 4, 6, 5, 7];
    permutation_matrix(&perm).expect("valid permutation")
}

/// Fredkin gate assembled from ladder operators:
/// `I + n_a (b†c + c†b − n_b − n_c + 2 n_b n_c)`.
///
/// An independent construction used to cross-check
/// [`fredkin_from_table`].
pub fn fredkin_from_ladder() -> UMatrix {
    use crate::gates::{ladder_number, ladder_transfer};
    let n = |w| {
        ladder_number(w)
            .as_exact()
            .expect("ladder ops are exact")
            .clone()
    };
    let t = |dst, src| {
        ladder_transfer(dst, src)
            .expect("distinct wires")
            .as_exact()
            .expect("ladder ops are exact")
            .clone()
    };
    let two = ExactScalar::from_int(2);
    let bracket = t(Wire::B, Wire::C)
        .add(&t(Wire::C, Wire::B))
        .sub(&n(Wire::B))
        .sub(&n(Wire::C))
        .add(&n(Wire::B).mul(&n(Wire::C)).scaled(&two));
    let m = SquareMatrix::identity(8).add(&n(Wire::A).mul(&bracket));
    UMatrix::Exact(m)
}

fn cnot(ctrl: Wire, tgt: Wire) -> GateSpec {
    conditional_u(pauli(1).expect("σ₁ exists"), ctrl, tgt).expect("distinct wires")
}

fn cond_y(ctrl: Wire, tgt: Wire) -> GateSpec {
    conditional_u(pauli(2).expect("σ₂ exists"), ctrl, tgt).expect("distinct wires")
}

fn cond_v(lambda: f64, ctrl: Wire, tgt: Wire) -> GateSpec {
    let v = if lambda == std::f64::consts::FRAC_PI_2 {
        v_gate(lambda, Kernel::Exact).expect("exact V")
    } else {
        v_gate(lambda, Kernel::Float).expect("finite λ")
    };
    conditional_u(v, ctrl, tgt).expect("distinct wires")
}

/// Two-gate circuit incrementing the two-bit number `(b,c)` modulo 4.
pub fn adder_circuit() -> Circuit {
    Circuit::with_ops(vec![cnot(Wire::C, Wire::B), not_gate(Wire::C)])
}

/// Inverse of [`adder_circuit`]: decrements `(b,c)` modulo 4.
pub fn subtracter_circuit() -> Circuit {
    Circuit::with_ops(vec![not_gate(Wire::C), cnot(Wire::C, Wire::B)])
}

/// The canonical nine-gate Fredkin circuit, in execution order: the adder,
/// the four-gate commutator block, the phase corrector, the subtracter.
pub fn canonical_fredkin_circuit() -> Circuit {
    let mut ops = adder_circuit().ops;
    ops.extend(commutator_block_ops(std::f64::consts::FRAC_PI_2));
    ops.push(
        doubly_controlled_phase(Phase::minus_i(), Wire::A, Wire::B).expect("distinct wires"),
    );
    ops.extend(subtracter_circuit().ops);
    Circuit::with_ops(ops)
}

fn commutator_block_ops(lambda: f64) -> Vec<GateSpec> {
    vec![
        cond_v(lambda, Wire::B, Wire::C),
        cond_y(Wire::A, Wire::C),
        cond_v(lambda, Wire::B, Wire::C),
        cond_y(Wire::A, Wire::C),
    ]
}

/// Toffoli gate in block form: identity on the first six basis states, σ₁ on
/// the last two.
pub fn toffoli_matrix() -> UMatrix {
    let perm: [usize; 8] = [0, 1, 2, 3, 4, 5, 7, 6];
    permutation_matrix(&perm).expect("valid permutation")
}

/// Group commutator `u·v·u†·v†`.
pub fn commutator(u: &UMatrix, v: &UMatrix) -> Result<UMatrix> {
    u.matmul(v)?.matmul(&u.adjoint())?.matmul(&v.adjoint())
}

/// Which orientation of the adder the basis-relabeling index list matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListOrientation {
    Adder,
    AdderInverse,
    Neither,
}

/// Outcome of the Toffoli-form check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelabelReport {
    /// `A · U_Fredkin · A⁻¹ = U_Toffoli` holds exactly.
    pub conjugation_matches: bool,
    /// Orientation of `A` matched by the relabeling list 4,1,2,3,8,5,6,7.
    pub list_orientation: ListOrientation,
    /// Determinant is unchanged by the conjugation.
    pub determinant_preserved: bool,
}

impl RelabelReport {
    pub fn passed(&self) -> bool {
        self.conjugation_matches
            && self.list_orientation != ListOrientation::Neither
            && self.determinant_preserved
    }

    pub fn to_check_report(&self) -> CheckReport {
        CheckReport {
            check: "toffoli-form".to_string(),
            passed: self.passed(),
            max_abs_error: 0.0,
            orientation_notes: Some(format!(
                "relabel list 4,1,2,3,8,5,6,7 matches {:?} as a column permutation",
                self.list_orientation
            )),
        }
    }
}

/// Checks that conjugating the Fredkin gate by the compiled adder yields the
/// Toffoli block form, and reports which orientation of the adder the
/// relabeling list describes as a column permutation.
pub fn verify_relabel() -> RelabelReport {
    let adder = adder_circuit()
        .compile(Kernel::Exact)
        .expect("adder compiles exactly");
    let fredkin = fredkin_from_table();
    let conjugated = adder
        .matmul(&fredkin)
        .and_then(|m| m.matmul(&adder.adjoint()))
        .expect("shapes agree");
    let toffoli = toffoli_matrix();

    // The stated list is 1-based: position j holds old basis label list[j].
    let list_zero_based: [usize; 8] = [3, 0, 1, 2, 7, 4, 5, 6];
    let as_matrix = permutation_matrix(&list_zero_based).expect("valid permutation");
    let list_orientation = if as_matrix == adder {
        ListOrientation::Adder
    } else if as_matrix == adder.adjoint() {
        ListOrientation::AdderInverse
    } else {
        ListOrientation::Neither
    };

    RelabelReport {
        conjugation_matches: conjugated == toffoli,
        list_orientation,
        determinant_preserved: conjugated.determinant() == fredkin.determinant(),
    }
}

/// Seed for the reproducible random-unitary battery below.
pub const OBSTRUCTION_SEED: u64 = 0x5eed_f0ed;

/// Outcome of the determinant-obstruction battery.
///
/// A commutator of unitaries always has determinant 1, while det σ₁ = −1,
/// so no pair of 2×2 unitaries can have σ₁ as its commutator. The battery
/// spells that out: the canonical pair is checked exactly, then `pairs`
/// seeded random pairs within `tolerance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub seed: u64,
    pub pairs: usize,
    pub tolerance: f64,
    pub sigma1_det_is_minus_one: bool,
    pub canonical_commutator_det_is_one: bool,
    pub max_abs_error: f64,
    pub passed: bool,
}

impl ObstructionReport {
    pub fn to_check_report(&self) -> CheckReport {
        CheckReport {
            check: "determinant-obstruction".to_string(),
            passed: self.passed,
            max_abs_error: self.max_abs_error,
            orientation_notes: None,
        }
    }
}

/// Runs the determinant battery over `pairs` seeded random unitary pairs.
pub fn determinant_obstruction(seed: u64, pairs: usize) -> ObstructionReport {
    let tolerance = 1e-12;
    let sigma1 = pauli(1).expect("σ₁ exists");
    let sigma1_det_is_minus_one = sigma1.determinant().to_complex() == Complex64::new(-1.0, 0.0);

    let u = pauli(2).expect("σ₂ exists");
    let v = v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).expect("exact V");
    let canonical_commutator_det_is_one = commutator(&u, &v)
        .expect("dims agree")
        .determinant()
        .to_complex()
        == Complex64::new(1.0, 0.0);

    let one_pair = |index: u64| -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut draw = || {
            let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let alpha = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let beta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let gamma = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            param_to_unitary(phi, alpha, beta, gamma)
        };
        let (u, v) = (draw(), draw());
        let det = commutator(&u, &v)
            .expect("dims agree")
            .determinant()
            .to_complex();
        (det - Complex64::new(1.0, 0.0)).norm()
    };

    let indices: Vec<u64> = (0..pairs as u64).collect();
    #[cfg(feature = "parallel")]
    let errors: Vec<f64> = indices.par_iter().map(|&i| one_pair(i)).collect();
    #[cfg(not(feature = "parallel"))]
    let errors: Vec<f64> = indices.iter().map(|&i| one_pair(i)).collect();

    let max_abs_error = errors.iter().cloned().fold(0.0f64, f64::max);
    ObstructionReport {
        seed,
        pairs,
        tolerance,
        sigma1_det_is_minus_one,
        canonical_commutator_det_is_one,
        max_abs_error,
        passed: sigma1_det_is_minus_one
            && canonical_commutator_det_is_one
            && max_abs_error <= tolerance,
    }
}

/// The λ-parameterized block target: identity on the first six basis states,
/// `cos λ + i sin λ σ₁` on the last two.
pub fn m_matrix(lambda: f64) -> UMatrix {
    let (s, c) = lambda.sin_cos();
    let mut m = SquareMatrix::<Complex64>::identity(8);
    m.set(6, 6, Complex64::new(c, 0.0));
    m.set(6, 7, Complex64::new(0.0, s));
    m.set(7, 6, Complex64::new(0.0, s));
    m.set(7, 7, Complex64::new(c, 0.0));
    UMatrix::Float(m)
}

/// Four-gate commutator circuit realizing [`m_matrix`]`(λ)`, using
/// `U = σ₂` on `(a,c)` and `V(λ)` on `(b,c)`. At λ = π/2 the V payload is
/// exact and the circuit compiles in the exact kernel.
pub fn m_circuit(lambda: f64) -> Circuit {
    Circuit::with_ops(commutator_block_ops(lambda))
}

/// A single verification verdict, serializable as a JSON report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub max_abs_error: f64,
    pub orientation_notes: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::truth_table;

    fn idx(a: usize, b: usize, c: usize) -> usize {
        4 * a + 2 * b + c
    }

    fn exact_id8() -> UMatrix {
        UMatrix::identity(8, Kernel::Exact).unwrap()
    }

    #[test]
    fn table_construction_swaps_5_and_6() {
        let f = fredkin_from_table();
        assert_eq!(f.entry_complex(idx(1, 1, 0), idx(1, 0, 1)), Complex64::new(1.0, 0.0));
        assert_eq!(f.entry_complex(idx(1, 0, 1), idx(1, 1, 0)), Complex64::new(1.0, 0.0));
        for j in 0..4 {
            assert_eq!(f.entry_complex(j, j), Complex64::new(1.0, 0.0));
        }
        // product of a transposition: self-inverse
        assert_eq!(f.matmul(&f).unwrap(), exact_id8());
    }

    #[test]
    fn ladder_construction_matches_table() {
        let ladder = fredkin_from_ladder();
        assert_eq!(ladder, fredkin_from_table());
        // |1,1,1⟩ is fixed: the −2 and +2 terms cancel
        assert_eq!(ladder.entry_complex(7, 7), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn adder_increments_bc_mod_4() {
        let a = adder_circuit().compile(Kernel::Exact).unwrap();
        for alpha in 0..2 {
            for bc in 0..4usize {
                let col = 4 * alpha + bc;
                let row = 4 * alpha + ((bc + 1) % 4);
                assert_eq!(a.entry_complex(row, col), Complex64::new(1.0, 0.0));
            }
        }
        // adder⁴ = I and subtracter ∘ adder = I
        let a2 = a.matmul(&a).unwrap();
        assert_eq!(a2.matmul(&a2).unwrap(), exact_id8());
        let s = subtracter_circuit().compile(Kernel::Exact).unwrap();
        assert_eq!(s.matmul(&a).unwrap(), exact_id8());
    }

    #[test]
    fn canonical_circuit_compiles_to_fredkin() {
        let c = canonical_fredkin_circuit();
        assert_eq!(c.ops.len(), 9);
        assert_eq!(c.compile(Kernel::Exact).unwrap(), fredkin_from_table());
    }

    #[test]
    fn canonical_circuit_gate_counts() {
        let c = canonical_fredkin_circuit();
        let pre = c.count_gates();
        assert_eq!((pre.one_body, pre.two_body), (2, 7));
        let merged = c.merge_adjacent();
        let post = merged.count_gates();
        assert_eq!((post.one_body, post.two_body), (0, 6));
        assert_eq!(
            merged.compile(Kernel::Exact).unwrap(),
            c.compile(Kernel::Exact).unwrap()
        );
    }

    #[test]
    fn toffoli_block_form() {
        let t = toffoli_matrix();
        assert_eq!(t.entry_complex(7, 6), Complex64::new(1.0, 0.0));
        assert_eq!(t.entry_complex(6, 7), Complex64::new(1.0, 0.0));
        assert_eq!(t.matmul(&t).unwrap(), exact_id8());
        // phase corrector ∘ commutator block at λ = π/2 equals Toffoli
        let mut ops = commutator_block_ops(std::f64::consts::FRAC_PI_2);
        ops.push(doubly_controlled_phase(Phase::minus_i(), Wire::A, Wire::B).unwrap());
        let compiled = Circuit::with_ops(ops).compile(Kernel::Exact).unwrap();
        assert_eq!(compiled, t);
    }

    #[test]
    fn relabel_verdict() {
        let report = verify_relabel();
        assert!(report.conjugation_matches);
        assert!(report.determinant_preserved);
        // The stated list reads off the inverse (subtracter) action.
        assert_eq!(report.list_orientation, ListOrientation::AdderInverse);
        assert!(report.passed());
    }

    #[test]
    fn commutator_identity_at_half_pi() {
        let u = pauli(2).unwrap();
        let v = v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).unwrap();
        let comm = commutator(&u, &v).unwrap();
        let i_sigma1 = UMatrix::exact(
            pauli(1)
                .unwrap()
                .as_exact()
                .unwrap()
                .scaled(&ExactScalar::i()),
        )
        .unwrap();
        assert_eq!(comm, i_sigma1);
        // commutator(U, U) = I
        assert_eq!(
            commutator(&u, &u).unwrap(),
            UMatrix::identity(2, Kernel::Exact).unwrap()
        );
    }

    #[test]
    fn commutator_traces_the_m_block() {
        for lambda in [0.4, 1.3] {
            let u = pauli(2).unwrap().to_float();
            let v = v_gate(lambda, Kernel::Float).unwrap();
            let comm = commutator(&u, &v).unwrap();
            // cos λ · I + i sin λ · σ₁
            let (s, c) = lambda.sin_cos();
            let expected = UMatrix::float(SquareMatrix::new(
                2,
                vec![
                    Complex64::new(c, 0.0),
                    Complex64::new(0.0, s),
                    Complex64::new(0.0, s),
                    Complex64::new(c, 0.0),
                ],
            ))
            .unwrap();
            assert!(comm.max_abs_diff(&expected).unwrap() < 1e-15);
        }
    }

    #[test]
    fn obstruction_battery_is_reproducible() {
        let r1 = determinant_obstruction(OBSTRUCTION_SEED, 32);
        let r2 = determinant_obstruction(OBSTRUCTION_SEED, 32);
        assert!(r1.passed);
        assert_eq!(r1.max_abs_error, r2.max_abs_error);
        assert!(r1.max_abs_error <= 1e-12);
    }

    #[test]
    fn m_matrix_values() {
        let m = m_matrix(std::f64::consts::FRAC_PI_2);
        assert!((m.entry_complex(6, 7) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((m.entry_complex(6, 6)).norm() < 1e-15);
        let m0 = m_matrix(0.0);
        assert!(m0
            .max_abs_diff(&UMatrix::identity(8, Kernel::Float).unwrap())
            .unwrap()
            < 1e-15);
        // block at λ = π/3 is [[1/2, i√3/2], [i√3/2, 1/2]]
        let m3 = m_matrix(std::f64::consts::FRAC_PI_3);
        assert!((m3.entry_complex(6, 6) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(
            (m3.entry_complex(7, 6) - Complex64::new(0.0, 3f64.sqrt() / 2.0)).norm() < 1e-15
        );
    }

    #[test]
    fn m_circuit_realizes_m_matrix() {
        // exact at λ = π/2
        let exact = m_circuit(std::f64::consts::FRAC_PI_2)
            .compile(Kernel::Exact)
            .unwrap();
        let mut expected = SquareMatrix::<ExactScalar>::identity(8);
        expected.set(6, 6, ExactScalar::zero());
        expected.set(7, 7, ExactScalar::zero());
        expected.set(6, 7, ExactScalar::i());
        expected.set(7, 6, ExactScalar::i());
        assert_eq!(exact, UMatrix::exact(expected).unwrap());

        // float elsewhere
        for lambda in [0.6, 1.0, 2.2] {
            let compiled = m_circuit(lambda).compile(Kernel::Float).unwrap();
            assert!(compiled.max_abs_diff(&m_matrix(lambda)).unwrap() < 1e-12);
            assert!(compiled.phase_distance(&m_matrix(lambda)).unwrap() < 1e-12);
        }
        // λ = 0 collapses to the identity
        let id = m_circuit(0.0).compile(Kernel::Float).unwrap();
        assert!(id
            .max_abs_diff(&UMatrix::identity(8, Kernel::Float).unwrap())
            .unwrap()
            < 1e-15);
    }

    #[test]
    fn fredkin_truth_table_recovers_and() {
        let tt = truth_table(&fredkin_from_table()).unwrap();
        for a in 0..2usize {
            for b in 0..2usize {
                let input = idx(a, b, 0);
                let output = tt.mapping[input];
                assert_eq!(output & 1, a & b, "c_out must be a AND b");
            }
        }
    }
}
