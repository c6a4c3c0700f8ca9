//! Gate constructors and their embedding into the 3-wire state space.
//!
//! The three wires are labelled `a`, `b`, `c`; basis state |α,β,γ⟩ has index
//! `4α + 2β + γ`, so wire `a` is the most significant bit.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{ExactScalar, Kernel, Scalar, SquareMatrix, UMatrix};
use crate::error::{Error, Result};

/// One of the three named wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Wire {
    A,
    B,
    C,
}

impl Wire {
    pub const ALL: [Wire; 3] = [Wire::A, Wire::B, Wire::C];

    /// Bit position of this wire within a basis index (`a` most significant).
    pub fn bit(self) -> usize {
        match self {
            Wire::A => 2,
            Wire::B => 1,
            Wire::C => 0,
        }
    }

    pub fn label(self) -> char {
        match self {
            Wire::A => 'a',
            Wire::B => 'b',
            Wire::C => 'c',
        }
    }

    pub fn from_label(ch: char) -> Option<Wire> {
        match ch {
            'a' => Some(Wire::A),
            'b' => Some(Wire::B),
            'c' => Some(Wire::C),
            _ => None,
        }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A unit-modulus phase factor: an exact ring element or an angle `e^{iθ}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Phase {
    Exact(ExactScalar),
    Angle(f64),
}

impl Phase {
    pub fn i() -> Self {
        Phase::Exact(ExactScalar::i())
    }

    pub fn minus_i() -> Self {
        Phase::Exact(ExactScalar::minus_i())
    }

    pub fn one() -> Self {
        Phase::Exact(ExactScalar::one())
    }

    pub fn minus_one() -> Self {
        Phase::Exact(ExactScalar::from_int(-1))
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Phase::Exact(p) => p.norm_sqr().is_one(),
            Phase::Angle(theta) => theta.is_finite(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Phase::Exact(p) => p.to_complex(),
            Phase::Angle(theta) => Complex64::from_polar(1.0, *theta),
        }
    }
}

/// A gate application on named wires.
///
/// The first three variants are the primitive gates of the construction;
/// `TwoBody` holds a fused 4×4 payload and is only produced by circuit
/// merging.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    Not {
        wire: Wire,
    },
    /// Applies `payload` to `tgt` when `ctrl` is |1⟩.
    ConditionalU {
        ctrl: Wire,
        tgt: Wire,
        payload: UMatrix,
    },
    /// Multiplies the amplitude by `phase` when both wires are |1⟩.
    DoublyControlledPhase {
        wires: (Wire, Wire),
        phase: Phase,
    },
    /// Arbitrary 4×4 payload on an ordered wire pair (`wires.0` is the
    /// more-significant payload bit).
    TwoBody {
        wires: (Wire, Wire),
        payload: UMatrix,
    },
}

impl GateSpec {
    /// Bitmask of the wires the gate acts on.
    pub fn support_mask(&self) -> u8 {
        match self {
            GateSpec::Not { wire } => 1 << wire.bit(),
            GateSpec::ConditionalU { ctrl, tgt, .. } => (1 << ctrl.bit()) | (1 << tgt.bit()),
            GateSpec::DoublyControlledPhase { wires, .. } | GateSpec::TwoBody { wires, .. } => {
                (1 << wires.0.bit()) | (1 << wires.1.bit())
            }
        }
    }

    pub fn support(&self) -> Vec<Wire> {
        let mask = self.support_mask();
        Wire::ALL
            .into_iter()
            .filter(|w| mask & (1 << w.bit()) != 0)
            .collect()
    }

    /// Number of wires touched: 1 for one-body gates, 2 for two-body gates.
    pub fn body_count(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    /// True when the gate can be embedded in the exact kernel.
    pub fn is_exact(&self) -> bool {
        match self {
            GateSpec::Not { .. } => true,
            GateSpec::ConditionalU { payload, .. } | GateSpec::TwoBody { payload, .. } => {
                payload.kernel() == Kernel::Exact
            }
            GateSpec::DoublyControlledPhase { phase, .. } => matches!(phase, Phase::Exact(_)),
        }
    }
}

/// Pauli matrix σₖ for k ∈ {1, 2, 3}, in the exact kernel.
pub fn pauli(k: usize) -> Result<UMatrix> {
    let zero = ExactScalar::zero;
    let one = ExactScalar::one;
    let entries = match k {
        1 => vec![zero(), one(), one(), zero()],
        2 => vec![
            zero(),
            ExactScalar::minus_i(),
            ExactScalar::i(),
            zero(),
        ],
        3 => vec![one(), zero(), zero(), -&one()],
        _ => return Err(Error::BadPauliIndex(k)),
    };
    UMatrix::exact(SquareMatrix::new(2, entries))
}

/// `V(λ) = cos(λ/2)·σ₂ + sin(λ/2)·σ₃` — Hermitian, unitary and self-inverse.
///
/// The exact kernel supports only λ = π/2, where `V = (σ₂+σ₃)/√2`.
pub fn v_gate(lambda: f64, kernel: Kernel) -> Result<UMatrix> {
    match kernel {
        Kernel::Exact => {
            if lambda != std::f64::consts::FRAC_PI_2 {
                return Err(Error::ExactUnsupported);
            }
            let h = ExactScalar::inv_sqrt2();
            // (σ₂+σ₃)/√2 = [[1/√2, -i/√2], [i/√2, -1/√2]]
            UMatrix::exact(SquareMatrix::new(
                2,
                vec![
                    h.clone(),
                    &ExactScalar::minus_i() * &h,
                    &ExactScalar::i() * &h,
                    -&h,
                ],
            ))
        }
        Kernel::Float => {
            if !lambda.is_finite() {
                return Err(Error::NonFinite(0, 0));
            }
            let (s, c) = (lambda / 2.0).sin_cos();
            UMatrix::float(SquareMatrix::new(
                2,
                vec![
                    Complex64::new(s, 0.0),
                    Complex64::new(0.0, -c),
                    Complex64::new(0.0, c),
                    Complex64::new(-s, 0.0),
                ],
            ))
        }
    }
}

/// Quantum-NOT on a single wire.
pub fn not_gate(wire: Wire) -> GateSpec {
    GateSpec::Not { wire }
}

/// Conditional-U: `u` acts on `tgt` when `ctrl` is |1⟩.
pub fn conditional_u(u: UMatrix, ctrl: Wire, tgt: Wire) -> Result<GateSpec> {
    if ctrl == tgt {
        return Err(Error::SameWire);
    }
    if u.dim() != 2 {
        return Err(Error::DimMismatch(u.dim(), 2));
    }
    if !u.is_unitary(UNITARY_TOL) {
        let gram = u.adjoint().matmul(&u).expect("same shape");
        let dev = gram
            .max_abs_diff(&UMatrix::identity(2, u.kernel()).expect("dim 2"))
            .expect("same dim");
        return Err(Error::NotUnitary(dev));
    }
    Ok(GateSpec::ConditionalU {
        ctrl,
        tgt,
        payload: u,
    })
}

/// Unitarity tolerance applied to float gate payloads.
pub const UNITARY_TOL: f64 = 1e-9;

/// Doubly-controlled phase shifter; symmetric in its two wires.
pub fn doubly_controlled_phase(phase: Phase, w1: Wire, w2: Wire) -> Result<GateSpec> {
    if w1 == w2 {
        return Err(Error::SameWire);
    }
    if !phase.is_unit() {
        return Err(Error::NonUnitPhase);
    }
    Ok(GateSpec::DoublyControlledPhase {
        wires: (w1, w2),
        phase,
    })
}

/// Conversion hooks used by the generic embedding code to pull gate payloads
/// into a concrete scalar kernel.
trait FromPayload: Scalar {
    fn matrix(payload: &UMatrix) -> Result<SquareMatrix<Self>>;
    fn phase(phase: &Phase) -> Result<Self>;
}

impl FromPayload for ExactScalar {
    fn matrix(payload: &UMatrix) -> Result<SquareMatrix<ExactScalar>> {
        payload
            .as_exact()
            .cloned()
            .ok_or(Error::ExactUnsupported)
    }
    fn phase(phase: &Phase) -> Result<ExactScalar> {
        match phase {
            Phase::Exact(p) => Ok(p.clone()),
            Phase::Angle(_) => Err(Error::ExactUnsupported),
        }
    }
}

impl FromPayload for Complex64 {
    fn matrix(payload: &UMatrix) -> Result<SquareMatrix<Complex64>> {
        Ok(payload.to_float_matrix())
    }
    fn phase(phase: &Phase) -> Result<Complex64> {
        Ok(phase.to_complex())
    }
}

/// Embeds a gate into the full 8×8 space, identity on untouched wires.
pub fn embed(gate: &GateSpec, kernel: Kernel) -> Result<UMatrix> {
    match kernel {
        Kernel::Exact => Ok(UMatrix::Exact(embed_typed::<ExactScalar>(gate, 8, None)?)),
        Kernel::Float => Ok(UMatrix::Float(embed_typed::<Complex64>(gate, 8, None)?)),
    }
}

/// Embeds a gate into the 4×4 space of an ordered wire pair. Used when
/// fusing adjacent gates; the gate's support must lie inside the pair.
pub(crate) fn embed_on_pair(gate: &GateSpec, pair: (Wire, Wire), kernel: Kernel) -> Result<UMatrix> {
    match kernel {
        Kernel::Exact => Ok(UMatrix::Exact(embed_typed::<ExactScalar>(gate, 4, Some(pair))?)),
        Kernel::Float => Ok(UMatrix::Float(embed_typed::<Complex64>(gate, 4, Some(pair))?)),
    }
}

/// Bit position of `wire` within the embedding space: the full 3-wire space
/// or the space of an ordered pair.
fn bit_in_space(wire: Wire, pair: Option<(Wire, Wire)>) -> usize {
    match pair {
        None => wire.bit(),
        Some((hi, lo)) => {
            if wire == hi {
                1
            } else if wire == lo {
                0
            } else {
                panic!("gate wire {wire} outside the fused pair")
            }
        }
    }
}

fn embed_typed<S: FromPayload>(
    gate: &GateSpec,
    dim: usize,
    pair: Option<(Wire, Wire)>,
) -> Result<SquareMatrix<S>> {
    let mut m = SquareMatrix::<S>::zeros(dim);
    match gate {
        GateSpec::Not { wire } => {
            let flip = 1 << bit_in_space(*wire, pair);
            for col in 0..dim {
                m.set(col ^ flip, col, S::one());
            }
        }
        GateSpec::ConditionalU { ctrl, tgt, payload } => {
            let u = S::matrix(payload)?;
            let cbit = 1 << bit_in_space(*ctrl, pair);
            let tbit = 1 << bit_in_space(*tgt, pair);
            for col in 0..dim {
                if col & cbit == 0 {
                    m.set(col, col, S::one());
                } else {
                    let t_in = usize::from(col & tbit != 0);
                    for t_out in 0..2 {
                        let row = (col & !tbit) | (t_out * tbit);
                        m.set(row, col, u.get(t_out, t_in).clone());
                    }
                }
            }
        }
        GateSpec::DoublyControlledPhase { wires, phase } => {
            let p = S::phase(phase)?;
            let mask = (1 << bit_in_space(wires.0, pair)) | (1 << bit_in_space(wires.1, pair));
            for col in 0..dim {
                let entry = if col & mask == mask { p.clone() } else { S::one() };
                m.set(col, col, entry);
            }
        }
        GateSpec::TwoBody { wires, payload } => {
            let u = S::matrix(payload)?;
            let hi = 1 << bit_in_space(wires.0, pair);
            let lo = 1 << bit_in_space(wires.1, pair);
            for col in 0..dim {
                let p_in = 2 * usize::from(col & hi != 0) + usize::from(col & lo != 0);
                for p_out in 0..4 {
                    let row = (col & !(hi | lo))
                        | (if p_out & 2 != 0 { hi } else { 0 })
                        | (if p_out & 1 != 0 { lo } else { 0 });
                    let v = u.get(p_out, p_in);
                    if !v.is_zero() {
                        m.set(row, col, v.clone());
                    }
                }
            }
        }
    }
    Ok(m)
}

fn site(entries: [i64; 4]) -> SquareMatrix<ExactScalar> {
    SquareMatrix::new(2, entries.map(ExactScalar::from_int).to_vec())
}

/// Embeds a single-site 2×2 operator on `wire`, identity elsewhere, as an
/// exact 8×8 matrix.
fn embed_site(op: SquareMatrix<ExactScalar>, wire: Wire) -> SquareMatrix<ExactScalar> {
    let id = SquareMatrix::<ExactScalar>::identity(2);
    let pick = |w: Wire| if w == wire { op.clone() } else { id.clone() };
    pick(Wire::A).kron(&pick(Wire::B)).kron(&pick(Wire::C))
}

/// Occupation-number operator `w†w`: diagonal, 1 exactly on the basis
/// states where `wire` is |1⟩.
pub fn ladder_number(wire: Wire) -> UMatrix {
    UMatrix::Exact(embed_site(site([0, 0, 0, 1]), wire))
}

/// Transfer operator `dst† · src`: moves an excitation from `src` to `dst`,
/// annihilating states where `src` is empty or `dst` occupied.
///
/// Sites are hard-core two-level systems; operators on distinct wires
/// commute (no fermionic sign strings).
pub fn ladder_transfer(dst: Wire, src: Wire) -> Result<UMatrix> {
    if dst == src {
        return Err(Error::SameWire);
    }
    // creation = [[0,0],[1,0]], annihilation = [[0,1],[0,0]]
    let create = embed_site(site([0, 0, 1, 0]), dst);
    let annihilate = embed_site(site([0, 1, 0, 0]), src);
    Ok(UMatrix::Exact(create.mul(&annihilate)))
}

/// Permutation matrix: column `j` holds basis vector `perm[j]`.
pub fn permutation_matrix(perm: &[usize]) -> Result<UMatrix> {
    let n = perm.len();
    if n != 8 {
        return Err(Error::UnsupportedDim(n));
    }
    let mut seen = [false; 8];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotPermutation(n));
        }
        seen[p] = true;
    }
    let mut m = SquareMatrix::<ExactScalar>::zeros(n);
    for (col, &row) in perm.iter().enumerate() {
        m.set(row, col, ExactScalar::one());
    }
    UMatrix::exact(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kernel;

    fn idx(a: usize, b: usize, c: usize) -> usize {
        4 * a + 2 * b + c
    }

    #[test]
    fn pauli_basics() {
        for k in 1..=3 {
            let s = pauli(k).unwrap();
            assert!(s.is_unitary(0.0));
            assert_eq!(
                s.matmul(&s).unwrap(),
                UMatrix::identity(2, Kernel::Exact).unwrap()
            );
        }
        assert!(matches!(pauli(0), Err(Error::BadPauliIndex(0))));
        // σ₁ |0⟩ = |1⟩
        let sx = pauli(1).unwrap();
        assert!(sx.entry_complex(1, 0) == Complex64::new(1.0, 0.0));
        // σ₂σ₃ = iσ₁
        let lhs = pauli(2).unwrap().matmul(&pauli(3).unwrap()).unwrap();
        let i = ExactScalar::i();
        let rhs = UMatrix::exact(
            pauli(1).unwrap().as_exact().unwrap().scaled(&i),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn v_gate_exact_and_float() {
        let v = v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).unwrap();
        assert!(v.is_unitary(0.0));
        assert_eq!(v.adjoint(), v); // Hermitian
        assert_eq!(
            v.matmul(&v).unwrap(),
            UMatrix::identity(2, Kernel::Exact).unwrap()
        );
        // exact V equals (σ₂+σ₃)/√2 assembled by hand
        let s2 = pauli(2).unwrap();
        let s3 = pauli(3).unwrap();
        let sum = s2.as_exact().unwrap().add(s3.as_exact().unwrap());
        let expected = UMatrix::exact(sum.scaled(&ExactScalar::inv_sqrt2())).unwrap();
        assert_eq!(v, expected);

        assert!(matches!(v_gate(0.3, Kernel::Exact), Err(Error::ExactUnsupported)));

        // V(0) = σ₂
        let v0 = v_gate(0.0, Kernel::Float).unwrap();
        assert!(v0.max_abs_diff(&pauli(2).unwrap()).unwrap() < 1e-15);

        for lambda in [0.3, 1.1, 2.9] {
            let v = v_gate(lambda, Kernel::Float).unwrap();
            let sq = v.matmul(&v).unwrap();
            let id = UMatrix::identity(2, Kernel::Float).unwrap();
            assert!(sq.max_abs_diff(&id).unwrap() < 1e-12);
            // traceless and Hermitian
            assert!(v.max_abs_diff(&v.adjoint()).unwrap() < 1e-15);
            let tr = v.entry_complex(0, 0) + v.entry_complex(1, 1);
            assert!(tr.norm() < 1e-15);
        }
    }

    #[test]
    fn not_gate_embedding() {
        let g = not_gate(Wire::C);
        let m = embed(&g, Kernel::Exact).unwrap();
        // |0,0,0⟩ → |0,0,1⟩
        assert_eq!(m.entry_complex(idx(0, 0, 1), idx(0, 0, 0)), Complex64::new(1.0, 0.0));
        assert_eq!(
            m.matmul(&m).unwrap(),
            UMatrix::identity(8, Kernel::Exact).unwrap()
        );
        // embed(not a) = σ₁ ⊗ I ⊗ I
        let ga = not_gate(Wire::A);
        let ma = embed(&ga, Kernel::Exact).unwrap();
        let id4 = UMatrix::identity(4, Kernel::Exact).unwrap();
        let expected = pauli(1).unwrap().kron(&id4).unwrap();
        assert_eq!(ma, expected);
    }

    #[test]
    fn conditional_u_semantics() {
        assert!(matches!(
            conditional_u(pauli(1).unwrap(), Wire::C, Wire::C),
            Err(Error::SameWire)
        ));
        let two = UMatrix::exact(
            SquareMatrix::<ExactScalar>::identity(2).scaled(&ExactScalar::from_int(2)),
        )
        .unwrap();
        assert!(matches!(
            conditional_u(two, Wire::A, Wire::B),
            Err(Error::NotUnitary(_))
        ));

        // conditional-σ₁ with control c, target b: |0,0,1⟩ → |0,1,1⟩
        let g = conditional_u(pauli(1).unwrap(), Wire::C, Wire::B).unwrap();
        let m = embed(&g, Kernel::Exact).unwrap();
        assert_eq!(m.entry_complex(idx(0, 1, 1), idx(0, 0, 1)), Complex64::new(1.0, 0.0));
        // control |0⟩ leaves the state alone
        assert_eq!(m.entry_complex(idx(0, 1, 0), idx(0, 1, 0)), Complex64::new(1.0, 0.0));
        // CNOT truth action |1,0⟩ → |1,1⟩ on (ctrl=a, tgt=b)
        let cnot = conditional_u(pauli(1).unwrap(), Wire::A, Wire::B).unwrap();
        let mc = embed(&cnot, Kernel::Exact).unwrap();
        assert_eq!(mc.entry_complex(idx(1, 1, 0), idx(1, 0, 0)), Complex64::new(1.0, 0.0));

        // conditional-σ₂ squared is the identity
        let g2 = conditional_u(pauli(2).unwrap(), Wire::A, Wire::C).unwrap();
        let m2 = embed(&g2, Kernel::Exact).unwrap();
        assert_eq!(
            m2.matmul(&m2).unwrap(),
            UMatrix::identity(8, Kernel::Exact).unwrap()
        );
        // conditional_u(U)·conditional_u(U†) = I
        let v = v_gate(0.9, Kernel::Float).unwrap();
        let gv = embed(&conditional_u(v.clone(), Wire::B, Wire::C).unwrap(), Kernel::Float).unwrap();
        let gv_dag = embed(
            &conditional_u(v.adjoint(), Wire::B, Wire::C).unwrap(),
            Kernel::Float,
        )
        .unwrap();
        let id8 = UMatrix::identity(8, Kernel::Float).unwrap();
        assert!(gv.matmul(&gv_dag).unwrap().max_abs_diff(&id8).unwrap() < 1e-15);
    }

    #[test]
    fn doubly_controlled_phase_semantics() {
        let g = doubly_controlled_phase(Phase::minus_i(), Wire::A, Wire::B).unwrap();
        let m = embed(&g, Kernel::Exact).unwrap();
        assert_eq!(m.entry_complex(idx(1, 1, 0), idx(1, 1, 0)), Complex64::new(0.0, -1.0));
        assert_eq!(m.entry_complex(idx(1, 1, 1), idx(1, 1, 1)), Complex64::new(0.0, -1.0));
        assert_eq!(m.entry_complex(idx(1, 0, 1), idx(1, 0, 1)), Complex64::new(1.0, 0.0));
        // (−i)⁴ = 1
        let m2 = m.matmul(&m).unwrap();
        let m4 = m2.matmul(&m2).unwrap();
        assert_eq!(m4, UMatrix::identity(8, Kernel::Exact).unwrap());
        // p = 1 is the identity
        let gid = doubly_controlled_phase(Phase::one(), Wire::A, Wire::B).unwrap();
        assert_eq!(
            embed(&gid, Kernel::Exact).unwrap(),
            UMatrix::identity(8, Kernel::Exact).unwrap()
        );
        // symmetric in its wires
        let swapped = doubly_controlled_phase(Phase::minus_i(), Wire::B, Wire::A).unwrap();
        assert_eq!(embed(&swapped, Kernel::Exact).unwrap(), m);
        // non-unit phase rejected
        assert!(matches!(
            doubly_controlled_phase(Phase::Exact(ExactScalar::from_int(2)), Wire::A, Wire::B),
            Err(Error::NonUnitPhase)
        ));
    }

    #[test]
    fn every_embedded_gate_is_unitary_exactly() {
        let gates = [
            not_gate(Wire::B),
            conditional_u(pauli(2).unwrap(), Wire::A, Wire::C).unwrap(),
            conditional_u(
                v_gate(std::f64::consts::FRAC_PI_2, Kernel::Exact).unwrap(),
                Wire::B,
                Wire::C,
            )
            .unwrap(),
            doubly_controlled_phase(Phase::minus_i(), Wire::A, Wire::B).unwrap(),
        ];
        for g in &gates {
            assert!(embed(g, Kernel::Exact).unwrap().is_unitary(0.0));
        }
    }

    #[test]
    fn ladder_number_diagonal() {
        let n_a = ladder_number(Wire::A);
        for j in 0..8 {
            let expect = if j >= 4 { 1.0 } else { 0.0 };
            assert_eq!(n_a.entry_complex(j, j), Complex64::new(expect, 0.0));
        }
    }

    #[test]
    fn ladder_transfer_moves_excitations() {
        // b†c on |1,0,1⟩ gives |1,1,0⟩
        let t = ladder_transfer(Wire::B, Wire::C).unwrap();
        assert_eq!(t.entry_complex(idx(1, 1, 0), idx(1, 0, 1)), Complex64::new(1.0, 0.0));
        // c†b on |1,0,1⟩ is the zero vector (b empty)
        let t2 = ladder_transfer(Wire::C, Wire::B).unwrap();
        for row in 0..8 {
            assert_eq!(t2.entry_complex(row, idx(1, 0, 1)), Complex64::new(0.0, 0.0));
        }
        assert!(matches!(ladder_transfer(Wire::A, Wire::A), Err(Error::SameWire)));
    }

    #[test]
    fn permutation_matrix_checks() {
        let id: Vec<usize> = (0..8).collect();
        assert_eq!(
            permutation_matrix(&id).unwrap(),
            UMatrix::identity(8, Kernel::Exact).unwrap()
        );
        let relabel = permutation_matrix(&[3, 0, 1, 2, 7, 4, 5, 6]).unwrap();
        assert!(relabel.is_unitary(0.0));
        let det = relabel.determinant().to_complex();
        assert!(det == Complex64::new(1.0, 0.0) || det == Complex64::new(-1.0, 0.0));
        let prod = relabel.matmul(&relabel.adjoint()).unwrap();
        assert_eq!(prod, UMatrix::identity(8, Kernel::Exact).unwrap());
        assert!(matches!(
            permutation_matrix(&[0, 0, 1, 2, 3, 4, 5, 6]),
            Err(Error::NotPermutation(8))
        ));
    }

    #[test]
    fn disjoint_supports_commute() {
        let g1 = embed(&not_gate(Wire::A), Kernel::Exact).unwrap();
        let g2 = embed(
            &conditional_u(pauli(2).unwrap(), Wire::B, Wire::C).unwrap(),
            Kernel::Exact,
        )
        .unwrap();
        assert_eq!(g1.matmul(&g2).unwrap(), g2.matmul(&g1).unwrap());
    }
}
