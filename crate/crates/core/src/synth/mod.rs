//! Numerical search for controlled-gate sequences realizing a 3-wire target
//! unitary up to global phase.
//!
//! The ansatz is a fixed list of conditional-U slots; each slot carries four
//! real parameters (φ, α, β, γ) charting U(2) as `e^{iφ}·Rz(α)·Ry(β)·Rz(γ)`.
//! Restarts draw starting points from per-restart deterministic streams and
//! run a simplex descent, so a search is reproducible from its seed alone —
//! in parallel or sequentially.

mod nelder_mead;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{SquareMatrix, UMatrix};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates::{conditional_u, GateSpec, Wire};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `e^{iφ}·Rz(α)·Ry(β)·Rz(γ)` — a full chart of U(2).
pub fn param_to_unitary(phi: f64, alpha: f64, beta: f64, gamma: f64) -> UMatrix {
    let global = Complex64::from_polar(1.0, phi);
    let (sb, cb) = (beta / 2.0).sin_cos();
    let half_sum = Complex64::from_polar(1.0, (alpha + gamma) / 2.0);
    let half_diff = Complex64::from_polar(1.0, (alpha - gamma) / 2.0);
    let entries = vec![
        global * half_sum.conj() * cb,
        -global * half_diff.conj() * sb,
        global * half_diff * sb,
        global * half_sum * cb,
    ];
    UMatrix::float(SquareMatrix::new(2, entries)).expect("finite entries")
}

/// One controlled-gate slot of the ansatz: the wire pair is fixed, the
/// 4-parameter payload is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzSlot {
    pub ctrl: Wire,
    pub tgt: Wire,
}

impl AnsatzSlot {
    pub fn new(ctrl: Wire, tgt: Wire) -> Result<Self> {
        if ctrl == tgt {
            return Err(Error::SameWire);
        }
        Ok(AnsatzSlot { ctrl, tgt })
    }

    /// Parses a two-letter pair such as `bc` (control `b`, target `c`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut chars = text.chars();
        match (
            chars.next().and_then(Wire::from_label),
            chars.next().and_then(Wire::from_label),
            chars.next(),
        ) {
            (Some(ctrl), Some(tgt), None) => AnsatzSlot::new(ctrl, tgt),
            _ => Err(Error::InvalidProblem(format!("bad slot spec '{text}'"))),
        }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ctrl, self.tgt)
    }
}

/// Parses a comma-separated slot list such as `bc,ac,bc,ac`.
pub fn parse_slots(text: &str) -> Result<Vec<AnsatzSlot>> {
    text.split(',').map(AnsatzSlot::parse).collect()
}

/// A search problem: target unitary, slot layout, budget and seed.
#[derive(Debug, Clone)]
pub struct SynthProblem {
    pub target: UMatrix,
    pub slots: Vec<AnsatzSlot>,
    pub restarts: u32,
    pub iters: u32,
    pub seed: u64,
}

impl SynthProblem {
    pub fn param_count(&self) -> usize {
        4 * self.slots.len()
    }

    fn validate(&self) -> Result<()> {
        if self.slots.is_empty() {
            return Err(Error::InvalidProblem("no ansatz slots".into()));
        }
        if self.restarts == 0 || self.iters == 0 {
            return Err(Error::InvalidProblem(
                "restarts and iterations must be at least 1".into(),
            ));
        }
        if self.target.dim() != 8 {
            return Err(Error::InvalidProblem("target must be 8x8".into()));
        }
        if !self.target.is_unitary(crate::gates::UNITARY_TOL) {
            return Err(Error::InvalidProblem("target is not unitary".into()));
        }
        Ok(())
    }
}

/// Instantiates the ansatz at concrete parameters.
pub fn instantiate(slots: &[AnsatzSlot], params: &[f64]) -> Circuit {
    assert_eq!(params.len(), 4 * slots.len(), "wrong parameter count");
    let ops: Vec<GateSpec> = slots
        .iter()
        .zip(params.chunks_exact(4))
        .map(|(slot, p)| {
            conditional_u(param_to_unitary(p[0], p[1], p[2], p[3]), slot.ctrl, slot.tgt)
                .expect("chart payload is unitary")
        })
        .collect();
    Circuit::with_ops(ops)
}

/// Objective: up-to-phase distance between the instantiated circuit and the
/// target. Smooth in the parameters.
pub fn evaluate(problem: &SynthProblem, params: &[f64]) -> f64 {
    let compiled = instantiate(&problem.slots, params)
        .compile(crate::algebra::Kernel::Float)
        .expect("float compilation cannot fail");
    compiled
        .phase_distance(&problem.target)
        .expect("dimensions agree")
}

/// Result of a search: the best parameters found, their distance, and the
/// per-restart best trace (indexed by restart).
#[derive(Debug, Clone, PartialEq)]
pub struct SynthResult {
    pub best_params: Vec<f64>,
    pub best_distance: f64,
    pub best_restart: u32,
    pub per_restart_best: Vec<f64>,
}

struct RestartOutcome {
    params: Vec<f64>,
    distance: f64,
}

/// Distance below which a restart stops polishing early.
const EARLY_STOP: f64 = 1e-13;

fn run_restart(problem: &SynthProblem, index: u64) -> RestartOutcome {
    let dim = problem.param_count();
    let mut rng = ChaCha8Rng::seed_from_u64(problem.seed);
    rng.set_stream(index);
    let x0: Vec<f64> = (0..dim)
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();

    let mut objective = |params: &[f64]| evaluate(problem, params);
    let mut best_x = x0;
    let mut best_f = objective(&best_x);
    let mut remaining = problem.iters;
    let mut step = 0.8;
    // Re-seed the simplex around the incumbent whenever the descent
    // converges with budget left; shrinking the radius polishes the minimum.
    while remaining > 0 && best_f > EARLY_STOP {
        let out = nelder_mead::minimize(&mut objective, &best_x, step, remaining);
        if out.best_f < best_f {
            best_f = out.best_f;
            best_x = out.best_x;
        }
        remaining = remaining.saturating_sub(out.iterations_used);
        if !out.converged {
            break;
        }
        step = (step * 0.25).max(1e-8);
    }
    RestartOutcome {
        params: best_x,
        distance: best_f,
    }
}

fn collect_result(problem: &SynthProblem, outcomes: Vec<RestartOutcome>) -> SynthResult {
    let per_restart_best: Vec<f64> = outcomes.iter().map(|o| o.distance).collect();
    // Ties break toward the lowest restart index, so the winner does not
    // depend on scheduling order.
    let (best_restart, best) = outcomes
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.distance
                .partial_cmp(&b.distance)
                .expect("finite distances")
                .then(ia.cmp(ib))
        })
        .expect("at least one restart");
    SynthResult {
        best_params: best.params.clone(),
        best_distance: best.distance,
        best_restart: best_restart as u32,
        per_restart_best,
    }
}

fn floated(problem: &SynthProblem) -> SynthProblem {
    SynthProblem {
        target: problem.target.to_float(),
        ..problem.clone()
    }
}

/// Runs the search. Restarts execute in parallel when the `parallel` feature
/// is enabled; the result is identical either way.
pub fn optimize(problem: &SynthProblem) -> Result<SynthResult> {
    problem.validate()?;
    let p = floated(problem);
    let indices: Vec<u64> = (0..p.restarts as u64).collect();
    #[cfg(feature = "parallel")]
    let outcomes: Vec<RestartOutcome> =
        indices.par_iter().map(|&i| run_restart(&p, i)).collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<RestartOutcome> = indices.iter().map(|&i| run_restart(&p, i)).collect();
    Ok(collect_result(&p, outcomes))
}

/// Single-threaded variant of [`optimize`], available regardless of the
/// `parallel` feature. Produces the identical result.
pub fn optimize_sequential(problem: &SynthProblem) -> Result<SynthResult> {
    problem.validate()?;
    let p = floated(problem);
    let outcomes: Vec<RestartOutcome> =
        (0..p.restarts as u64).map(|i| run_restart(&p, i)).collect();
    Ok(collect_result(&p, outcomes))
}

/// JSON report of a search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: String,
    pub slots: Vec<String>,
    pub seed: u64,
    pub restarts: u32,
    pub iterations: u32,
    /// Distances are global-phase invariant.
    pub metric: String,
    pub best_distance: f64,
    pub best_params: Vec<f64>,
    pub per_restart_best: Vec<f64>,
}

impl SearchReport {
    pub fn new(target_label: &str, problem: &SynthProblem, result: &SynthResult) -> Self {
        SearchReport {
            target: target_label.to_string(),
            slots: problem.slots.iter().map(AnsatzSlot::label).collect(),
            seed: problem.seed,
            restarts: problem.restarts,
            iterations: problem.iters,
            metric: "up-to-phase".to_string(),
            best_distance: result.best_distance,
            best_params: result.best_params.clone(),
            per_restart_best: result.per_restart_best.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kernel;
    use crate::constructions::m_matrix;
    use crate::gates::{embed, pauli};

    #[test]
    fn chart_reaches_the_named_points() {
        let id = param_to_unitary(0.0, 0.0, 0.0, 0.0);
        assert!(id
            .max_abs_diff(&UMatrix::identity(2, Kernel::Float).unwrap())
            .unwrap()
            < 1e-15);
        // (π/2, 0, π, 0) is i·Ry(π) = σ₂
        let sigma2 = param_to_unitary(std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::PI, 0.0);
        assert!(sigma2.max_abs_diff(&pauli(2).unwrap()).unwrap() < 1e-12);
        // the chart is always unitary
        for (phi, a, b, g) in [(0.3, -1.2, 2.0, 0.4), (2.9, 0.1, -0.7, -2.2)] {
            assert!(param_to_unitary(phi, a, b, g).is_unitary(1e-13));
        }
    }

    #[test]
    fn evaluate_known_values() {
        let slots = parse_slots("bc,ac,bc,ac").unwrap();
        let problem = SynthProblem {
            target: m_matrix(std::f64::consts::FRAC_PI_2),
            slots,
            restarts: 1,
            iters: 1,
            seed: 0,
        };
        // all-zero parameters give the identity: distance 1 − 6/8
        let zeros = vec![0.0; problem.param_count()];
        assert!((evaluate(&problem, &zeros) - 0.25).abs() < 1e-15);

        // the canonical commutator parameters hit the target exactly:
        // V(π/2) = e^{iφ}Rz(α)Ry(β)Rz(γ) at (φ, α, β, γ) solved below, σ₂ as
        // in the chart test.
        let v_params = v_chart_params();
        let y_params = [std::f64::consts::FRAC_PI_2, 0.0, std::f64::consts::PI, 0.0];
        let mut params = Vec::new();
        params.extend_from_slice(&v_params);
        params.extend_from_slice(&y_params);
        params.extend_from_slice(&v_params);
        params.extend_from_slice(&y_params);
        assert!(evaluate(&problem, &params) < 1e-12);

        // identity target at zero parameters
        let id_problem = SynthProblem {
            target: UMatrix::identity(8, Kernel::Float).unwrap(),
            ..problem
        };
        assert!(evaluate(&id_problem, &zeros) < 1e-15);
    }

    /// Chart parameters reproducing V(π/2); checked against the gate matrix.
    ///
    /// Solving `e^{iφ}Rz(α)Ry(β)Rz(γ) = (σ₂+σ₃)/√2` entrywise gives
    /// φ = α = β = γ = π/2.
    fn v_chart_params() -> [f64; 4] {
        use std::f64::consts::FRAC_PI_2;
        let params = [FRAC_PI_2; 4];
        let v = crate::gates::v_gate(FRAC_PI_2, Kernel::Exact).unwrap();
        let cand = param_to_unitary(params[0], params[1], params[2], params[3]);
        assert!(cand.max_abs_diff(&v).unwrap() < 1e-12);
        params
    }

    #[test]
    fn single_slot_recovers_a_conditional_gate() {
        let target = embed(
            &conditional_u(pauli(2).unwrap(), Wire::A, Wire::C).unwrap(),
            Kernel::Exact,
        )
        .unwrap();
        let problem = SynthProblem {
            target,
            slots: parse_slots("ac").unwrap(),
            restarts: 10,
            iters: 600,
            seed: 11,
        };
        let result = optimize(&problem).unwrap();
        assert!(
            result.best_distance < 1e-8,
            "best = {:e}",
            result.best_distance
        );
    }

    #[test]
    fn sequential_and_default_agree() {
        let problem = SynthProblem {
            target: m_matrix(std::f64::consts::FRAC_PI_2),
            slots: parse_slots("bc,ac").unwrap(),
            restarts: 6,
            iters: 150,
            seed: 3,
        };
        let a = optimize(&problem).unwrap();
        let b = optimize_sequential(&problem).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nested_budgets_share_prefixes() {
        let base = SynthProblem {
            target: m_matrix(1.1),
            slots: parse_slots("bc,ac").unwrap(),
            restarts: 4,
            iters: 120,
            seed: 21,
        };
        let small = optimize(&base).unwrap();
        let large = optimize(&SynthProblem {
            restarts: 8,
            ..base.clone()
        })
        .unwrap();
        assert_eq!(&large.per_restart_best[..4], &small.per_restart_best[..]);
        assert!(large.best_distance <= small.best_distance);

        // More iterations never hurt a restart.
        let longer = optimize(&SynthProblem {
            iters: 240,
            ..base.clone()
        })
        .unwrap();
        for (long, short) in longer.per_restart_best.iter().zip(&small.per_restart_best) {
            assert!(long <= short);
        }
    }

    #[test]
    fn evaluate_ignores_target_phase() {
        let slots = parse_slots("bc,ac").unwrap();
        let target = m_matrix(0.9);
        let rotated = {
            let phase = Complex64::from_polar(1.0, 1.234);
            let m = target.as_float().unwrap().scaled(&phase);
            UMatrix::float(m).unwrap()
        };
        let problem_a = SynthProblem {
            target,
            slots: slots.clone(),
            restarts: 1,
            iters: 1,
            seed: 0,
        };
        let problem_b = SynthProblem {
            target: rotated,
            slots,
            restarts: 1,
            iters: 1,
            seed: 0,
        };
        let params = vec![0.3, -0.2, 0.9, 1.4, -2.0, 0.5, 0.1, 0.7];
        let da = evaluate(&problem_a, &params);
        let db = evaluate(&problem_b, &params);
        assert!((da - db).abs() < 1e-12);
    }

    #[test]
    fn invalid_problems_are_rejected() {
        let problem = SynthProblem {
            target: m_matrix(1.0),
            slots: vec![],
            restarts: 1,
            iters: 1,
            seed: 0,
        };
        assert!(matches!(optimize(&problem), Err(Error::InvalidProblem(_))));
    }
}
