//! Minimal Nelder-Mead simplex descent.
//!
//! Deterministic given the starting point; no internal randomness. The
//! caller owns restart logic and iteration budgets.

pub struct Outcome {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub iterations_used: u32,
    pub converged: bool,
}

const ALPHA: f64 = 1.0; // reflection
const GAMMA: f64 = 2.0; // expansion
const RHO: f64 = 0.5; // contraction
const SIGMA: f64 = 0.5; // shrink
const F_SPREAD_TOL: f64 = 1e-14;

/// Runs at most `max_iters` simplex steps from `x0`, with an initial
/// simplex of radius `step` along each coordinate.
pub fn minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iters: u32,
) -> Outcome {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    let mut iterations_used = 0;
    let mut converged = false;
    while iterations_used < max_iters {
        iterations_used += 1;

        // Order the simplex: best first, worst last.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"));
        let apply = |perm: &[usize], xs: &[Vec<f64>]| -> Vec<Vec<f64>> {
            perm.iter().map(|&i| xs[i].clone()).collect()
        };
        simplex = apply(&order, &simplex);
        values = order.iter().map(|&i| values[i]).collect();

        if values[n] - values[0] < F_SPREAD_TOL {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|x| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let blend = |t: f64| -> Vec<f64> {
            (0..n).map(|j| centroid[j] + t * (centroid[j] - worst[j])).collect()
        };

        let reflected = blend(ALPHA);
        let f_reflected = f(&reflected);
        if f_reflected < values[0] {
            let expanded = blend(GAMMA);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_reflected;
            continue;
        }
        let contracted = if f_reflected < values[n] {
            blend(ALPHA * RHO)
        } else {
            blend(-RHO)
        };
        let f_contracted = f(&contracted);
        if f_contracted < values[n].min(f_reflected) {
            simplex[n] = contracted;
            values[n] = f_contracted;
            continue;
        }
        // Shrink everything toward the best vertex.
        for i in 1..=n {
            for j in 0..n {
                simplex[i][j] = simplex[0][j] + SIGMA * (simplex[i][j] - simplex[0][j]);
            }
            values[i] = f(&simplex[i]);
        }
    }

    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite objective"))
        .map(|(i, _)| i)
        .expect("non-empty simplex");
    Outcome {
        best_x: simplex[best].clone(),
        best_f: values[best],
        iterations_used,
        converged,
    }
}
