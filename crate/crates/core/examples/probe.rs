// scratch probe for search budgets (not shipped; removed before finalizing)
use fredkit::constructions::m_matrix;
use fredkit::synth::{optimize, parse_slots, SynthProblem};

fn main() {
    let problem = SynthProblem {
        target: m_matrix(std::f64::consts::FRAC_PI_2),
        slots: parse_slots("bc,ac,bc,ac").unwrap(),
        restarts: 50,
        iters: 2000,
        seed: 7,
    };
    let t0 = std::time::Instant::now();
    let result = optimize(&problem).unwrap();
    let dt = t0.elapsed();
    println!("best_distance = {:e}  (restart {})", result.best_distance, result.best_restart);
    let below: usize = result.per_restart_best.iter().filter(|d| **d < 1e-6).count();
    println!("restarts below 1e-6: {below}/50   elapsed: {dt:?}");
    let mut sorted = result.per_restart_best.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!("five best: {:?}", &sorted[..5]);
    println!("five worst: {:?}", &sorted[45..]);
}
