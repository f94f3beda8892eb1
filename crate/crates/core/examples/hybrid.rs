//! The hybrid algorithm: probe the heaviest indices classically, then run
//! weight-aware Grover on what is left. Exact values next to a seeded Monte
//! Carlo estimate and the search bound.

use dsearch::hybrid::run_hybrid;
use dsearch::{DistributionModel, QueryBudget, SimulationMode};

pub fn run_example() {
    let dist = DistributionModel::uniform_marked(64, 1).unwrap();
    let mode = SimulationMode::MonteCarlo {
        trials: 20_000,
        seed: 11,
    };
    for (tau_c, tau_q) in [(0, 2), (4, 0), (4, 2), (8, 3)] {
        let r = run_hybrid(&dist, QueryBudget::new(tau_c, tau_q), mode).unwrap();
        let mc = r.monte_carlo.unwrap();
        println!(
            "({tau_c}, {tau_q}): classical {:.5}, quantum {:.5}, total {:.5}, mc {:.5} ± {:.5}, bound {:.5}",
            r.classical_hit_prob, r.quantum_conditional_prob, r.total_prob, mc.rate, mc.stderr, r.upper_bound_thm1
        );
        assert!(r.total_prob <= r.upper_bound_thm1 + 1e-12);
        assert!(r.total_prob >= r.exact_half_sum - 1e-12);
    }
}

fn main() {
    run_example();
}
