//! Weight-aware Grover search: the state-vector simulation agrees with the
//! rotation-angle closed form, and the distribution average is compared with
//! its quadratic lower bound.

use dsearch::quantum_sim::{
    average_success, closed_form_success, rotation_angle, run_modified_grover, valid_regime,
};
use dsearch::{DistributionModel, FunctionInstance, SimulationMode};

pub fn run_example() {
    let dist = DistributionModel::uniform_marked(64, 1).unwrap();
    let weights = dist.weight_profile();
    let x = FunctionInstance::from_marked(64, [17]).unwrap();
    println!("theta = {:.6}", rotation_angle(&weights, &x).unwrap());
    for tau_q in 0..=6 {
        let run = run_modified_grover(&weights, &x, tau_q).unwrap();
        let closed = closed_form_success(run.alpha_x / run.omega_total, tau_q);
        println!(
            "tau_q = {tau_q}: state vector {:.10}, closed form {:.10}",
            run.success(),
            closed
        );
    }

    let skewed = DistributionModel::bernoulli(16, 0.02).unwrap();
    for tau_q in [0, 1, 3] {
        let exact = average_success(&skewed, tau_q, SimulationMode::Exact).unwrap();
        let mc = average_success(
            &skewed,
            tau_q,
            SimulationMode::MonteCarlo {
                trials: 20_000,
                seed: 3,
            },
        )
        .unwrap();
        println!(
            "bernoulli(16, 0.02), tau_q = {tau_q}: exact {:.6}, mc {:.6} ± {:.6}, lower bound {:.6}, valid regime {}",
            exact.epsilon,
            mc.epsilon,
            mc.stderr,
            exact.lower_bound,
            valid_regime(&skewed, tau_q)
        );
    }
}

fn main() {
    run_example();
}
