//! Classical search through the Fourier lens: the Walsh–Hadamard expansion of
//! a distribution, the failure probability of a probe set computed two ways,
//! and the per-order contributions.

use dsearch::fourier::{
    classical_fail_fourier, distribution_function, fourier_expand, optimal_classical_strategy,
    order_contributions,
};
use dsearch::hybrid::classical_success_prob_enumerated;
use dsearch::DistributionModel;

pub fn run_example() {
    let dist = DistributionModel::bernoulli(6, 0.2).unwrap();
    let table = fourier_expand(&distribution_function(&dist).unwrap()).unwrap();
    println!("first coefficients: {:?}", &table.coefficients[..4]);

    let probed = [0, 2, 5];
    let fourier = classical_fail_fourier(&dist, &probed).unwrap();
    let enumerated = 1.0 - classical_success_prob_enumerated(&dist, &probed).unwrap();
    println!("fail via Fourier {fourier:.12}, via enumeration {enumerated:.12}");
    println!(
        "order contributions: {:?}",
        order_contributions(&dist, &probed).unwrap()
    );

    let uniform = DistributionModel::uniform_marked(10, 1).unwrap();
    let best = optimal_classical_strategy(&uniform, 3).unwrap();
    println!(
        "uniform_marked(10, 1), tau_c = 3: {} strategies, success {:.6}, spread {:.2e}",
        best.strategies_checked, best.success_prob, best.max_deviation
    );
}

fn main() {
    run_example();
}
