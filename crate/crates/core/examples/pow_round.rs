//! Proof-of-work with a hybrid miner: the per-round success bound, the honest
//! majority condition, and a simulated mining round.

use dsearch::crypto::{
    hybrid_honest_majority, pow_success_bound, simulate_pow_round, BackboneParams,
};
use dsearch::QueryBudget;

pub fn run_example() {
    let params = BackboneParams {
        f_round: 0.05,
        p_pow: 2f64.powi(-40),
        epsilon: 0.1,
        kappa: 128,
        s: 1000,
        k_cp: 6,
        l_cq: 6,
        mu: 0.5,
        budget: QueryBudget::new(1 << 10, 1 << 8),
        negl_threshold: 1e-3,
    };
    println!(
        "pow success bound: {:?}",
        pow_success_bound(&params).unwrap()
    );
    println!(
        "honest majority: {:?}",
        hybrid_honest_majority(&params).unwrap()
    );

    let round =
        simulate_pow_round(2f64.powi(-10), QueryBudget::new(64, 8), 20_000, 5, 1 << 12).unwrap();
    println!(
        "simulated round: rate {:.5} ± {:.5}, exact {:.5}, search bound {:.5}, within 3 sigma {}",
        round.rate, round.stderr, round.exact, round.search_bound, round.within_3_sigma
    );
}

fn main() {
    run_example();
}
