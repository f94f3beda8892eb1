//! The search bound, the progress recurrences for the classical-first
//! schedule, and a brute-force check that classical-first is optimal.

use dsearch::hardness::{
    dsearch_bound, optimal_schedule, sequence_ab, sequence_d, verify_swap_dominance, ZPolicy,
};
use dsearch::QueryBudget;

pub fn run_example() {
    let nu = 1e-3;
    for (tau_c, tau_q) in [(0, 0), (10, 0), (0, 10), (16, 4)] {
        let budget = QueryBudget::new(tau_c, tau_q);
        let schedule = optimal_schedule(budget);
        let d = sequence_d(&schedule, nu).unwrap();
        let ab = sequence_ab(&schedule, nu, &ZPolicy::Zero).unwrap();
        println!(
            "{schedule:>20}: bound {:.6}, d {:.6}, a {:.6}, b {:.6}",
            dsearch_bound(nu, budget),
            d.d_final(),
            ab.a_final(),
            ab.b_final()
        );
    }

    let report = verify_swap_dominance(QueryBudget::new(4, 4), 0.01).unwrap();
    println!(
        "swap dominance over {} schedules: classical-first d = {:.6}, max d = {:.6} ({}), passed = {}",
        report.schedules_checked,
        report.optimal_d,
        report.max_d,
        report.argmax,
        report.passed()
    );
    assert!(report.passed());
}

fn main() {
    run_example();
}
