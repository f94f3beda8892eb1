//! Numerical check of the per-step progress inequalities on random and
//! textbook query algorithms, run through the joint query-register/ancilla
//! state vectors.

use dsearch::progress::{lemma_report, lemma_suite, progress_trace, OracleAlgorithm, SuiteConfig};
use dsearch::{DistributionModel, StrategySchedule};

pub fn run_example() {
    let dist = DistributionModel::uniform_marked(4, 1).unwrap();
    let schedule: StrategySchedule = "CQCQ".parse().unwrap();
    let alg = OracleAlgorithm::random(4, schedule, 42).unwrap();
    let trace = progress_trace(&alg, &dist).unwrap();
    for step in &trace.steps {
        println!(
            "t = {}: A = {:.6}, B = {:.6}, gamma = {:.6}, z = {:.6}",
            step.t, step.a, step.b, step.gamma, step.z
        );
    }
    let report = lemma_report(&alg, &dist).unwrap();
    for lemma in &report.lemmas {
        println!(
            "{:>14}: {} checks, worst slack {:.3e}",
            lemma.lemma, lemma.checks, lemma.worst_slack
        );
    }
    assert!(report.passed());

    let grover = OracleAlgorithm::textbook_grover(8, "QQ".parse().unwrap()).unwrap();
    let bern = DistributionModel::bernoulli(8, 0.1).unwrap();
    println!(
        "textbook grover on bernoulli(8, 0.1): passed = {}",
        lemma_report(&grover, &bern).unwrap().passed()
    );

    let suite = lemma_suite(&SuiteConfig {
        algorithms: 8,
        ..SuiteConfig::default()
    })
    .unwrap();
    println!("suite of {} runs: passed = {}", suite.runs, suite.passed());
}

fn main() {
    run_example();
}
