//! Marking weights `ω_i` and their maximum `ν` for the three distribution
//! families, plus a JSON round trip and a sampling sanity check.

use dsearch::{DistributionModel, FunctionInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() {
    let bernoulli =
        DistributionModel::from_json(r#"{"kind":"bernoulli","m":8,"eta":0.3}"#).unwrap();
    println!("bernoulli(8, 0.3): nu = {}", bernoulli.nu());

    let uniform = DistributionModel::uniform_marked(64, 2).unwrap();
    let w = uniform.weight_profile();
    println!(
        "uniform_marked(64, 2): nu = {}, total weight = {}, support = {}",
        w.nu,
        w.omega_total,
        uniform.support_size()
    );

    let explicit = DistributionModel::explicit(
        4,
        vec![
            ("1000".parse::<FunctionInstance>().unwrap(), 0.5),
            ("1100".parse().unwrap(), 0.25),
            ("0011".parse().unwrap(), 0.25),
        ],
    )
    .unwrap();
    let w = explicit.weight_profile();
    println!(
        "explicit: omega = {:?}, nu = {} at index {}",
        w.omega, w.nu, w.argmax_index
    );
    assert_eq!(w.omega, vec![0.75, 0.25, 0.25, 0.25]);

    let json = explicit.to_json();
    assert_eq!(DistributionModel::from_json(&json).unwrap(), explicit);
    println!("round-trip JSON: {json}");

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sampler = bernoulli.sampler();
    let draws = 20_000;
    let ones: usize = (0..draws)
        .map(|_| sampler.sample(&mut rng).get(0) as usize)
        .sum();
    println!(
        "empirical Pr[x_0 = 1] over {draws} draws: {}",
        ones as f64 / draws as f64
    );
}

fn main() {
    run_example();
}
