//! A budget sweep rendered as CSV, the same table the `dsearch hybrid`
//! subcommand prints.

use dsearch::cli::{cmd_bounds, cmd_hybrid, render_rows, Grid, OutputFormat, SweepSpec};
use dsearch::{DistributionModel, SimulationMode};

pub fn run_example() {
    let spec = SweepSpec {
        distribution: DistributionModel::bernoulli(16, 0.02).unwrap(),
        tau_c: "0:8:4".parse::<Grid>().unwrap(),
        tau_q: "0:2".parse::<Grid>().unwrap(),
        mode: SimulationMode::MonteCarlo {
            trials: 5_000,
            seed: 9,
        },
        format: OutputFormat::Csv,
    };
    print!(
        "{}",
        render_rows(&cmd_bounds(&spec).unwrap(), spec.format).unwrap()
    );
    let rows = cmd_hybrid(&spec).unwrap();
    for row in &rows {
        assert!(row.exact_success <= row.upper_bound_thm1 + 1e-12);
    }
    print!("{}", render_rows(&rows, spec.format).unwrap());
}

fn main() {
    run_example();
}
