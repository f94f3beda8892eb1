use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dsearch::cli::{
    cmd_backbone, cmd_bounds, cmd_classical, cmd_grover, cmd_hash, cmd_hybrid, cmd_nu, cmd_verify,
    load_distribution, render_rows, resolve_mode, Grid, OutputFormat, PowSimulation, SweepSpec,
};
use dsearch::crypto::{BackboneParams, HashProperty, HashSecurityParams, DEFAULT_M_EFF};
use dsearch::progress::SuiteConfig;
use dsearch::{Error, QueryBudget, Result};

#[derive(Parser)]
#[command(
    name = "dsearch",
    version,
    about = "Distributional search: bounds, simulation and verification"
)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DistArg {
    /// Distribution as a JSON file path or inline JSON.
    #[arg(long)]
    dist: String,
}

#[derive(Args)]
struct RunArgs {
    /// `exact` or `mc`.
    #[arg(long, default_value = "exact")]
    mode: String,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    /// Required in Monte Carlo mode.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 0)]
    tau_c: usize,
    #[arg(long, default_value_t = 0)]
    tau_q: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum marking probability and weight summary.
    Nu {
        #[command(flatten)]
        dist: DistArg,
    },
    /// Search bound and recurrence values over a budget grid.
    Bounds {
        #[command(flatten)]
        dist: DistArg,
        #[arg(long, default_value = "0")]
        tau_c: Grid,
        #[arg(long, default_value = "0")]
        tau_q: Grid,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Average success of weight-aware Grover search.
    Grover {
        #[command(flatten)]
        dist: DistArg,
        #[arg(long, default_value_t = 0)]
        tau_q: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Hybrid classical-then-quantum search over a budget grid.
    Hybrid {
        #[command(flatten)]
        dist: DistArg,
        #[arg(long, default_value = "0")]
        tau_c: Grid,
        #[arg(long, default_value = "0")]
        tau_q: Grid,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
    },
    /// Check the progress lemmas on seeded random query algorithms.
    Verify {
        /// Number of random algorithms.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        base_seed: u64,
        /// Comma-separated input sizes.
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        max_tau: usize,
        #[arg(long, default_value_t = 0.25)]
        eta: f64,
    },
    /// Optimal classical probe set via enumeration and Fourier expansion.
    Classical {
        #[command(flatten)]
        dist: DistArg,
        #[arg(long, default_value_t = 0)]
        tau_c: usize,
    },
    /// Hybrid-adversary bounds for hash-function properties.
    Hash {
        /// Property name, or `all`.
        #[arg(long, default_value = "all")]
        property: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m_in: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Number of targets.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Proof-of-work bound and honest-majority condition.
    Backbone {
        #[arg(long)]
        f: f64,
        #[arg(long)]
        p_pow: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 128)]
        kappa: u32,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 6)]
        k_cp: u64,
        #[arg(long, default_value_t = 6)]
        l_cq: u64,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long, default_value_t = 1e-9)]
        negl: f64,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Also simulate one mining round (needs --seed).
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_M_EFF)]
        m_eff: usize,
    },
}

/// Rendered output plus the exit code to finish with.
fn run(command: Command) -> Result<(String, u8)> {
    let sweep = |dist: &str, tau_c, tau_q, mode, format| -> Result<SweepSpec> {
        Ok(SweepSpec {
            distribution: load_distribution(dist)?,
            tau_c,
            tau_q,
            mode,
            format,
        })
    };
    Ok(match command {
        Command::Nu { dist } => (cmd_nu(&load_distribution(&dist.dist)?)?, 0),
        Command::Bounds {
            dist,
            tau_c,
            tau_q,
            format,
        } => {
            let spec = sweep(
                &dist.dist,
                tau_c,
                tau_q,
                dsearch::SimulationMode::Exact,
                format,
            )?;
            (render_rows(&cmd_bounds(&spec)?, format)?, 0)
        }
        Command::Grover { dist, tau_q, run } => {
            let mode = resolve_mode(&run.mode, run.trials, run.seed)?;
            (cmd_grover(&load_distribution(&dist.dist)?, tau_q, mode)?, 0)
        }
        Command::Hybrid {
            dist,
            tau_c,
            tau_q,
            run,
            format,
        } => {
            let mode = resolve_mode(&run.mode, run.trials, run.seed)?;
            let spec = sweep(&dist.dist, tau_c, tau_q, mode, format)?;
            (render_rows(&cmd_hybrid(&spec)?, format)?, 0)
        }
        Command::Verify {
            seeds,
            base_seed,
            sizes,
            max_tau,
            eta,
        } => {
            let config = SuiteConfig {
                algorithms: seeds,
                base_seed,
                sizes,
                max_tau,
                eta,
            };
            let (report, text) = cmd_verify(&config)?;
            let code = if report.passed() { 0 } else { 4 };
            (text, code)
        }
        Command::Classical { dist, tau_c } => {
            (cmd_classical(&load_distribution(&dist.dist)?, tau_c)?, 0)
        }
        Command::Hash {
            property,
            n,
            m_in,
            k,
            p,
            budget,
        } => {
            let property = if property.eq_ignore_ascii_case("all") {
                None
            } else {
                Some(property.parse::<HashProperty>()?)
            };
            let params = HashSecurityParams {
                n,
                m_in,
                k,
                p,
                budget: QueryBudget::new(budget.tau_c, budget.tau_q),
            };
            (cmd_hash(property, &params)?, 0)
        }
        Command::Backbone {
            f,
            p_pow,
            epsilon,
            kappa,
            s,
            k_cp,
            l_cq,
            mu,
            negl,
            budget,
            simulate,
            trials,
            seed,
            m_eff,
        } => {
            let params = BackboneParams {
                f_round: f,
                p_pow,
                epsilon,
                kappa,
                s,
                k_cp,
                l_cq,
                mu,
                budget: QueryBudget::new(budget.tau_c, budget.tau_q),
                negl_threshold: negl,
            };
            let simulation = if simulate {
                let seed =
                    seed.ok_or_else(|| Error::InvalidInput("--simulate requires --seed".into()))?;
                Some(PowSimulation {
                    trials,
                    seed,
                    m_eff,
                })
            } else {
                None
            };
            (cmd_backbone(&params, simulation)?, 0)
        }
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let result = (|| {
        if let Some(n) = cli.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Error::InvalidInput(format!("--threads: {e}")))?;
        }
        let (text, code) = run(cli.command)?;
        emit(cli.out.as_ref(), &text)?;
        Ok::<u8, Error>(code)
    })();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let body = json!({
                "error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}
            });
            eprintln!("{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
