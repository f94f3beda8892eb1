//! Command implementations behind the `dsearch` binary. Each command returns
//! its rendered output so it can be tested without spawning a process.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::QueryBudget;
use crate::crypto::{
    hash_bound, hybrid_honest_majority, ow_reduction_sd_bound, pow_success_bound,
    simulate_pow_round, BackboneParams, HashProperty, HashSecurityParams,
};
use crate::distribution::DistributionModel;
use crate::error::{Error, Result};
use crate::fourier::{classical_fail_fourier, optimal_classical_strategy, MAX_ARITY};
use crate::hardness::{
    dsearch_bound, dsearch_bound_raw, optimal_schedule, sequence_ab, sequence_d, ZPolicy,
};
use crate::hybrid::run_hybrid;
use crate::progress::{lemma_suite, SuiteConfig, SuiteReport};
use crate::quantum_sim::average_success;
use crate::rng::SimulationMode;

/// Number of `ω` entries echoed by [`cmd_nu`] before it switches to a summary.
const OMEGA_ECHO_LIMIT: usize = 64;

/// An inclusive integer range `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub start: usize,
    pub stop: usize,
    pub step: usize,
}

impl Grid {
    pub fn single(v: usize) -> Self {
        Grid {
            start: v,
            stop: v,
            step: 1,
        }
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.stop).step_by(self.step).collect()
    }
}

/// Accepts `a`, `a:b` (step 1) or `a:b:s`.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("grid '{s}': '{p}' is not a count")))
        };
        let grid = match parts.as_slice() {
            [a] => Grid::single(num(a)?),
            [a, b] => Grid {
                start: num(a)?,
                stop: num(b)?,
                step: 1,
            },
            [a, b, c] => Grid {
                start: num(a)?,
                stop: num(b)?,
                step: num(c)?,
            },
            _ => return Err(Error::InvalidInput(format!("grid '{s}' is not a:b:s"))),
        };
        if grid.step == 0 || grid.stop < grid.start {
            return Err(Error::InvalidInput(format!("grid '{s}' is empty")));
        }
        Ok(grid)
    }
}

/// Output encoding of sweep tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::InvalidInput(format!("unknown format '{s}'"))),
        }
    }
}

/// A parameter sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub distribution: DistributionModel,
    pub tau_c: Grid,
    pub tau_q: Grid,
    pub mode: SimulationMode,
    pub format: OutputFormat,
}

impl SweepSpec {
    /// Every `(τc, τq)` cell, sorted.
    pub fn cells(&self) -> Vec<QueryBudget> {
        let mut cells = Vec::new();
        for tc in self.tau_c.values() {
            for tq in self.tau_q.values() {
                cells.push(QueryBudget::new(tc, tq));
            }
        }
        cells
    }
}

/// Loads a distribution from inline JSON (starting with `{`) or a file path.
pub fn load_distribution(source: &str) -> Result<DistributionModel> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source)?
    };
    DistributionModel::from_json(&text)
}

/// `exact` or `mc`; Monte Carlo needs an explicit seed.
pub fn resolve_mode(mode: &str, trials: usize, seed: Option<u64>) -> Result<SimulationMode> {
    match mode.to_ascii_lowercase().as_str() {
        "exact" => Ok(SimulationMode::Exact),
        "mc" | "montecarlo" => {
            let seed =
                seed.ok_or_else(|| Error::InvalidInput("Monte Carlo mode requires --seed".into()))?;
            if trials == 0 {
                return Err(Error::InvalidInput("--trials must be at least 1".into()));
            }
            Ok(SimulationMode::MonteCarlo { trials, seed })
        }
        other => Err(Error::InvalidInput(format!("unknown mode '{other}'"))),
    }
}

/// `printf("%.12g")`-style formatting.
pub fn format_float(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_float(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// A table row with a fixed CSV header.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Renders rows as RFC-4180 CSV (with header) or a JSON array.
pub fn render_rows<R: Row>(rows: &[R], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(R::HEADER)?;
            for row in rows {
                writer.write_record(row.fields())?;
            }
            let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
        }
        OutputFormat::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
    }
}

fn render_json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// `ν_D` and a summary of the weight profile.
pub fn cmd_nu(dist: &DistributionModel) -> Result<String> {
    let w = dist.weight_profile();
    let min = w.omega.iter().copied().fold(f64::INFINITY, f64::min);
    let mut out = json!({
        "m": w.m(),
        "nu": dist.nu(),
        "omega_total": w.omega_total,
        "argmax_index": w.argmax_index,
        "omega_min": if w.m() == 0 { 0.0 } else { min },
        "omega_max": w.nu,
    });
    if w.m() <= OMEGA_ECHO_LIMIT {
        out["omega"] = json!(w.omega);
    }
    render_json(&out)
}

/// One row of the hardness-bound sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub tau_c: usize,
    pub tau_q: usize,
    pub nu: f64,
    pub bound_thm1_raw: f64,
    pub bound_thm1: f64,
    pub d_tau_opt: f64,
    pub a_tau: f64,
    pub b_tau: f64,
}

impl Row for BoundsRow {
    const HEADER: &'static [&'static str] = &[
        "tau_c",
        "tau_q",
        "nu",
        "bound_thm1_raw",
        "bound_thm1",
        "d_tau_opt",
        "a_tau",
        "b_tau",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.tau_c.to_string(),
            self.tau_q.to_string(),
            format_float(self.nu),
            format_float(self.bound_thm1_raw),
            format_float(self.bound_thm1),
            format_float(self.d_tau_opt),
            format_float(self.a_tau),
            format_float(self.b_tau),
        ]
    }
}

/// Search bound and classical-first recurrence values for every grid cell.
pub fn cmd_bounds(spec: &SweepSpec) -> Result<Vec<BoundsRow>> {
    let nu = spec.distribution.nu();
    spec.cells()
        .into_iter()
        .map(|budget| {
            let schedule = optimal_schedule(budget);
            let d = sequence_d(&schedule, nu)?;
            let ab = sequence_ab(&schedule, nu, &ZPolicy::Zero)?;
            Ok(BoundsRow {
                tau_c: budget.tau_c,
                tau_q: budget.tau_q,
                nu,
                bound_thm1_raw: dsearch_bound_raw(nu, budget),
                bound_thm1: dsearch_bound(nu, budget),
                d_tau_opt: d.d_final(),
                a_tau: ab.a_final(),
                b_tau: ab.b_final(),
            })
        })
        .collect()
}

fn mode_json(mode: SimulationMode) -> Value {
    match mode {
        SimulationMode::Exact => json!({"mode": "exact"}),
        SimulationMode::MonteCarlo { trials, seed } => {
            json!({"mode": "mc", "trials": trials, "seed": seed})
        }
    }
}

/// Average success of the weight-aware Grover search.
pub fn cmd_grover(dist: &DistributionModel, tau_q: usize, mode: SimulationMode) -> Result<String> {
    let avg = average_success(dist, tau_q, mode)?;
    render_json(&json!({
        "inputs": {"tau_q": tau_q, "nu": dist.nu(), "run": mode_json(mode)},
        "results": avg,
    }))
}

/// One row of the hybrid-algorithm sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridRow {
    pub tau_c: usize,
    pub tau_q: usize,
    pub classical_term: f64,
    pub quantum_term: f64,
    pub exact_success: f64,
    pub mc_success: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub lower_bound_half_sum: f64,
    pub lower_bound_valid: bool,
    pub upper_bound_thm1: f64,
}

impl Row for HybridRow {
    const HEADER: &'static [&'static str] = &[
        "tau_c",
        "tau_q",
        "classical_term",
        "quantum_term",
        "exact_success",
        "mc_success",
        "mc_stderr",
        "lower_bound_half_sum",
        "lower_bound_valid",
        "upper_bound_thm1",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.tau_c.to_string(),
            self.tau_q.to_string(),
            format_float(self.classical_term),
            format_float(self.quantum_term),
            format_float(self.exact_success),
            opt_float(self.mc_success),
            opt_float(self.mc_stderr),
            format_float(self.lower_bound_half_sum),
            self.lower_bound_valid.to_string(),
            format_float(self.upper_bound_thm1),
        ]
    }
}

/// Runs the hybrid algorithm on every grid cell (in parallel); rows come back
/// sorted by `(τc, τq)`. Monte Carlo cells all use the given seed.
pub fn cmd_hybrid(spec: &SweepSpec) -> Result<Vec<HybridRow>> {
    let mut rows = spec
        .cells()
        .into_par_iter()
        .map(|budget| {
            let r = run_hybrid(&spec.distribution, budget, spec.mode)?;
            Ok(HybridRow {
                tau_c: budget.tau_c,
                tau_q: budget.tau_q,
                classical_term: r.classical_hit_prob,
                quantum_term: r.quantum_conditional_prob,
                exact_success: r.total_prob,
                mc_success: r.monte_carlo.map(|m| m.rate),
                mc_stderr: r.monte_carlo.map(|m| m.stderr),
                lower_bound_half_sum: r.lower_bound_half_sum,
                lower_bound_valid: r.lower_bound_valid,
                upper_bound_thm1: r.upper_bound_thm1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.tau_c, r.tau_q));
    Ok(rows)
}

/// Lemma checks over seeded random algorithms.
pub fn cmd_verify(config: &SuiteConfig) -> Result<(SuiteReport, String)> {
    let report = lemma_suite(config)?;
    let text = render_json(&report)?;
    Ok((report, text))
}

/// Best classical probe set, with the enumeration and Fourier failure values.
pub fn cmd_classical(dist: &DistributionModel, tau_c: usize) -> Result<String> {
    let best = optimal_classical_strategy(dist, tau_c)?;
    let fourier = if dist.m() <= MAX_ARITY {
        Some(classical_fail_fourier(dist, &best.set)?)
    } else {
        None
    };
    let agree = fourier.map(|f| (f - best.fail_prob).abs() <= 1e-10);
    render_json(&json!({
        "inputs": {"tau_c": tau_c, "m": dist.m()},
        "results": {
            "set": best.set,
            "fail_enumeration": best.fail_prob,
            "fail_fourier": fourier,
            "paths_agree": agree,
            "success": best.success_prob,
            "strategies_checked": best.strategies_checked,
            "max_deviation": best.max_deviation,
        }
    }))
}

/// Hash bounds for one property or all of them.
pub fn cmd_hash(property: Option<HashProperty>, params: &HashSecurityParams) -> Result<String> {
    let props: Vec<HashProperty> = match property {
        Some(p) => vec![p],
        None => HashProperty::ALL.to_vec(),
    };
    let results = props
        .iter()
        .map(|&p| {
            let b = hash_bound(p, params)?;
            Ok(json!({"property": p.name(), "raw": b.raw, "clamped": b.clamped, "log2_raw": b.log2_raw}))
        })
        .collect::<Result<Vec<_>>>()?;
    render_json(&json!({
        "inputs": params,
        "results": {
            "bounds": results,
            "ow_reduction_sd_bound": ow_reduction_sd_bound(params.n, params.m_in),
        }
    }))
}

/// Monte Carlo settings for [`cmd_backbone`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowSimulation {
    pub trials: usize,
    pub seed: u64,
    pub m_eff: usize,
}

/// Proof-of-work bound and honest-majority condition, optionally with a
/// simulated round.
pub fn cmd_backbone(params: &BackboneParams, simulate: Option<PowSimulation>) -> Result<String> {
    let bound = pow_success_bound(params)?;
    let majority = hybrid_honest_majority(params)?;
    let simulation = simulate
        .map(|s| simulate_pow_round(params.p_pow, params.budget, s.trials, s.seed, s.m_eff))
        .transpose()?;
    render_json(&json!({
        "inputs": params,
        "results": {
            "pow_success_bound": bound,
            "honest_majority": majority,
            "common_prefix_depth": params.k_cp,
            "chain_quality": params.mu,
            "simulation": simulation,
        }
    }))
}
