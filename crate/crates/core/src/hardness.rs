//! Upper bounds on distributional search success and the progress-measure
//! recurrences behind them.
//!
//! The sequences evolve per query slot as
//!
//! * classical: `a ← a − 2ν − 2√(ν z)`, `b ← b + ν − z`, `d ← d + ν`
//! * quantum: `a ← a − 4ν − 4√(ν b)`, `b ← b + 4ν + 4√(ν b)`,
//!   `d ← d + 4ν + 4√(ν d)`
//!
//! starting from `a = 1`, `b = d = 0`. On the classical-first schedule
//! `d_τ = (√τc + 2τq)²ν`, and every other ordering yields a smaller `d_τ`.

use serde::Serialize;

use crate::budget::{QueryBudget, QueryKind, StrategySchedule};
use crate::distribution::{binomial_u128, for_each_combination};
use crate::error::{Error, Result};

/// Longest schedule [`verify_swap_dominance`] enumerates.
pub const SWAP_SCHEDULE_CAP: usize = 16;

/// Relative tolerance for closed-form comparisons.
pub const CLOSED_FORM_RTOL: f64 = 1e-10;

/// `ν·(2√τc + 2τq + 1)²` before clamping.
pub fn dsearch_bound_raw(nu: f64, budget: QueryBudget) -> f64 {
    nu * budget.query_factor(2.0).powi(2)
}

/// `min(1, ν·(2√τc + 2τq + 1)²)`.
pub fn dsearch_bound(nu: f64, budget: QueryBudget) -> f64 {
    dsearch_bound_raw(nu, budget).min(1.0)
}

/// Bound for uniform search with `w` of `big_m` inputs marked (`ν = w/M`).
pub fn case_bound_multi_uniform(w: usize, big_m: usize, budget: QueryBudget) -> f64 {
    dsearch_bound(w as f64 / big_m as f64, budget)
}

/// Bound for Bernoulli search with marking probability `eta` (`ν = η`).
pub fn case_bound_bernoulli(eta: f64, budget: QueryBudget) -> f64 {
    dsearch_bound(eta, budget)
}

/// `[Classical^τc, Quantum^τq]`.
pub fn optimal_schedule(budget: QueryBudget) -> StrategySchedule {
    StrategySchedule::classical_first(budget)
}

/// Choice of the free parameters `z_t` in the `(a, b)` recurrence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ZPolicy {
    /// `z_t = 0` at every classical step.
    Zero,
    /// Explicit `z_t` per step (entries at quantum steps are ignored).
    Values(Vec<f64>),
}

impl ZPolicy {
    fn describe(&self) -> String {
        match self {
            ZPolicy::Zero => "zero".into(),
            ZPolicy::Values(v) => format!("explicit({} values)", v.len()),
        }
    }
}

/// Sequence values `a_0..a_τ`, `b_0..b_τ`, `d_0..d_τ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceTrace {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub d: Vec<f64>,
    pub nu: f64,
    pub z_policy: String,
}

impl SequenceTrace {
    pub fn a_final(&self) -> f64 {
        *self.a.last().expect("a_0 always present")
    }

    pub fn b_final(&self) -> f64 {
        *self.b.last().expect("b_0 always present")
    }

    pub fn d_final(&self) -> f64 {
        *self.d.last().expect("d_0 always present")
    }
}

/// One step of the `d` recurrence.
pub fn d_step(kind: QueryKind, d: f64, nu: f64) -> f64 {
    match kind {
        QueryKind::Classical => d + nu,
        QueryKind::Quantum => d + 4.0 * nu + 4.0 * (nu * d).sqrt(),
    }
}

/// `d_τ` for `schedule` without building a trace.
pub fn d_final(schedule: &StrategySchedule, nu: f64) -> f64 {
    schedule.slots().iter().fold(0.0, |d, &k| d_step(k, d, nu))
}

/// `(√τc + 2τq)²·ν`.
pub fn d_closed_form(budget: QueryBudget, nu: f64) -> f64 {
    ((budget.tau_c as f64).sqrt() + 2.0 * budget.tau_q as f64).powi(2) * nu
}

/// `1 − 4ν(√τc + τq)²`.
pub fn a_lower_bound(budget: QueryBudget, nu: f64) -> f64 {
    1.0 - 4.0 * nu * ((budget.tau_c as f64).sqrt() + budget.tau_q as f64).powi(2)
}

/// `ν(√τc + 2τq)²`.
pub fn b_upper_bound(budget: QueryBudget, nu: f64) -> f64 {
    d_closed_form(budget, nu)
}

fn evaluate(schedule: &StrategySchedule, nu: f64, z: &ZPolicy) -> Result<SequenceTrace> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "nu = {nu} must be non-negative"
        )));
    }
    if let ZPolicy::Values(v) = z {
        if v.len() < schedule.len() {
            return Err(Error::InvalidInput(format!(
                "{} z values supplied for a schedule of length {}",
                v.len(),
                schedule.len()
            )));
        }
    }
    let tau = schedule.len();
    let (mut a, mut b, mut d) = (
        Vec::with_capacity(tau + 1),
        Vec::with_capacity(tau + 1),
        Vec::with_capacity(tau + 1),
    );
    a.push(1.0);
    b.push(0.0);
    d.push(0.0);
    for (t, &kind) in schedule.slots().iter().enumerate() {
        let (at, bt, dt) = (a[t], b[t], d[t]);
        let (an, bn) = match kind {
            QueryKind::Classical => {
                let zt = match z {
                    ZPolicy::Zero => 0.0,
                    ZPolicy::Values(v) => v[t],
                };
                if !(0.0..=bt).contains(&zt) {
                    return Err(Error::InvalidZ {
                        step: t,
                        z: zt,
                        b: bt,
                    });
                }
                (at - 2.0 * nu - 2.0 * (nu * zt).sqrt(), bt + nu - zt)
            }
            QueryKind::Quantum => {
                let cross = 4.0 * (nu * bt).sqrt();
                (at - 4.0 * nu - cross, bt + 4.0 * nu + cross)
            }
        };
        a.push(an);
        b.push(bn);
        d.push(d_step(kind, dt, nu));
    }
    Ok(SequenceTrace {
        a,
        b,
        d,
        nu,
        z_policy: z.describe(),
    })
}

fn close(computed: f64, expected: f64) -> bool {
    (computed - expected).abs() <= CLOSED_FORM_RTOL * expected.abs().max(f64::MIN_POSITIVE)
}

/// Evaluates the recurrences (with `z = 0`). On a classical-first schedule
/// `d_τ` is checked against `(√τc + 2τq)²ν`.
pub fn sequence_d(schedule: &StrategySchedule, nu: f64) -> Result<SequenceTrace> {
    let trace = evaluate(schedule, nu, &ZPolicy::Zero)?;
    if schedule.is_classical_first() {
        let expected = d_closed_form(schedule.budget(), nu);
        if !close(trace.d_final(), expected) {
            return Err(Error::ClosedFormMismatch {
                what: "d_tau on the classical-first schedule",
                computed: trace.d_final(),
                expected,
            });
        }
    }
    Ok(trace)
}

/// Evaluates the recurrences under the given `z` policy. With `z = 0` on a
/// classical-first schedule, `a_τ ≥ 1 − 4ν(√τc + τq)²` and
/// `b_τ ≤ ν(√τc + 2τq)²` are checked.
pub fn sequence_ab(schedule: &StrategySchedule, nu: f64, z: &ZPolicy) -> Result<SequenceTrace> {
    let trace = evaluate(schedule, nu, z)?;
    if *z == ZPolicy::Zero && schedule.is_classical_first() {
        let budget = schedule.budget();
        let a_bound = a_lower_bound(budget, nu);
        if trace.a_final() < a_bound - CLOSED_FORM_RTOL {
            return Err(Error::ClosedFormMismatch {
                what: "a_tau lower bound",
                computed: trace.a_final(),
                expected: a_bound,
            });
        }
        let b_bound = b_upper_bound(budget, nu);
        if trace.b_final() > b_bound + CLOSED_FORM_RTOL {
            return Err(Error::ClosedFormMismatch {
                what: "b_tau upper bound",
                computed: trace.b_final(),
                expected: b_bound,
            });
        }
    }
    Ok(trace)
}

/// Outcome of the exhaustive schedule comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapReport {
    pub budget: QueryBudget,
    pub nu: f64,
    pub schedules_checked: usize,
    /// `d_τ` of the classical-first schedule.
    pub optimal_d: f64,
    /// Largest `d_τ` over all schedules.
    pub max_d: f64,
    /// A schedule attaining `max_d` (first found in enumeration order).
    pub argmax: String,
    /// Whether the classical-first schedule attains the maximum.
    pub optimal_attains_max: bool,
    /// Number of adjacent `QC → CQ` swaps evaluated.
    pub swaps_checked: usize,
    /// Swaps that failed to strictly increase `d_τ` while `ν > 0`.
    pub swap_failures: usize,
}

impl SwapReport {
    pub fn passed(&self) -> bool {
        self.optimal_attains_max && self.swap_failures == 0
    }
}

/// Enumerates every ordering of `τc` classical and `τq` quantum queries and
/// checks that the classical-first one maximizes `d_τ`, and that moving a
/// classical query one slot earlier strictly increases `d_τ` when `ν > 0`.
pub fn verify_swap_dominance(budget: QueryBudget, nu: f64) -> Result<SwapReport> {
    let tau = budget.total();
    let count = binomial_u128(tau, budget.tau_c);
    if tau > SWAP_SCHEDULE_CAP {
        return Err(Error::TooManySchedules {
            count,
            cap: binomial_u128(SWAP_SCHEDULE_CAP, SWAP_SCHEDULE_CAP / 2),
        });
    }
    let optimal_d = d_final(&optimal_schedule(budget), nu);
    let mut report = SwapReport {
        budget,
        nu,
        schedules_checked: 0,
        optimal_d,
        max_d: f64::NEG_INFINITY,
        argmax: String::new(),
        optimal_attains_max: false,
        swaps_checked: 0,
        swap_failures: 0,
    };
    for_each_combination(tau, budget.tau_c, |positions| {
        let schedule = StrategySchedule::with_classical_at(tau, positions);
        let d = d_final(&schedule, nu);
        report.schedules_checked += 1;
        if d > report.max_d {
            report.max_d = d;
            report.argmax = schedule.to_string();
        }
        for i in 0..tau.saturating_sub(1) {
            if schedule.slots()[i] == QueryKind::Quantum
                && schedule.slots()[i + 1] == QueryKind::Classical
            {
                report.swaps_checked += 1;
                let swapped = d_final(&schedule.swapped(i), nu);
                let improves = if nu > 0.0 { swapped > d } else { swapped == d };
                if !improves {
                    report.swap_failures += 1;
                }
            }
        }
    });
    report.optimal_attains_max = optimal_d >= report.max_d;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched(s: &str) -> StrategySchedule {
        s.parse().unwrap()
    }

    #[test]
    fn bound_examples() {
        let m = 100.0;
        assert!((dsearch_bound(1.0 / m, QueryBudget::new(0, 3)) - 49.0 / m).abs() < 1e-15);
        assert_eq!(dsearch_bound(0.3, QueryBudget::new(0, 0)), 0.3);
        assert_eq!(dsearch_bound(0.3, QueryBudget::new(10, 10)), 1.0);
        assert!((case_bound_bernoulli(0.001, QueryBudget::new(4, 2)) - 0.001 * 81.0).abs() < 1e-15);
        assert!(
            (case_bound_multi_uniform(1, 1000, QueryBudget::new(0, 5)) - 121.0 / 1000.0).abs()
                < 1e-15
        );
        assert_eq!(case_bound_multi_uniform(7, 7, QueryBudget::new(0, 1)), 1.0);
        assert_eq!(case_bound_bernoulli(0.0, QueryBudget::new(9, 9)), 0.0);
        assert!(dsearch_bound_raw(0.3, QueryBudget::new(10, 10)) > 1.0);
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(optimal_schedule(QueryBudget::new(2, 1)).to_string(), "CCQ");
        assert_eq!(optimal_schedule(QueryBudget::new(0, 3)).to_string(), "QQQ");
        assert_eq!(optimal_schedule(QueryBudget::new(3, 0)).to_string(), "CCC");
    }

    #[test]
    fn d_examples() {
        let nu = 0.01;
        assert!((sequence_d(&sched("CCCC"), nu).unwrap().d_final() - 0.04).abs() < 1e-15);
        assert!((sequence_d(&sched("QQQ"), nu).unwrap().d_final() - 36.0 * nu).abs() < 1e-14);
        let empty = sequence_d(&sched(""), nu).unwrap();
        assert_eq!(empty.d, vec![0.0]);
        assert_eq!(empty.a, vec![1.0]);
    }

    #[test]
    fn ab_examples() {
        let nu = 0.01;
        let t = sequence_ab(&sched("CCCC"), nu, &ZPolicy::Zero).unwrap();
        assert!((t.b_final() - 0.04).abs() < 1e-15);
        assert!((t.a_final() - 0.92).abs() < 1e-15);
        let t = sequence_ab(&sched("CCCCQQQ"), nu, &ZPolicy::Zero).unwrap();
        assert!(t.b_final() <= 64.0 * nu + 1e-12);
        assert!(matches!(
            sequence_ab(&sched("CC"), nu, &ZPolicy::Values(vec![0.0, 0.5])),
            Err(Error::InvalidZ { step: 1, .. })
        ));
        // b_1 = ν, so z_1 = ν is admissible and cancels the growth
        let t = sequence_ab(&sched("CC"), nu, &ZPolicy::Values(vec![0.0, nu])).unwrap();
        assert!((t.b_final() - nu).abs() < 1e-18);
    }

    #[test]
    fn quantum_tail_is_a_perfect_square_step() {
        let nu = 0.003;
        let t = sequence_d(&sched("CCCQQQQ"), nu).unwrap();
        for s in 3..7 {
            let expected = (t.d[s].sqrt() + 2.0 * nu.sqrt()).powi(2);
            assert!((t.d[s + 1] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn swap_examples() {
        let nu = 0.1;
        assert!(d_final(&sched("CQ"), nu) > d_final(&sched("QC"), nu));
        let r = verify_swap_dominance(QueryBudget::new(2, 2), 0.05).unwrap();
        assert_eq!(r.schedules_checked, 6);
        assert_eq!(r.argmax, "CCQQ");
        assert!(r.passed());
        let r = verify_swap_dominance(QueryBudget::new(3, 3), 0.0).unwrap();
        assert_eq!(r.max_d, 0.0);
        assert!(r.passed());
        assert!(matches!(
            verify_swap_dominance(QueryBudget::new(9, 8), 0.1),
            Err(Error::TooManySchedules { .. })
        ));
    }
}
