//! Security calculators for hybrid adversaries: generic hash-function
//! bounds, the one-wayness reduction's statistical distance, the
//! proof-of-work success bound, and the hybrid honest-majority condition.
//!
//! The reductions spend two oracle calls per adversary quantum query, so the
//! hash and proof-of-work bounds use `2√τc + 4τq + 1` where the search bound
//! has `2√τc + 2τq + 1`. Exponentials are formed in log₂-space so that
//! `n ≥ 64` neither overflows nor underflows before the final conversion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::QueryBudget;
use crate::distribution::DistributionModel;
use crate::error::{Error, Result};
use crate::hardness::dsearch_bound;
use crate::hybrid::{run_hybrid, HybridReport};
use crate::rng::SimulationMode;

/// Default effective domain for the proof-of-work simulation.
pub const DEFAULT_M_EFF: usize = 1 << 14;

/// Hash security notions covered by [`hash_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HashProperty {
    Ow,
    SmOw,
    MmOw,
    Spr,
    SmSpr,
    MmSpr,
    Etcr,
    MmEtcr,
}

impl HashProperty {
    pub const ALL: [HashProperty; 8] = [
        HashProperty::Ow,
        HashProperty::SmOw,
        HashProperty::MmOw,
        HashProperty::Spr,
        HashProperty::SmSpr,
        HashProperty::MmSpr,
        HashProperty::Etcr,
        HashProperty::MmEtcr,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            HashProperty::Ow => "OW",
            HashProperty::SmOw => "SM_OW",
            HashProperty::MmOw => "MM_OW",
            HashProperty::Spr => "SPR",
            HashProperty::SmSpr => "SM_SPR",
            HashProperty::MmSpr => "MM_SPR",
            HashProperty::Etcr => "ETCR",
            HashProperty::MmEtcr => "MM_ETCR",
        }
    }
}

impl fmt::Display for HashProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HashProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        HashProperty::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown hash property '{s}'")))
    }
}

/// Parameters of a keyed hash `H_K: {0,1}^{m_in} → {0,1}^n`, `K ∈ {0,1}^k`,
/// attacked with `p` targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HashSecurityParams {
    pub n: u32,
    pub m_in: u32,
    pub k: u32,
    pub p: f64,
    pub budget: QueryBudget,
}

impl HashSecurityParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m_in == 0 || self.k == 0 {
            return Err(Error::InvalidInput(
                "n, m_in and k must be at least 1".into(),
            ));
        }
        if !(self.p.is_finite() && self.p >= 1.0) {
            return Err(Error::InvalidInput(format!(
                "target count p = {} must be >= 1",
                self.p
            )));
        }
        Ok(())
    }
}

/// A probability bound before and after clamping to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub raw: f64,
    pub log2_raw: f64,
    pub clamped: f64,
}

impl BoundValue {
    fn from_log2(log2_raw: f64) -> Self {
        let raw = log2_raw.exp2();
        BoundValue {
            raw,
            log2_raw,
            clamped: if log2_raw >= 0.0 { 1.0 } else { raw },
        }
    }
}

/// `log₂(2^a + 2^b)` without leaving log-space.
fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// `log₂((2√τc + 4τq + 1)²)`.
fn log2_hybrid_factor(budget: QueryBudget) -> f64 {
    2.0 * budget.query_factor(4.0).log2()
}

/// Success bound of a hybrid adversary against `property`:
///
/// * OW, MM_OW, SPR, MM_SPR: `2^{−n}(2√τc + 4τq + 1)²`
/// * SM_OW, SM_SPR: `p` times that
/// * ETCR: that plus `8(τc + τq)²·2^{−k}`
/// * MM_ETCR: `p` times the ETCR value
pub fn hash_bound(property: HashProperty, params: &HashSecurityParams) -> Result<BoundValue> {
    params.validate()?;
    let base = log2_hybrid_factor(params.budget) - params.n as f64;
    let log2_p = params.p.log2();
    let tau = params.budget.total() as f64;
    let etcr_extra = if tau == 0.0 {
        f64::NEG_INFINITY
    } else {
        3.0 + 2.0 * tau.log2() - params.k as f64
    };
    let log2_raw = match property {
        HashProperty::Ow | HashProperty::MmOw | HashProperty::Spr | HashProperty::MmSpr => base,
        HashProperty::SmOw | HashProperty::SmSpr => log2_p + base,
        HashProperty::Etcr => log2_add(base, etcr_extra),
        HashProperty::MmEtcr => log2_p + log2_add(base, etcr_extra),
    };
    Ok(BoundValue::from_log2(log2_raw))
}

/// `½·√(2^n / 2^{m_in})`.
pub fn ow_reduction_sd_bound(n: u32, m_in: u32) -> f64 {
    ((n as f64 - m_in as f64) / 2.0 - 1.0).exp2()
}

/// Parameters of the proof-of-work backbone analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackboneParams {
    /// Per-round probability that some honest party finds a proof of work.
    pub f_round: f64,
    /// Single-query proof-of-work success `T/2^κ`.
    pub p_pow: f64,
    /// Concentration parameter `ε`.
    pub epsilon: f64,
    pub kappa: u32,
    /// Round count.
    pub s: u64,
    /// Common-prefix depth.
    pub k_cp: u64,
    /// Chain-quality window.
    pub l_cq: u64,
    /// Honest-block ratio.
    pub mu: f64,
    pub budget: QueryBudget,
    /// Stand-in for `negl(κ)`.
    pub negl_threshold: f64,
}

impl BackboneParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("f_round", self.f_round),
            ("p_pow", self.p_pow),
            ("epsilon", self.epsilon),
            ("mu", self.mu),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidInput(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if self.k_cp == 0 || self.l_cq == 0 {
            return Err(Error::InvalidInput(
                "k_cp and l_cq must be at least 1".into(),
            ));
        }
        if !(self.negl_threshold.is_finite() && self.negl_threshold >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "negl_threshold = {} must be non-negative",
                self.negl_threshold
            )));
        }
        Ok(())
    }
}

/// `(1 − ε)·f·(1 − f)·p·(2√τc + 4τq + 1)²`.
pub fn pow_success_bound(bp: &BackboneParams) -> Result<BoundValue> {
    bp.validate()?;
    let log2_raw = (1.0 - bp.epsilon).log2()
        + bp.f_round.log2()
        + (1.0 - bp.f_round).log2()
        + bp.p_pow.log2()
        + log2_hybrid_factor(bp.budget);
    Ok(BoundValue::from_log2(log2_raw))
}

/// Evaluation of `√τc + 2τq ≤ negl/√(f(1−f)p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HonestMajority {
    pub holds: bool,
    /// `rhs − lhs`.
    pub margin: f64,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn hybrid_honest_majority(bp: &BackboneParams) -> Result<HonestMajority> {
    bp.validate()?;
    let lhs = (bp.budget.tau_c as f64).sqrt() + 2.0 * bp.budget.tau_q as f64;
    let rhs = if bp.negl_threshold == 0.0 {
        0.0
    } else {
        (bp.negl_threshold.ln() - 0.5 * (bp.f_round.ln() + (1.0 - bp.f_round).ln() + bp.p_pow.ln()))
            .exp()
    };
    Ok(HonestMajority {
        holds: lhs <= rhs,
        margin: rhs - lhs,
        lhs,
        rhs,
    })
}

/// Single proof-of-work round simulated as Bernoulli search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowRoundReport {
    pub p_pow: f64,
    pub budget: QueryBudget,
    pub m_eff: usize,
    pub rate: f64,
    pub stderr: f64,
    /// Exact success of the hybrid algorithm on `Bernoulli(m_eff, p)`.
    pub exact: f64,
    /// `min(1, p(2√τc + 2τq + 1)²)`, the search bound the rate must respect.
    pub search_bound: f64,
    /// `p(2√τc + 4τq + 1)²`, the per-round factor of the proof-of-work bound.
    pub pow_bound: BoundValue,
    pub within_3_sigma: bool,
    pub below_bound: bool,
}

/// Monte Carlo of one round: the adversary runs the hybrid algorithm on
/// `Bernoulli(m_eff, p_pow)`.
pub fn simulate_pow_round(
    p_pow: f64,
    budget: QueryBudget,
    trials: usize,
    seed: u64,
    m_eff: usize,
) -> Result<PowRoundReport> {
    if !(0.0..=1.0).contains(&p_pow) {
        return Err(Error::InvalidInput(format!(
            "p_pow = {p_pow} outside [0, 1]"
        )));
    }
    if m_eff == 0 || budget.tau_c > m_eff {
        return Err(Error::InvalidInput(format!(
            "m_eff = {m_eff} must be positive and at least tau_c"
        )));
    }
    let dist = DistributionModel::bernoulli(m_eff, p_pow)?;
    let report: HybridReport =
        run_hybrid(&dist, budget, SimulationMode::MonteCarlo { trials, seed })?;
    let mc = report.monte_carlo.expect("Monte Carlo mode");
    let search_bound = dsearch_bound(p_pow, budget);
    let pow_bound = BoundValue::from_log2(p_pow.log2() + log2_hybrid_factor(budget));
    let slack = 3.0 * mc.stderr + 1e-12;
    Ok(PowRoundReport {
        p_pow,
        budget,
        m_eff,
        rate: mc.rate,
        stderr: mc.stderr,
        exact: report.total_prob,
        search_bound,
        pow_bound,
        within_3_sigma: (mc.rate - report.total_prob).abs() <= slack,
        below_bound: mc.rate <= search_bound + slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, tau_c: usize, tau_q: usize) -> HashSecurityParams {
        HashSecurityParams {
            n,
            m_in: 2 * n,
            k: n,
            p: 1.0,
            budget: QueryBudget::new(tau_c, tau_q),
        }
    }

    fn backbone(tau_c: usize, tau_q: usize) -> BackboneParams {
        BackboneParams {
            f_round: 0.03,
            p_pow: (-40f64).exp2(),
            epsilon: 0.1,
            kappa: 128,
            s: 1000,
            k_cp: 60,
            l_cq: 60,
            mu: 0.03,
            budget: QueryBudget::new(tau_c, tau_q),
            negl_threshold: (-20f64).exp2(),
        }
    }

    #[test]
    fn ow_examples() {
        let b = hash_bound(HashProperty::Ow, &params(128, 1 << 20, 1 << 10)).unwrap();
        let expected = 6145f64.powi(2) * (-128f64).exp2();
        assert!((b.raw - expected).abs() <= 1e-12 * expected);
        let b = hash_bound(HashProperty::Ow, &params(64, 0, 0)).unwrap();
        assert_eq!(b.raw, (-64f64).exp2());
        let sm = hash_bound(HashProperty::SmOw, &params(80, 9, 3)).unwrap();
        let ow = hash_bound(HashProperty::Ow, &params(80, 9, 3)).unwrap();
        assert!((sm.raw - ow.raw).abs() <= 1e-15 * ow.raw);
    }

    #[test]
    fn etcr_adds_key_term() {
        let mut p = params(40, 16, 4);
        p.k = 30;
        let b = hash_bound(HashProperty::Etcr, &p).unwrap();
        let expected = (8.0 + 16.0 + 1.0f64).powi(2) / 2f64.powi(40) + 8.0 * 400.0 / 2f64.powi(30);
        assert!((b.raw - expected).abs() <= 1e-13 * expected);
        p.p = 4.0;
        let mm = hash_bound(HashProperty::MmEtcr, &p).unwrap();
        assert!((mm.raw - 4.0 * expected).abs() <= 1e-13 * expected);
    }

    #[test]
    fn clamps_at_one() {
        let b = hash_bound(HashProperty::Ow, &params(4, 100, 100)).unwrap();
        assert!(b.raw > 1.0);
        assert_eq!(b.clamped, 1.0);
        assert!(hash_bound(HashProperty::Ow, &params(0, 1, 1)).is_err());
    }

    #[test]
    fn property_names_round_trip() {
        for p in HashProperty::ALL {
            assert_eq!(p.name().parse::<HashProperty>().unwrap(), p);
        }
        assert_eq!(
            "mm-etcr".parse::<HashProperty>().unwrap(),
            HashProperty::MmEtcr
        );
    }

    #[test]
    fn sd_examples() {
        assert_eq!(ow_reduction_sd_bound(8, 16), (-5f64).exp2());
        assert_eq!(ow_reduction_sd_bound(8, 8), 0.5);
        assert_eq!(ow_reduction_sd_bound(8, 24), (-9f64).exp2());
    }

    #[test]
    fn pow_examples() {
        let mut bp = backbone(0, 0);
        let e = 0.9 * 0.03 * 0.97;
        let b = pow_success_bound(&bp).unwrap();
        assert!((b.raw - e * bp.p_pow).abs() <= 1e-14 * e * bp.p_pow);
        bp.epsilon = 1.0;
        assert_eq!(pow_success_bound(&bp).unwrap().raw, 0.0);
    }

    #[test]
    fn honest_majority_examples() {
        assert!(hybrid_honest_majority(&backbone(0, 0)).unwrap().holds);
        let r = hybrid_honest_majority(&backbone(0, 1 << 9)).unwrap();
        assert!(!r.holds);
        assert!((r.rhs - 1.0 / 0.0291f64.sqrt()).abs() < 1e-9);
        let mut bp = backbone(0, 0);
        bp.negl_threshold = 0.0;
        assert!(hybrid_honest_majority(&bp).unwrap().holds);
        bp.budget = QueryBudget::new(1, 0);
        assert!(!hybrid_honest_majority(&bp).unwrap().holds);
    }

    #[test]
    fn pow_round_examples() {
        let r = simulate_pow_round(0.0, QueryBudget::new(5, 5), 1000, 1, 256).unwrap();
        assert_eq!(r.rate, 0.0);
        let p = 0.01;
        let r = simulate_pow_round(p, QueryBudget::new(20, 0), 40_000, 2, 1024).unwrap();
        // twenty classical probes, then one measurement of the conditioned
        // start state, which is marked with probability p
        let closed = 1.0 - (1.0 - p).powi(21);
        assert!((r.exact - closed).abs() < 1e-12);
        assert!(r.within_3_sigma || (r.rate - closed).abs() < 4.0 * r.stderr);
        assert!(r.below_bound);
    }
}
