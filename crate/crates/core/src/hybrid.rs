//! The two-stage hybrid search algorithm: classically probe the `τc`
//! heaviest indices, and if none is marked run the weight-aware Grover search
//! with `τq` iterations on the distribution conditioned on that miss.

use rand::Rng;
use serde::Serialize;

use crate::bits::FunctionInstance;
use crate::budget::QueryBudget;
use crate::distribution::{complement, DistributionKind, DistributionModel, WeightProfile};
use crate::error::{Error, Result};
use crate::hardness::dsearch_bound;
use crate::quantum_sim::{average_success, closed_form_success};
use crate::rng::{run_blocks, MeanAccumulator, SimulationMode};

/// The `τc` heaviest indices in descending-`ω` order, ties broken by lowest
/// index. Returns all of `[m]` when `tau_c ≥ m`.
pub fn classical_stage_set(weights: &WeightProfile, tau_c: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.m()).collect();
    order.sort_by(|&i, &j| {
        weights.omega[j]
            .total_cmp(&weights.omega[i])
            .then(i.cmp(&j))
    });
    order.truncate(tau_c.min(weights.m()));
    order
}

/// `Pr_{x←D}[∃ i ∈ S: x_i = 1]`, in closed form for uniform and Bernoulli
/// distributions and by summation over the entries of explicit ones.
pub fn classical_success_prob(dist: &DistributionModel, probed: &[usize]) -> Result<f64> {
    complement(dist.m(), probed)?;
    let s = probed.len();
    Ok(match dist.kind() {
        DistributionKind::UniformMarked { m, w } => 1.0 - all_missed_uniform(*m, *w, s),
        DistributionKind::Bernoulli { eta, .. } => 1.0 - (1.0 - eta).powi(s as i32),
        DistributionKind::Explicit { entries, .. } => entries
            .iter()
            .filter(|(x, _)| !x.is_zero_on(probed))
            .map(|(_, p)| p)
            .sum(),
    })
}

/// `C(m − s, w)/C(m, w)`: probability that none of `s` fixed indices is among
/// `w` uniformly chosen marks.
fn all_missed_uniform(m: usize, w: usize, s: usize) -> f64 {
    if s + w > m {
        return 0.0;
    }
    (0..w)
        .map(|j| (m - s - j) as f64 / (m - j) as f64)
        .product()
}

/// [`classical_success_prob`] computed by enumerating the support.
pub fn classical_success_prob_enumerated(
    dist: &DistributionModel,
    probed: &[usize],
) -> Result<f64> {
    complement(dist.m(), probed)?;
    Ok(dist
        .enumerate_support()?
        .iter()
        .filter(|(x, _)| !x.is_zero_on(probed))
        .map(|(_, p)| p)
        .sum())
}

/// Which stage produced a trial's output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stage {
    Classical,
    Quantum,
    /// No query or measurement produced an output.
    None,
}

/// Result of one simulated run of the algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HybridOutcome {
    pub success: bool,
    /// The marked index that was output, in the original indexing.
    pub found_index: Option<usize>,
    pub stage: Stage,
}

/// Monte Carlo summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub rate: f64,
    pub stderr: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Exact success decomposition of the algorithm next to its lower and upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridReport {
    pub budget: QueryBudget,
    /// Probed indices in probe order.
    pub classical_set: Vec<usize>,
    /// `E[Z_c] = Pr[some probed index is marked]`.
    pub classical_hit_prob: f64,
    /// Success of the quantum stage on the conditioned distribution.
    pub quantum_conditional_prob: f64,
    /// `E[Z_c] + (1 − E[Z_c])·quantum_conditional_prob`.
    pub total_prob: f64,
    /// `½(E[Z_c] + quantum_conditional_prob)`.
    pub exact_half_sum: f64,
    /// `½(E[Z_c] + τq²·Σω̃_i²/ω̃)`, the quantum term replaced by its
    /// Grover-stage lower bound.
    pub lower_bound_half_sum: f64,
    /// Whether the Grover-stage lower bound applies (no over-rotation).
    pub lower_bound_valid: bool,
    /// `min(1, ν_D(2√τc + 2τq + 1)²)`.
    pub upper_bound_thm1: f64,
    pub monte_carlo: Option<MonteCarloEstimate>,
}

/// Precomputed stage data shared by exact evaluation and simulation.
#[derive(Debug, Clone)]
pub struct HybridPlan {
    budget: QueryBudget,
    probe_order: Vec<usize>,
    /// Conditioned distribution and its weights; `None` when every instance
    /// is caught by the classical stage.
    conditioned: Option<(DistributionModel, WeightProfile)>,
    /// Original index → reduced index (`usize::MAX` for probed indices).
    reduced_index: Vec<usize>,
    /// Reduced index → original index.
    original_index: Vec<usize>,
}

impl HybridPlan {
    pub fn new(dist: &DistributionModel, budget: QueryBudget) -> Result<Self> {
        let m = dist.m();
        if budget.tau_c > m {
            return Err(Error::InvalidInput(format!(
                "tau_c = {} exceeds domain size m = {m}",
                budget.tau_c
            )));
        }
        let weights = dist.weight_profile();
        let probe_order = classical_stage_set(&weights, budget.tau_c);
        let conditioned = match dist.induced_distribution(&probe_order) {
            Ok(d) => {
                let w = d.weight_profile();
                Some((d, w))
            }
            Err(Error::ZeroConditionalMass) => None,
            Err(e) => return Err(e),
        };
        let original_index = complement(m, &probe_order)?;
        let mut reduced_index = vec![usize::MAX; m];
        for (j, &i) in original_index.iter().enumerate() {
            reduced_index[i] = j;
        }
        Ok(HybridPlan {
            budget,
            probe_order,
            conditioned,
            reduced_index,
            original_index,
        })
    }

    pub fn probe_order(&self) -> &[usize] {
        &self.probe_order
    }

    /// The conditioned distribution `D̃`, if the classical stage can miss.
    pub fn conditioned(&self) -> Option<&DistributionModel> {
        self.conditioned.as_ref().map(|(d, _)| d)
    }

    /// Runs the algorithm once on instance `x`, sampling the final
    /// measurement with `rng`.
    pub fn run_trial<R: Rng + ?Sized>(&self, x: &FunctionInstance, rng: &mut R) -> HybridOutcome {
        let failure = |stage| HybridOutcome {
            success: false,
            found_index: None,
            stage,
        };
        if self.budget.total() == 0 {
            return failure(Stage::None);
        }
        if let Some(&i) = self.probe_order.iter().find(|&&i| x.get(i)) {
            return HybridOutcome {
                success: true,
                found_index: Some(i),
                stage: Stage::Classical,
            };
        }
        let Some((_, weights)) = &self.conditioned else {
            return failure(Stage::Quantum);
        };
        if weights.omega_total <= 0.0 {
            return failure(Stage::Quantum);
        }
        let marked: Vec<usize> = x
            .marked()
            .map(|i| self.reduced_index[i])
            .filter(|&j| j != usize::MAX)
            .collect();
        let alpha: f64 = marked.iter().map(|&j| weights.omega[j]).sum();
        let success = closed_form_success(alpha / weights.omega_total, self.budget.tau_q);
        if rng.random::<f64>() >= success {
            return failure(Stage::Quantum);
        }
        // Conditioned on success the outcome is marked index j with
        // probability ω̃_j/α̃.
        let mut target = rng.random::<f64>() * alpha;
        let mut chosen = *marked.last().expect("positive success needs a mark");
        for &j in &marked {
            if target < weights.omega[j] {
                chosen = j;
                break;
            }
            target -= weights.omega[j];
        }
        HybridOutcome {
            success: true,
            found_index: Some(self.original_index[chosen]),
            stage: Stage::Quantum,
        }
    }
}

/// Exact success of the hybrid algorithm, plus a Monte Carlo estimate in
/// Monte Carlo mode. A zero budget succeeds with probability 0 by convention.
pub fn run_hybrid(
    dist: &DistributionModel,
    budget: QueryBudget,
    mode: SimulationMode,
) -> Result<HybridReport> {
    let plan = HybridPlan::new(dist, budget)?;
    let nu = dist.nu();
    let upper_bound_thm1 = dsearch_bound(nu, budget);
    let classical = classical_success_prob(dist, &plan.probe_order)?;
    let (quantum, quantum_bound, lower_bound_valid) = if budget.total() == 0 {
        (0.0, 0.0, true)
    } else {
        match plan.conditioned() {
            None => (0.0, 0.0, true),
            Some(reduced) => match average_success(reduced, budget.tau_q, SimulationMode::Exact) {
                Ok(avg) => (avg.epsilon, avg.lower_bound, avg.valid_regime),
                Err(Error::ZeroWeight) => (0.0, 0.0, true),
                Err(e) => return Err(e),
            },
        }
    };
    let total_prob = if budget.total() == 0 {
        0.0
    } else {
        (classical + (1.0 - classical) * quantum).clamp(0.0, 1.0)
    };
    let monte_carlo = match mode {
        SimulationMode::Exact => None,
        SimulationMode::MonteCarlo { trials, seed } => {
            if trials == 0 {
                return Err(Error::InvalidInput("trials must be at least 1".into()));
            }
            let sampler = dist.sampler();
            let acc = run_blocks(seed, trials, |rng, n| {
                let mut acc = MeanAccumulator::default();
                for _ in 0..n {
                    let x = sampler.sample(rng);
                    let hit = plan.run_trial(&x, rng).success;
                    acc.push(if hit { 1.0 } else { 0.0 });
                }
                acc
            })
            .iter()
            .fold(MeanAccumulator::default(), MeanAccumulator::merge);
            Some(MonteCarloEstimate {
                rate: acc.mean(),
                stderr: acc.stderr(),
                trials,
                seed,
            })
        }
    };
    Ok(HybridReport {
        budget,
        classical_set: plan.probe_order.clone(),
        classical_hit_prob: classical,
        quantum_conditional_prob: quantum,
        total_prob,
        exact_half_sum: 0.5 * (classical + quantum),
        lower_bound_half_sum: 0.5 * (classical + quantum_bound),
        lower_bound_valid,
        upper_bound_thm1,
        monte_carlo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum_sim::run_modified_grover;
    use crate::rng::substream;

    #[test]
    fn stage_set_examples() {
        let w = WeightProfile::from_weights(vec![0.1, 0.9, 0.5]);
        assert_eq!(classical_stage_set(&w, 1), vec![1]);
        assert_eq!(classical_stage_set(&w, 2), vec![1, 2]);
        let flat = WeightProfile::from_weights(vec![0.2; 6]);
        assert_eq!(classical_stage_set(&flat, 3), vec![0, 1, 2]);
        assert!(classical_stage_set(&flat, 0).is_empty());
    }

    #[test]
    fn classical_examples() {
        let u = DistributionModel::uniform_marked(12, 1).unwrap();
        assert!((classical_success_prob(&u, &[0, 5, 7]).unwrap() - 0.25).abs() < 1e-15);
        let b = DistributionModel::bernoulli(6, 0.1).unwrap();
        assert!((classical_success_prob(&b, &[2, 3]).unwrap() - 0.19).abs() < 1e-15);
        assert_eq!(classical_success_prob(&b, &[]).unwrap(), 0.0);
        assert!(classical_success_prob(&b, &[6]).is_err());
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for d in [
            DistributionModel::uniform_marked(9, 1).unwrap(),
            DistributionModel::uniform_marked(9, 3).unwrap(),
            DistributionModel::bernoulli(9, 0.3).unwrap(),
        ] {
            for s in [vec![], vec![4], vec![0, 8, 3], vec![1, 2, 3, 4, 5, 6, 7]] {
                let a = classical_success_prob(&d, &s).unwrap();
                let b = classical_success_prob_enumerated(&d, &s).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_budget_convention() {
        let d = DistributionModel::bernoulli(5, 0.5).unwrap();
        let r = run_hybrid(&d, QueryBudget::new(0, 0), SimulationMode::Exact).unwrap();
        assert_eq!(r.total_prob, 0.0);
        let r = run_hybrid(
            &d,
            QueryBudget::new(0, 0),
            SimulationMode::MonteCarlo {
                trials: 100,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(r.monte_carlo.unwrap().rate, 0.0);
    }

    #[test]
    fn paper_lower_bound_shapes() {
        let (m, tc, tq) = (64usize, 4usize, 2usize);
        let u = DistributionModel::uniform_marked(m, 1).unwrap();
        let r = run_hybrid(&u, QueryBudget::new(tc, tq), SimulationMode::Exact).unwrap();
        let expected = 0.5 * (tc as f64 / m as f64 + (tq * tq) as f64 / (m - tc) as f64);
        assert!((r.lower_bound_half_sum - expected).abs() < 1e-15);
        assert!(r.total_prob >= expected);

        let eta = 0.02;
        let b = DistributionModel::bernoulli(16, eta).unwrap();
        let r = run_hybrid(&b, QueryBudget::new(4, 2), SimulationMode::Exact).unwrap();
        // ½(1 − (1−η)^τc + η τq²) with the classical term at least ½ητc
        assert!(r.lower_bound_half_sum >= 0.5 * eta * (0.5 * 4.0 + 4.0));
    }

    #[test]
    fn bernoulli_reduction() {
        let (m, eta, tc, tq) = (10usize, 0.15, 3usize, 2usize);
        let d = DistributionModel::bernoulli(m, eta).unwrap();
        let r = run_hybrid(&d, QueryBudget::new(tc, tq), SimulationMode::Exact).unwrap();
        let rest = DistributionModel::bernoulli(m - tc, eta).unwrap();
        let w = rest.weight_profile();
        let q: f64 = rest
            .enumerate_support()
            .unwrap()
            .iter()
            .filter(|(x, _)| x.marked_count() > 0)
            .map(|(x, p)| p * run_modified_grover(&w, x, tq).unwrap().success())
            .sum();
        let c = 1.0 - (1.0 - eta).powi(tc as i32);
        assert!((r.total_prob - (c + (1.0 - eta).powi(tc as i32) * q)).abs() < 1e-12);
    }

    #[test]
    fn certain_classical_hit() {
        let d = DistributionModel::explicit(
            3,
            vec![("100".parse().unwrap(), 0.7), ("010".parse().unwrap(), 0.3)],
        )
        .unwrap();
        let r = run_hybrid(&d, QueryBudget::new(2, 3), SimulationMode::Exact).unwrap();
        assert_eq!(r.classical_set, vec![0, 1]);
        assert!((r.total_prob - 1.0).abs() < 1e-15);
        assert_eq!(r.quantum_conditional_prob, 0.0);
    }

    #[test]
    fn trial_reports_original_indices() {
        let d = DistributionModel::explicit(4, vec![("0011".parse().unwrap(), 1.0)]).unwrap();
        let plan = HybridPlan::new(&d, QueryBudget::new(1, 0)).unwrap();
        // probes index 2 first (heaviest, lowest index among ties)
        let mut rng = substream(0, 0);
        let out = plan.run_trial(&"0011".parse().unwrap(), &mut rng);
        assert_eq!(out.found_index, Some(2));
        assert_eq!(out.stage, Stage::Classical);

        let d = DistributionModel::explicit(
            4,
            vec![
                ("0100".parse().unwrap(), 0.5),
                ("0001".parse().unwrap(), 0.5),
            ],
        )
        .unwrap();
        let plan = HybridPlan::new(&d, QueryBudget::new(1, 0)).unwrap();
        assert_eq!(plan.probe_order(), &[1]);
        for _ in 0..20 {
            let out = plan.run_trial(&"0001".parse().unwrap(), &mut rng);
            assert_eq!(out.stage, Stage::Quantum);
            // D̃ is a point mass on the remaining marked index: always found
            assert_eq!(out.found_index, Some(3));
        }
    }

    #[test]
    fn monte_carlo_agrees_with_exact() {
        let d = DistributionModel::uniform_marked(10, 2).unwrap();
        let budget = QueryBudget::new(3, 1);
        let r = run_hybrid(
            &d,
            budget,
            SimulationMode::MonteCarlo {
                trials: 60_000,
                seed: 5,
            },
        )
        .unwrap();
        let mc = r.monte_carlo.unwrap();
        assert!((mc.rate - r.total_prob).abs() <= 4.0 * mc.stderr + 1e-12);
        assert!(r.total_prob <= r.upper_bound_thm1);
    }
}
