//! Weight-aware Grover search: start from amplitudes `√(ω_i/ω)`, then repeat
//! `G = R_0 R_x` with `R_x|i⟩ = (−1)^{x_i}|i⟩` and
//! `R_0 = −(1 − 2|φ_0⟩⟨φ_0|)`.
//!
//! For a fixed instance the state stays in the plane of the normalized marked
//! and unmarked parts of `φ_0` and rotates by `2θ` per iteration, where
//! `sin²θ = α_x/ω`; after `t` iterations the success probability is
//! `sin²((2t+1)θ)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;
use statrs::distribution::{Binomial, Discrete};

use crate::bits::FunctionInstance;
use crate::distribution::{DistributionKind, DistributionModel, WeightProfile};
use crate::error::{Error, Result};
use crate::rng::{run_blocks, MeanAccumulator, SimulationMode};

/// Allowed drift of `‖state‖²` away from one.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Allowed gap between the state-vector and rotation-formula success values.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-10;

/// Slack on the rotation-angle condition `(2τq+1)θ ≤ π/2`.
const REGIME_SLACK: f64 = 1e-12;

/// A unit vector of complex amplitudes over `[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Wraps `amplitudes`, rejecting vectors that are not unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "state has squared norm {norm}, expected 1"
            )));
        }
        Ok(QuantumState { amplitudes })
    }

    /// The computational basis state `|i⟩`.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); m];
        amplitudes[i] = Complex64::new(1.0, 0.0);
        QuantumState { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Probability that measuring the state yields an index with `x_i = 1`.
    pub fn marked_probability(&self, x: &FunctionInstance) -> f64 {
        x.marked().map(|i| self.amplitudes[i].norm_sqr()).sum()
    }
}

/// Success trajectory of the Grover iteration on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverRun {
    pub tau_q: usize,
    /// Success probability after `0..=tau_q` iterations.
    pub per_iteration_success: Vec<f64>,
    /// `θ = asin(√(α_x/ω))`.
    pub theta: f64,
    /// `α_x = Σ_{i: x_i=1} ω_i`.
    pub alpha_x: f64,
    /// `β_x = Σ_{i: x_i=0} ω_i`.
    pub beta_x: f64,
    pub omega_total: f64,
}

impl GroverRun {
    /// `ε_x`, the success probability after all `tau_q` iterations.
    pub fn success(&self) -> f64 {
        self.per_iteration_success[self.tau_q]
    }
}

/// Averaged success of the Grover stage over a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AverageSuccess {
    /// `E_x ε_x` (exact) or its Monte Carlo estimate.
    pub epsilon: f64,
    /// Standard error of the estimate; zero in exact mode.
    pub stderr: f64,
    /// `τq²·Σω_i²/ω`.
    pub lower_bound: f64,
    /// Whether `(2τq+1)θ_x ≤ π/2` for every support instance with `α_x > 0`.
    pub valid_regime: bool,
}

/// `|φ_0⟩ = Σ_i √(ω_i/ω)|i⟩`.
pub fn initial_state(weights: &WeightProfile) -> Result<QuantumState> {
    let omega = weights.omega_total;
    if omega <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    let amplitudes = weights
        .omega
        .iter()
        .map(|w| Complex64::new((w / omega).sqrt(), 0.0))
        .collect();
    QuantumState::from_amplitudes(amplitudes)
}

/// One application of `G = R_0 R_x` (`R_x` first).
pub fn grover_iterate(
    state: &QuantumState,
    x: &FunctionInstance,
    phi0: &QuantumState,
) -> Result<QuantumState> {
    let m = state.len();
    for found in [x.len(), phi0.len()] {
        if found != m {
            return Err(Error::DimensionMismatch { expected: m, found });
        }
    }
    let mut v = state.amplitudes.clone();
    for i in x.marked() {
        v[i] = -v[i];
    }
    // R_0 v = 2⟨φ_0, v⟩φ_0 − v
    let overlap: Complex64 = phi0
        .amplitudes
        .iter()
        .zip(&v)
        .map(|(p, a)| p.conj() * a)
        .sum();
    let twice = overlap * 2.0;
    for (a, p) in v.iter_mut().zip(&phi0.amplitudes) {
        *a = twice * p - *a;
    }
    Ok(QuantumState { amplitudes: v })
}

/// `θ = asin(√(α_x/ω))`.
pub fn rotation_angle(weights: &WeightProfile, x: &FunctionInstance) -> Result<f64> {
    if weights.omega_total <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    Ok(angle_from_ratio(
        weights.marked_mass(x) / weights.omega_total,
    ))
}

/// `sin²((2τq+1)·asin(√r))` for marked fraction `r = α_x/ω`.
pub fn closed_form_success(ratio: f64, tau_q: usize) -> f64 {
    let turns = (2 * tau_q + 1) as f64;
    (turns * angle_from_ratio(ratio)).sin().powi(2)
}

fn angle_from_ratio(ratio: f64) -> f64 {
    ratio.clamp(0.0, 1.0).sqrt().asin()
}

fn in_regime(ratio: f64, tau_q: usize) -> bool {
    ratio <= 0.0 || (2 * tau_q + 1) as f64 * angle_from_ratio(ratio) <= FRAC_PI_2 + REGIME_SLACK
}

/// Evolves the state vector for `tau_q` iterations and records the success
/// probability after each, checking it against the rotation formula.
pub fn run_modified_grover(
    weights: &WeightProfile,
    x: &FunctionInstance,
    tau_q: usize,
) -> Result<GroverRun> {
    if x.len() != weights.m() {
        return Err(Error::DimensionMismatch {
            expected: weights.m(),
            found: x.len(),
        });
    }
    let phi0 = initial_state(weights)?;
    let alpha_x = weights.marked_mass(x);
    let omega_total = weights.omega_total;
    let ratio = alpha_x / omega_total;
    let mut per_iteration_success = Vec::with_capacity(tau_q + 1);
    let mut state = phi0.clone();
    per_iteration_success.push(state.marked_probability(x));
    for _ in 0..tau_q {
        state = grover_iterate(&state, x, &phi0)?;
        per_iteration_success.push(state.marked_probability(x));
    }
    for (t, &p) in per_iteration_success.iter().enumerate() {
        let expected = closed_form_success(ratio, t);
        if (p - expected).abs() > CLOSED_FORM_TOLERANCE {
            return Err(Error::ClosedFormMismatch {
                what: "grover rotation",
                computed: p,
                expected,
            });
        }
    }
    Ok(GroverRun {
        tau_q,
        per_iteration_success,
        theta: angle_from_ratio(ratio),
        alpha_x,
        beta_x: omega_total - alpha_x,
        omega_total,
    })
}

/// `E_{x←D} ε_x` after `tau_q` iterations started from `D`'s own weights.
///
/// Exact mode sums the rotation formula over the support. Uniform and
/// Bernoulli distributions are stratified by the number of marked indices,
/// so they need no enumeration and work for any `m`.
pub fn average_success(
    dist: &DistributionModel,
    tau_q: usize,
    mode: SimulationMode,
) -> Result<AverageSuccess> {
    let weights = dist.weight_profile();
    if weights.omega_total <= 0.0 {
        return Err(Error::ZeroWeight);
    }
    let lower_bound = (tau_q * tau_q) as f64 * weights.sum_of_squares() / weights.omega_total;
    let valid_regime = valid_regime(dist, tau_q);
    let (epsilon, stderr) = match mode {
        SimulationMode::Exact => (exact_average(dist, &weights, tau_q), 0.0),
        SimulationMode::MonteCarlo { trials, seed } => {
            let sampler = dist.sampler();
            let acc = run_blocks(seed, trials, |rng, n| {
                let mut acc = MeanAccumulator::default();
                for _ in 0..n {
                    let x = sampler.sample(rng);
                    let ratio = weights.marked_mass(&x) / weights.omega_total;
                    acc.push(closed_form_success(ratio, tau_q));
                }
                acc
            })
            .iter()
            .fold(MeanAccumulator::default(), MeanAccumulator::merge);
            (acc.mean(), acc.stderr())
        }
    };
    Ok(AverageSuccess {
        epsilon,
        stderr,
        lower_bound,
        valid_regime,
    })
}

fn exact_average(dist: &DistributionModel, weights: &WeightProfile, tau_q: usize) -> f64 {
    match dist.kind() {
        DistributionKind::Explicit { entries, .. } => entries
            .iter()
            .map(|(x, p)| {
                p * closed_form_success(weights.marked_mass(x) / weights.omega_total, tau_q)
            })
            .sum(),
        // Every instance has exactly w of m marked, so α_x/ω = w/m.
        DistributionKind::UniformMarked { m, w } => {
            closed_form_success(*w as f64 / *m as f64, tau_q)
        }
        // With k marked indices α_x/ω = k/m; k is Binomial(m, η).
        DistributionKind::Bernoulli { m, eta } => {
            let m = *m;
            if *eta == 1.0 {
                return closed_form_success(1.0, tau_q);
            }
            let counts = Binomial::new(*eta, m as u64).expect("eta validated");
            (1..=m)
                .map(|k| counts.pmf(k as u64) * closed_form_success(k as f64 / m as f64, tau_q))
                .sum()
        }
    }
}

/// True iff `(2τq+1)θ_x ≤ π/2` for every support instance with `α_x > 0`,
/// i.e. no instance has rotated past its success optimum.
pub fn valid_regime(dist: &DistributionModel, tau_q: usize) -> bool {
    let weights = dist.weight_profile();
    if weights.omega_total <= 0.0 {
        return true;
    }
    match dist.kind() {
        DistributionKind::Explicit { entries, .. } => entries
            .iter()
            .all(|(x, _)| in_regime(weights.marked_mass(x) / weights.omega_total, tau_q)),
        DistributionKind::UniformMarked { m, w } => in_regime(*w as f64 / *m as f64, tau_q),
        // Any η > 0 gives the all-marked instance positive probability, and its
        // angle is π/2.
        DistributionKind::Bernoulli { .. } => in_regime(1.0, tau_q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use nalgebra::DMatrix;
    use rand::Rng;

    fn x(s: &str) -> FunctionInstance {
        s.parse().unwrap()
    }

    fn uniform_weights(m: usize) -> WeightProfile {
        WeightProfile::from_weights(vec![1.0 / m as f64; m])
    }

    #[test]
    fn initial_state_examples() {
        let s = initial_state(&uniform_weights(4)).unwrap();
        assert!(s
            .amplitudes()
            .iter()
            .all(|a| (a.re - 0.5).abs() < 1e-15 && a.im == 0.0));

        let s = initial_state(&WeightProfile::from_weights(vec![1.0, 0.0, 0.0])).unwrap();
        assert_eq!(s.amplitudes()[0].re, 1.0);
        assert_eq!(s.amplitudes()[1].re, 0.0);

        let s = initial_state(&WeightProfile::from_weights(vec![0.5, 0.25, 0.25])).unwrap();
        assert!((s.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - 0.5).abs() < 1e-15);

        assert!(matches!(
            initial_state(&WeightProfile::from_weights(vec![0.0; 3])),
            Err(Error::ZeroWeight)
        ));
    }

    #[test]
    fn unmarked_instance_is_fixed_point() {
        let w = WeightProfile::from_weights(vec![0.2, 0.5, 0.3]);
        let phi0 = initial_state(&w).unwrap();
        let next = grover_iterate(&phi0, &x("000"), &phi0).unwrap();
        assert!((phi0.inner(&next).norm() - 1.0).abs() < 1e-14);
        assert_eq!(next.marked_probability(&x("000")), 0.0);
    }

    #[test]
    fn one_iteration_finds_single_mark_among_four() {
        let w = uniform_weights(4);
        let phi0 = initial_state(&w).unwrap();
        let inst = x("0010");
        let next = grover_iterate(&phi0, &inst, &phi0).unwrap();
        // explicit arithmetic: R_x gives (½,½,−½,½); overlap with φ_0 is ½;
        // 2·½·φ_0 − v = (0,0,1,0)
        let expected = [0.0, 0.0, 1.0, 0.0];
        for (a, e) in next.amplitudes().iter().zip(expected) {
            assert!((a.re - e).abs() < 1e-15 && a.im.abs() < 1e-15);
        }
    }

    fn dense_grover(phi0: &QuantumState, inst: &FunctionInstance) -> DMatrix<Complex64> {
        let m = phi0.len();
        let p = nalgebra::DVector::from_vec(phi0.amplitudes().to_vec());
        let r0 =
            -(DMatrix::<Complex64>::identity(m, m) - (&p * p.adjoint()) * Complex64::new(2.0, 0.0));
        let mut rx = DMatrix::<Complex64>::identity(m, m);
        for i in inst.marked() {
            rx[(i, i)] = Complex64::new(-1.0, 0.0);
        }
        r0 * rx
    }

    #[test]
    fn matches_dense_matrix_on_marked_support() {
        let w = WeightProfile::from_weights(vec![0.6, 0.3, 0.1]);
        let phi0 = initial_state(&w).unwrap();
        let inst = x("110");
        let alpha = w.marked_mass(&inst);
        // |A_x⟩: normalized marked part of φ_0
        let a_x = QuantumState::from_amplitudes(vec![
            Complex64::new((0.6 / alpha).sqrt(), 0.0),
            Complex64::new((0.3 / alpha).sqrt(), 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let fast = grover_iterate(&a_x, &inst, &phi0).unwrap();
        let dense =
            dense_grover(&phi0, &inst) * nalgebra::DVector::from_vec(a_x.amplitudes().to_vec());
        for (a, b) in fast.amplitudes().iter().zip(dense.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn uniform_weights_give_textbook_grover() {
        for m in [2usize, 5, 8] {
            let phi0 = initial_state(&uniform_weights(m)).unwrap();
            let inst = FunctionInstance::from_marked(m, [m - 1]).unwrap();
            let g = dense_grover(&phi0, &inst);
            // textbook: D·O with D = 2|s⟩⟨s| − 1, O the phase oracle
            let s =
                nalgebra::DVector::from_element(m, Complex64::new(1.0 / (m as f64).sqrt(), 0.0));
            let diffusion = (&s * s.adjoint()) * Complex64::new(2.0, 0.0) - DMatrix::identity(m, m);
            let mut oracle = DMatrix::<Complex64>::identity(m, m);
            oracle[(m - 1, m - 1)] = Complex64::new(-1.0, 0.0);
            let diff = (g - diffusion * oracle)
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12);
            for k in 0..m {
                let fast = grover_iterate(&QuantumState::basis(m, k), &inst, &phi0).unwrap();
                assert!((fast.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn iterate_preserves_norm_on_random_states() {
        let mut rng = substream(3, 0);
        for _ in 0..50 {
            let m = rng.random_range(2..20);
            let omega: Vec<f64> = (0..m).map(|_| rng.random::<f64>()).collect();
            let w = WeightProfile::from_weights(omega);
            let phi0 = initial_state(&w).unwrap();
            let mut amps: Vec<Complex64> = (0..m)
                .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= n);
            let v = QuantumState::from_amplitudes(amps).unwrap();
            let inst = FunctionInstance::from_mask(m, rng.random());
            let out = grover_iterate(&v, &inst, &phi0).unwrap();
            assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn run_examples() {
        let w = WeightProfile::from_weights(vec![0.1, 0.4, 0.3, 0.2]);
        let inst = x("0110");
        let run = run_modified_grover(&w, &inst, 0).unwrap();
        assert!((run.success() - 0.7).abs() < 1e-15);
        assert!((run.alpha_x + run.beta_x - run.omega_total).abs() < 1e-15);

        let run = run_modified_grover(&w, &x("0000"), 5).unwrap();
        assert!(run.per_iteration_success.iter().all(|&p| p == 0.0));

        let inst = FunctionInstance::from_marked(16, [9]).unwrap();
        let run = run_modified_grover(&uniform_weights(16), &inst, 3).unwrap();
        let expected = (7.0 * 0.25f64.asin()).sin().powi(2);
        assert!((run.success() - expected).abs() < 1e-10);
    }

    #[test]
    fn state_stays_in_rotation_plane() {
        let w = WeightProfile::from_weights(vec![0.05, 0.4, 0.15, 0.3, 0.1]);
        let inst = x("01010");
        let phi0 = initial_state(&w).unwrap();
        let alpha = w.marked_mass(&inst);
        let beta = w.omega_total - alpha;
        let theta = rotation_angle(&w, &inst).unwrap();
        let mut state = phi0.clone();
        for t in 0..6 {
            let angle = (2 * t + 1) as f64 * theta;
            for i in 0..5 {
                let expected = if inst.get(i) {
                    angle.sin() * (w.omega[i] / alpha).sqrt()
                } else {
                    angle.cos() * (w.omega[i] / beta).sqrt()
                };
                assert!((state.amplitudes()[i] - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
            state = grover_iterate(&state, &inst, &phi0).unwrap();
        }
    }

    #[test]
    fn rotation_angle_examples() {
        let w = uniform_weights(4);
        assert!((rotation_angle(&w, &x("1111")).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(rotation_angle(&w, &x("0000")).unwrap(), 0.0);
        let t = rotation_angle(&w, &x("0100")).unwrap();
        assert!((t - std::f64::consts::PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn average_examples() {
        let u = DistributionModel::uniform_marked(20, 1).unwrap();
        let r = average_success(&u, 0, SimulationMode::Exact).unwrap();
        assert!((r.epsilon - 0.05).abs() < 1e-15);
        // permutation-invariant: bound is τq²·ν
        let r = average_success(&u, 2, SimulationMode::Exact).unwrap();
        assert!((r.lower_bound - 4.0 / 20.0).abs() < 1e-15);
        assert!(r.valid_regime);

        let b = DistributionModel::bernoulli(10, 0.05).unwrap();
        let r = average_success(&b, 2, SimulationMode::Exact).unwrap();
        assert!((r.lower_bound - 0.2).abs() < 1e-12);
        assert!(!r.valid_regime);
    }

    #[test]
    fn stratified_matches_enumeration() {
        for (d, tq) in [
            (DistributionModel::bernoulli(10, 0.05).unwrap(), 2),
            (DistributionModel::bernoulli(7, 0.6).unwrap(), 3),
            (DistributionModel::uniform_marked(9, 3).unwrap(), 1),
        ] {
            let fast = average_success(&d, tq, SimulationMode::Exact)
                .unwrap()
                .epsilon;
            let w = d.weight_profile();
            let slow: f64 = d
                .enumerate_support()
                .unwrap()
                .iter()
                .map(|(x, p)| p * run_modified_grover(&w, x, tq).unwrap().success())
                .sum();
            assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        }
    }

    #[test]
    fn monte_carlo_tracks_exact() {
        let d = DistributionModel::bernoulli(12, 0.1).unwrap();
        let exact = average_success(&d, 1, SimulationMode::Exact).unwrap();
        let mc = average_success(
            &d,
            1,
            SimulationMode::MonteCarlo {
                trials: 50_000,
                seed: 9,
            },
        )
        .unwrap();
        assert!((mc.epsilon - exact.epsilon).abs() < 4.0 * mc.stderr);
    }
}
