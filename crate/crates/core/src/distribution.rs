//! Distributions over truth tables `x ∈ {0,1}^m`, their per-index marking
//! weights `ω_i`, and the hardness parameter `ν_D = max_i ω_i`.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::bits::FunctionInstance;
use crate::error::{Error, Result};

/// Largest support [`DistributionModel::enumerate_support`] will materialize.
pub const ENUMERATION_CAP: u128 = 1 << 20;

/// Tolerance on `Σ d_x` for explicit distributions before renormalization.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// The three supported families of distributions.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionKind {
    /// Finite list of instances with probabilities `d_x`.
    Explicit {
        m: usize,
        entries: Vec<(FunctionInstance, f64)>,
    },
    /// Uniform over instances with exactly `w` marked indices.
    UniformMarked { m: usize, w: usize },
    /// Each index marked independently with probability `eta`.
    Bernoulli { m: usize, eta: f64 },
}

/// A validated distribution `D` over `{0,1}^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionSpec", into = "DistributionSpec")]
pub struct DistributionModel {
    kind: DistributionKind,
}

impl DistributionModel {
    /// Validates `kind`; explicit probabilities within 1e-9 of summing to one
    /// are renormalized.
    pub fn new(kind: DistributionKind) -> Result<Self> {
        let kind = match kind {
            DistributionKind::Explicit { m, mut entries } => {
                if entries.is_empty() {
                    return Err(Error::InvalidDistribution(
                        "explicit distribution has no entries".into(),
                    ));
                }
                let mut total = 0.0;
                for (x, p) in &entries {
                    if x.len() != m {
                        return Err(Error::InvalidDistribution(format!(
                            "instance {x} has length {} but m = {m}",
                            x.len()
                        )));
                    }
                    if !(p.is_finite() && *p >= 0.0) {
                        return Err(Error::InvalidDistribution(format!(
                            "probability {p} of {x} is not a non-negative number"
                        )));
                    }
                    total += p;
                }
                if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(Error::InvalidDistribution(format!(
                        "probabilities sum to {total}, not 1"
                    )));
                }
                let mut sorted: Vec<&FunctionInstance> = entries.iter().map(|(x, _)| x).collect();
                sorted.sort();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::InvalidDistribution(format!(
                        "instance {} listed twice",
                        w[0]
                    )));
                }
                // Leave sums that are 1 up to rounding alone so that
                // normalization is idempotent (JSON round trips are exact).
                if (total - 1.0).abs() > entries.len() as f64 * f64::EPSILON {
                    for (_, p) in entries.iter_mut() {
                        *p /= total;
                    }
                }
                DistributionKind::Explicit { m, entries }
            }
            DistributionKind::UniformMarked { m, w } => {
                if w > m {
                    return Err(Error::InvalidDistribution(format!(
                        "w = {w} exceeds m = {m}"
                    )));
                }
                DistributionKind::UniformMarked { m, w }
            }
            DistributionKind::Bernoulli { m, eta } => {
                if !(0.0..=1.0).contains(&eta) {
                    return Err(Error::InvalidDistribution(format!(
                        "eta = {eta} is outside [0, 1]"
                    )));
                }
                DistributionKind::Bernoulli { m, eta }
            }
        };
        Ok(DistributionModel { kind })
    }

    pub fn explicit(m: usize, entries: Vec<(FunctionInstance, f64)>) -> Result<Self> {
        Self::new(DistributionKind::Explicit { m, entries })
    }

    pub fn uniform_marked(m: usize, w: usize) -> Result<Self> {
        Self::new(DistributionKind::UniformMarked { m, w })
    }

    pub fn bernoulli(m: usize, eta: f64) -> Result<Self> {
        Self::new(DistributionKind::Bernoulli { m, eta })
    }

    /// Point mass on a single instance.
    pub fn point_mass(x: FunctionInstance) -> Self {
        let m = x.len();
        DistributionModel {
            kind: DistributionKind::Explicit {
                m,
                entries: vec![(x, 1.0)],
            },
        }
    }

    pub fn kind(&self) -> &DistributionKind {
        &self.kind
    }

    /// Domain size `m`.
    pub fn m(&self) -> usize {
        match &self.kind {
            DistributionKind::Explicit { m, .. }
            | DistributionKind::UniformMarked { m, .. }
            | DistributionKind::Bernoulli { m, .. } => *m,
        }
    }

    /// Uniform and Bernoulli families mark every index with equal probability
    /// and are invariant under index permutations.
    pub fn is_parametric(&self) -> bool {
        !matches!(self.kind, DistributionKind::Explicit { .. })
    }

    /// Number of instances in the support (saturating).
    pub fn support_size(&self) -> u128 {
        match &self.kind {
            DistributionKind::Explicit { entries, .. } => entries.len() as u128,
            DistributionKind::UniformMarked { m, w } => binomial_u128(*m, *w),
            DistributionKind::Bernoulli { m, eta } => {
                if *eta == 0.0 || *eta == 1.0 {
                    1
                } else if *m >= 127 {
                    u128::MAX
                } else {
                    1u128 << *m
                }
            }
        }
    }

    pub fn weight_profile(&self) -> WeightProfile {
        let omega = match &self.kind {
            DistributionKind::Explicit { m, entries } => {
                let mut omega = vec![0.0; *m];
                for (x, p) in entries {
                    for i in x.marked() {
                        omega[i] += p;
                    }
                }
                // summation can overshoot 1 by an ulp when one index is always marked
                omega.iter_mut().for_each(|o| *o = o.min(1.0));
                omega
            }
            DistributionKind::UniformMarked { m, w } => vec![*w as f64 / *m as f64; *m],
            DistributionKind::Bernoulli { m, eta } => vec![*eta; *m],
        };
        WeightProfile::from_weights(omega)
    }

    /// `ν_D = max_i ω_i`.
    pub fn nu(&self) -> f64 {
        match &self.kind {
            DistributionKind::UniformMarked { m, w } => {
                if *m == 0 {
                    0.0
                } else {
                    *w as f64 / *m as f64
                }
            }
            DistributionKind::Bernoulli { m, eta } => {
                if *m == 0 {
                    0.0
                } else {
                    *eta
                }
            }
            DistributionKind::Explicit { .. } => self.weight_profile().nu,
        }
    }

    /// Every instance with its probability. Explicit distributions list their
    /// entries in stored order; uniform supports come in lexicographic order of
    /// the marked index set; Bernoulli supports in counter order (bit `i` of the
    /// counter is `x_i`).
    pub fn enumerate_support(&self) -> Result<Vec<(FunctionInstance, f64)>> {
        let size = self.support_size();
        match &self.kind {
            DistributionKind::Explicit { entries, .. } => Ok(entries.clone()),
            DistributionKind::UniformMarked { m, w } => {
                if size > ENUMERATION_CAP {
                    return Err(Error::SupportTooLarge {
                        size,
                        cap: ENUMERATION_CAP,
                    });
                }
                let p = 1.0 / size as f64;
                let mut out = Vec::with_capacity(size as usize);
                for_each_combination(*m, *w, |marked| {
                    let x = FunctionInstance::from_marked(*m, marked.iter().copied())
                        .expect("combination indices are in range");
                    out.push((x, p));
                });
                Ok(out)
            }
            DistributionKind::Bernoulli { m, eta } => {
                if *eta == 0.0 {
                    return Ok(vec![(FunctionInstance::zeros(*m), 1.0)]);
                }
                if *eta == 1.0 {
                    return Ok(vec![(FunctionInstance::ones(*m), 1.0)]);
                }
                if size > ENUMERATION_CAP {
                    return Err(Error::SupportTooLarge {
                        size,
                        cap: ENUMERATION_CAP,
                    });
                }
                let m = *m;
                let out = (0..1u64 << m)
                    .map(|mask| {
                        let hw = mask.count_ones() as i32;
                        let p = eta.powi(hw) * (1.0 - eta).powi(m as i32 - hw);
                        (FunctionInstance::from_mask(m, mask), p)
                    })
                    .collect();
                Ok(out)
            }
        }
    }

    /// Draws one instance.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FunctionInstance {
        self.sampler().sample(rng)
    }

    /// A reusable sampler (precomputes the CDF of explicit distributions).
    pub fn sampler(&self) -> Sampler<'_> {
        let cdf = match &self.kind {
            DistributionKind::Explicit { entries, .. } => {
                let mut acc = 0.0;
                entries
                    .iter()
                    .map(|(_, p)| {
                        acc += p;
                        acc
                    })
                    .collect()
            }
            _ => Vec::new(),
        };
        Sampler { model: self, cdf }
    }

    /// `D` conditioned on `x_S = 0`, restricted to the complement of `S`.
    /// Reduced index `j` corresponds to the `j`-th smallest element of
    /// `[m] \ S` (see [`complement`]).
    pub fn induced_distribution(&self, probed: &[usize]) -> Result<DistributionModel> {
        let m = self.m();
        let keep = complement(m, probed)?;
        let removed = m - keep.len();
        let kind = match &self.kind {
            DistributionKind::Explicit { entries, .. } => {
                let kept: Vec<_> = entries
                    .iter()
                    .filter(|(x, _)| x.is_zero_on(probed))
                    .collect();
                let mass: f64 = kept.iter().map(|(_, p)| p).sum();
                if mass <= 0.0 {
                    return Err(Error::ZeroConditionalMass);
                }
                DistributionKind::Explicit {
                    m: keep.len(),
                    entries: kept
                        .into_iter()
                        .map(|(x, p)| (x.restrict(&keep), p / mass))
                        .collect(),
                }
            }
            DistributionKind::UniformMarked { w, .. } => {
                if *w > keep.len() {
                    return Err(Error::ZeroConditionalMass);
                }
                DistributionKind::UniformMarked {
                    m: keep.len(),
                    w: *w,
                }
            }
            DistributionKind::Bernoulli { eta, .. } => {
                if *eta == 1.0 && removed > 0 {
                    return Err(Error::ZeroConditionalMass);
                }
                DistributionKind::Bernoulli {
                    m: keep.len(),
                    eta: *eta,
                }
            }
        };
        Ok(DistributionModel { kind })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: DistributionModel =
            serde_json::from_str(text).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
        if model.m() == 0 {
            return Err(Error::InvalidDistribution("m must be positive".into()));
        }
        Ok(model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("distribution serializes")
    }
}

/// Per-index marking weights of a distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    /// `ω_i = Pr[x_i = 1]`.
    pub omega: Vec<f64>,
    /// `ω = Σ_i ω_i`.
    pub omega_total: f64,
    /// `ν_D = max_i ω_i`.
    pub nu: f64,
    /// Lowest index attaining `ν_D`.
    pub argmax_index: usize,
}

impl WeightProfile {
    pub fn from_weights(omega: Vec<f64>) -> Self {
        let mut nu = 0.0;
        let mut argmax_index = 0;
        for (i, &w) in omega.iter().enumerate() {
            if w > nu {
                nu = w;
                argmax_index = i;
            }
        }
        let omega_total = omega.iter().sum();
        WeightProfile {
            omega,
            omega_total,
            nu,
            argmax_index,
        }
    }

    pub fn m(&self) -> usize {
        self.omega.len()
    }

    /// `Σ_i ω_i²`.
    pub fn sum_of_squares(&self) -> f64 {
        self.omega.iter().map(|w| w * w).sum()
    }

    /// `α_x = Σ_{i: x_i = 1} ω_i`.
    pub fn marked_mass(&self, x: &FunctionInstance) -> f64 {
        x.marked().map(|i| self.omega[i]).sum()
    }
}

/// Draws instances from a [`DistributionModel`].
#[derive(Debug, Clone)]
pub struct Sampler<'a> {
    model: &'a DistributionModel,
    cdf: Vec<f64>,
}

/// Below this marking probability Bernoulli sampling skips geometrically
/// between marked indices instead of flipping one coin per index.
const GEOMETRIC_SKIP_BELOW: f64 = 0.1;

impl Sampler<'_> {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FunctionInstance {
        match &self.model.kind {
            DistributionKind::Explicit { entries, .. } => {
                let u: f64 = rng.random::<f64>() * self.cdf.last().copied().unwrap_or(1.0);
                let idx = self.cdf.partition_point(|&c| c <= u).min(entries.len() - 1);
                entries[idx].0.clone()
            }
            DistributionKind::UniformMarked { m, w } => {
                let chosen = index::sample(rng, *m, *w);
                FunctionInstance::from_marked(*m, chosen.iter()).expect("indices below m")
            }
            DistributionKind::Bernoulli { m, eta } => {
                let (m, eta) = (*m, *eta);
                if eta == 0.0 {
                    return FunctionInstance::zeros(m);
                }
                if eta == 1.0 {
                    return FunctionInstance::ones(m);
                }
                let mut x = FunctionInstance::zeros(m);
                if eta < GEOMETRIC_SKIP_BELOW {
                    let gaps = Geometric::new(eta).expect("eta in (0,1)");
                    let mut pos: u64 = 0;
                    loop {
                        pos = pos.saturating_add(gaps.sample(rng));
                        if pos >= m as u64 {
                            break;
                        }
                        x.set(pos as usize, true);
                        pos += 1;
                    }
                } else {
                    for i in 0..m {
                        if rng.random::<f64>() < eta {
                            x.set(i, true);
                        }
                    }
                }
                x
            }
        }
    }
}

/// `[m] \ S` in ascending order. Rejects out-of-range or repeated indices.
pub fn complement(m: usize, set: &[usize]) -> Result<Vec<usize>> {
    let mut member = vec![false; m];
    for &i in set {
        if i >= m {
            return Err(Error::InvalidInput(format!(
                "index {i} outside domain of size {m}"
            )));
        }
        if member[i] {
            return Err(Error::InvalidInput(format!("index {i} repeated")));
        }
        member[i] = true;
    }
    Ok((0..m).filter(|&i| !member[i]).collect())
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` with every `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum DistributionSpec {
    Explicit { m: usize, entries: Vec<EntrySpec> },
    UniformMarked { m: usize, w: usize },
    Bernoulli { m: usize, eta: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntrySpec {
    x: String,
    p: f64,
}

impl TryFrom<DistributionSpec> for DistributionModel {
    type Error = Error;

    fn try_from(spec: DistributionSpec) -> Result<Self> {
        match spec {
            DistributionSpec::Explicit { m, entries } => {
                let entries = entries
                    .into_iter()
                    .map(|e| Ok((e.x.parse::<FunctionInstance>()?, e.p)))
                    .collect::<Result<Vec<_>>>()?;
                DistributionModel::explicit(m, entries)
            }
            DistributionSpec::UniformMarked { m, w } => DistributionModel::uniform_marked(m, w),
            DistributionSpec::Bernoulli { m, eta } => DistributionModel::bernoulli(m, eta),
        }
    }
}

impl From<DistributionModel> for DistributionSpec {
    fn from(model: DistributionModel) -> Self {
        match model.kind {
            DistributionKind::Explicit { m, entries } => DistributionSpec::Explicit {
                m,
                entries: entries
                    .into_iter()
                    .map(|(x, p)| EntrySpec {
                        x: x.to_string(),
                        p,
                    })
                    .collect(),
            },
            DistributionKind::UniformMarked { m, w } => DistributionSpec::UniformMarked { m, w },
            DistributionKind::Bernoulli { m, eta } => DistributionSpec::Bernoulli { m, eta },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    fn x(s: &str) -> FunctionInstance {
        s.parse().unwrap()
    }

    #[test]
    fn bernoulli_weights() {
        let w = DistributionModel::bernoulli(8, 0.3)
            .unwrap()
            .weight_profile();
        assert!(w.omega.iter().all(|&o| o == 0.3));
        assert_eq!(w.nu, 0.3);
        assert!((w.omega_total - 2.4).abs() < 1e-12);
    }

    #[test]
    fn uniform_weights() {
        let d = DistributionModel::uniform_marked(16, 4).unwrap();
        let w = d.weight_profile();
        assert!(w.omega.iter().all(|&o| o == 0.25));
        assert_eq!(w.nu, 0.25);
        assert_eq!(d.nu(), 0.25);
    }

    #[test]
    fn point_mass_weights() {
        let w = DistributionModel::explicit(3, vec![(x("100"), 1.0)])
            .unwrap()
            .weight_profile();
        assert_eq!(w.omega, vec![1.0, 0.0, 0.0]);
        assert_eq!(w.nu, 1.0);
        assert_eq!(w.omega_total, 1.0);
        assert_eq!(w.argmax_index, 0);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(
            DistributionModel::uniform_marked(37, 1).unwrap().nu(),
            1.0 / 37.0
        );
        assert_eq!(DistributionModel::bernoulli(5, 0.125).unwrap().nu(), 0.125);
        assert_eq!(
            DistributionModel::point_mass(FunctionInstance::zeros(4)).nu(),
            0.0
        );
    }

    #[test]
    fn argmax_ties_go_to_lowest_index() {
        let w = WeightProfile::from_weights(vec![0.1, 0.5, 0.5, 0.2]);
        assert_eq!(w.argmax_index, 1);
    }

    #[test]
    fn explicit_validation() {
        assert!(DistributionModel::explicit(2, vec![(x("10"), 0.5), (x("01"), 0.4)]).is_err());
        assert!(DistributionModel::explicit(2, vec![(x("10"), 0.5), (x("10"), 0.5)]).is_err());
        assert!(DistributionModel::explicit(2, vec![(x("100"), 1.0)]).is_err());
        assert!(DistributionModel::explicit(2, vec![(x("10"), -0.1), (x("01"), 1.1)]).is_err());
        // rounding slack is renormalized away
        let d =
            DistributionModel::explicit(2, vec![(x("10"), 0.5 + 4e-10), (x("01"), 0.5)]).unwrap();
        if let DistributionKind::Explicit { entries, .. } = d.kind() {
            let total: f64 = entries.iter().map(|e| e.1).sum();
            assert!((total - 1.0).abs() < 1e-15);
        }
        assert!(DistributionModel::uniform_marked(3, 4).is_err());
        assert!(DistributionModel::bernoulli(3, 1.5).is_err());
    }

    #[test]
    fn support_examples() {
        let s = DistributionModel::bernoulli(2, 0.5)
            .unwrap()
            .enumerate_support()
            .unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(_, p)| *p == 0.25));

        let s = DistributionModel::uniform_marked(3, 1)
            .unwrap()
            .enumerate_support()
            .unwrap();
        let names: Vec<String> = s.iter().map(|(x, _)| x.to_string()).collect();
        assert_eq!(names, vec!["100", "010", "001"]);
        assert!(s.iter().all(|(_, p)| (*p - 1.0 / 3.0).abs() < 1e-15));

        let s = DistributionModel::bernoulli(3, 0.2)
            .unwrap()
            .enumerate_support()
            .unwrap();
        let p = |name: &str| s.iter().find(|(x, _)| x.to_string() == name).unwrap().1;
        assert!((p("000") - 0.512).abs() < 1e-15);
        assert!((p("111") - 0.008).abs() < 1e-15);
        assert!((p("100") - 0.128).abs() < 1e-15);
    }

    #[test]
    fn support_cap() {
        let err = DistributionModel::bernoulli(21, 0.5)
            .unwrap()
            .enumerate_support();
        assert!(matches!(err, Err(Error::SupportTooLarge { .. })));
        assert!(DistributionModel::uniform_marked(64, 1)
            .unwrap()
            .enumerate_support()
            .is_ok());
    }

    #[test]
    fn induced_examples() {
        let d = DistributionModel::bernoulli(8, 0.1).unwrap();
        assert_eq!(
            d.induced_distribution(&[0, 1]).unwrap(),
            DistributionModel::bernoulli(6, 0.1).unwrap()
        );

        let u = DistributionModel::uniform_marked(10, 1).unwrap();
        let w = u.induced_distribution(&[2, 5, 7]).unwrap().weight_profile();
        assert_eq!(w.m(), 7);
        assert!(w.omega.iter().all(|&o| (o - 1.0 / 7.0).abs() < 1e-15));

        let p = DistributionModel::point_mass(x("111"));
        assert!(matches!(
            p.induced_distribution(&[0]),
            Err(Error::ZeroConditionalMass)
        ));
    }

    #[test]
    fn induced_explicit_reindexes_complement() {
        let d = DistributionModel::explicit(
            4,
            vec![(x("0101"), 0.25), (x("1001"), 0.5), (x("0010"), 0.25)],
        )
        .unwrap();
        let t = d.induced_distribution(&[0]).unwrap();
        let s = t.enumerate_support().unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].0.to_string(), "101");
        assert_eq!(s[1].0.to_string(), "010");
        assert!((s[0].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_bernoulli_samples() {
        let mut rng = substream(1, 0);
        let ones = DistributionModel::bernoulli(4, 1.0).unwrap();
        let zeros = DistributionModel::bernoulli(4, 0.0).unwrap();
        for _ in 0..20 {
            assert_eq!(ones.sample(&mut rng).to_string(), "1111");
            assert_eq!(zeros.sample(&mut rng).to_string(), "0000");
        }
    }

    #[test]
    fn uniform_sample_marginals() {
        let d = DistributionModel::uniform_marked(6, 2).unwrap();
        let sampler = d.sampler();
        let mut rng = substream(42, 0);
        let n = 100_000;
        let mut counts = [0usize; 6];
        for _ in 0..n {
            let x = sampler.sample(&mut rng);
            assert_eq!(x.marked_count(), 2);
            for i in x.marked() {
                counts[i] += 1;
            }
        }
        let p = 1.0 / 3.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for c in counts {
            assert!((c as f64 - n as f64 * p).abs() < 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn json_schema() {
        let d = DistributionModel::from_json(
            r#"{"kind":"explicit","m":4,"entries":[{"x":"0101","p":0.5},{"x":"1000","p":0.5}]}"#,
        )
        .unwrap();
        assert_eq!(d.m(), 4);
        assert_eq!(d.weight_profile().omega, vec![0.5, 0.5, 0.0, 0.5]);
        let u = DistributionModel::from_json(r#"{"kind":"uniform_marked","m":16,"w":4}"#).unwrap();
        assert_eq!(u, DistributionModel::uniform_marked(16, 4).unwrap());
        let b = DistributionModel::from_json(r#"{"kind":"bernoulli","m":32,"eta":0.05}"#).unwrap();
        assert_eq!(DistributionModel::from_json(&b.to_json()).unwrap(), b);
        assert!(DistributionModel::from_json(r#"{"kind":"bernoulli","m":0,"eta":0.05}"#).is_err());
        assert!(DistributionModel::from_json(r#"{"kind":"bernoulli","m":3,"eta":2}"#).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
        assert_eq!(binomial_u128(64, 3), 41664);
    }
}
