//! Fourier analysis of functions on `{−1,1}^n` and the classical failure
//! probability of probing a fixed index set.
//!
//! Points of `{−1,1}^n` are stored by index: bit `j` of the index encodes
//! coordinate `z_{j+1}`, with bit value 0 meaning `+1`. A truth table
//! `x ∈ {0,1}^m` maps to `z = 2x − 1`, so `x_j = 1` is encoding bit 0.
//!
//! For a probe set `S` of size `c`, the failure indicator is
//! `g̃^S(z) = 2^{−c} Π_{j∈S}(1 − z_j)`; its coefficients vanish outside
//! subsets of `S`, which turns `Pr^S[fail] = 2^m ⟨d̃, g̃^S⟩` into
//! `Σ_{T⊆S} 2^{m−c} (−1)^{|T|} d̂(T)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::{binomial_u128, complement, for_each_combination, DistributionModel};
use crate::error::{Error, Result};
use crate::hybrid::classical_success_prob;

/// Largest arity accepted by [`fourier_expand`].
pub const MAX_ARITY: usize = 16;

/// Largest number of probe sets [`optimal_classical_strategy`] compares.
pub const STRATEGY_CAP: u128 = 1_000_000;

/// A real-valued function on `{−1,1}^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlusMinusFunction {
    n: usize,
    values: Vec<f64>,
}

impl PlusMinusFunction {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge { n, cap: MAX_ARITY });
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(PlusMinusFunction { n, values })
    }

    /// Tabulates `f` at every point index.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::ArityTooLarge { n, cap: MAX_ARITY });
        }
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    /// The monomial `z^T = Π_{i∈T} z_i` for subset mask `t`.
    pub fn monomial(n: usize, t: usize) -> Result<Self> {
        Self::from_fn(n, |z| character(t, z))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `Π_{i∈T} z_i` at point index `z`, where `T` is a subset mask.
#[inline]
pub fn character(t: usize, z: usize) -> f64 {
    if (t & z).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Coefficients `f̂(T)` indexed by subset mask.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierTable {
    pub n: usize,
    pub coefficients: Vec<f64>,
}

impl FourierTable {
    /// `Σ_T f̂(T)·z^T` at point index `z`.
    pub fn evaluate(&self, z: usize) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(t, c)| c * character(t, z))
            .sum()
    }

    /// `Σ_T f̂(T)ĝ(T)`.
    pub fn dot(&self, other: &FourierTable) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a * b)
            .sum())
    }
}

/// In-place unnormalized Walsh–Hadamard transform.
fn walsh_hadamard(values: &mut [f64]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// `f̂(T) = 2^{−n} Σ_z f(z) z^T` by the fast Walsh–Hadamard transform.
pub fn fourier_expand(f: &PlusMinusFunction) -> Result<FourierTable> {
    if f.n > MAX_ARITY {
        return Err(Error::ArityTooLarge {
            n: f.n,
            cap: MAX_ARITY,
        });
    }
    let mut coefficients = f.values.clone();
    walsh_hadamard(&mut coefficients);
    let scale = (-(f.n as f64)).exp2();
    coefficients.iter_mut().for_each(|c| *c *= scale);
    Ok(FourierTable {
        n: f.n,
        coefficients,
    })
}

/// [`fourier_expand`] by the direct `O(4^n)` double sum.
pub fn fourier_expand_direct(f: &PlusMinusFunction) -> Result<FourierTable> {
    if f.n > MAX_ARITY {
        return Err(Error::ArityTooLarge {
            n: f.n,
            cap: MAX_ARITY,
        });
    }
    let size = 1usize << f.n;
    let scale = (-(f.n as f64)).exp2();
    let coefficients = (0..size)
        .map(|t| {
            scale
                * f.values
                    .iter()
                    .enumerate()
                    .map(|(z, v)| v * character(t, z))
                    .sum::<f64>()
        })
        .collect();
    Ok(FourierTable {
        n: f.n,
        coefficients,
    })
}

/// `⟨f, g⟩ = 2^{−n} Σ_z f(z)g(z)`.
pub fn inner_product(f: &PlusMinusFunction, g: &PlusMinusFunction) -> Result<f64> {
    if f.n != g.n {
        return Err(Error::ArityMismatch {
            left: f.n,
            right: g.n,
        });
    }
    let sum: f64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(sum * (-(f.n as f64)).exp2())
}

/// Point index of `z = 2x − 1` for a truth table given as a mask over `m` bits.
#[inline]
fn point_of_mask(m: usize, x_mask: u64) -> usize {
    (!x_mask as usize) & ((1usize << m) - 1)
}

/// `d̃(z) = d_x` over `{−1,1}^m`.
pub fn distribution_function(dist: &DistributionModel) -> Result<PlusMinusFunction> {
    let m = dist.m();
    if m > MAX_ARITY {
        return Err(Error::SupportTooLarge {
            size: 1u128 << m.min(127),
            cap: 1u128 << MAX_ARITY,
        });
    }
    let mut values = vec![0.0; 1 << m];
    for (x, p) in dist.enumerate_support()? {
        values[point_of_mask(m, x.mask())] += p;
    }
    PlusMinusFunction::new(m, values)
}

/// `g̃^S(z) = 2^{−|S|} Π_{j∈S}(1 − z_j)`: 1 exactly when every probed
/// coordinate is unmarked.
pub fn failure_indicator(m: usize, probed: &[usize]) -> Result<PlusMinusFunction> {
    complement(m, probed)?;
    let s_mask = subset_mask(probed);
    // z_j = −1 (unmarked) is encoding bit 1
    PlusMinusFunction::from_fn(m, |z| if z & s_mask == s_mask { 1.0 } else { 0.0 })
}

fn subset_mask(set: &[usize]) -> usize {
    set.iter().fold(0, |acc, &i| acc | (1 << i))
}

/// Classical failure `Pr_{x←D}[x_i = 0 ∀i ∈ S]` via the Fourier coefficients of
/// `d̃` on subsets of `S`. The empty probe set fails with probability 1.
pub fn classical_fail_fourier(dist: &DistributionModel, probed: &[usize]) -> Result<f64> {
    Ok(order_contributions(dist, probed)?.iter().sum())
}

/// The failure sum split by `|T|`: entry `k` is
/// `Σ_{T⊆S, |T|=k} 2^{m−c}(−1)^k d̂(T)`.
pub fn order_contributions(dist: &DistributionModel, probed: &[usize]) -> Result<Vec<f64>> {
    let m = dist.m();
    complement(m, probed)?;
    let d_hat = fourier_expand(&distribution_function(dist)?)?;
    let c = probed.len();
    let s_mask = subset_mask(probed);
    let scale = ((m - c) as f64).exp2();
    let mut by_order = vec![0.0; c + 1];
    // iterate over submasks of S
    let mut t = s_mask;
    loop {
        let k = t.count_ones() as usize;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        by_order[k] += scale * sign * d_hat.coefficients[t];
        if t == 0 {
            break;
        }
        t = (t - 1) & s_mask;
    }
    Ok(by_order)
}

/// The unrestricted sum `2^m Σ_{T⊆[m]} d̂(T)ĝ^S(T)` over all subsets.
pub fn classical_fail_fourier_full(dist: &DistributionModel, probed: &[usize]) -> Result<f64> {
    let d_hat = fourier_expand(&distribution_function(dist)?)?;
    let g_hat = fourier_expand(&failure_indicator(dist.m(), probed)?)?;
    Ok((dist.m() as f64).exp2() * d_hat.dot(&g_hat)?)
}

/// Best probe set of a given size and the spread of failure over all sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyReport {
    /// Minimizing set (lexicographically first among ties).
    pub set: Vec<usize>,
    pub fail_prob: f64,
    pub success_prob: f64,
    pub strategies_checked: usize,
    /// `max_S fail − min_S fail`.
    pub max_deviation: f64,
}

/// Minimizes failure over every `S ⊆ [m]` with `|S| = tau_c`.
pub fn optimal_classical_strategy(
    dist: &DistributionModel,
    tau_c: usize,
) -> Result<StrategyReport> {
    let m = dist.m();
    if tau_c > m {
        return Err(Error::InvalidInput(format!(
            "tau_c = {tau_c} exceeds domain size m = {m}"
        )));
    }
    let count = binomial_u128(m, tau_c);
    if count > STRATEGY_CAP {
        return Err(Error::TooManyStrategies {
            count,
            cap: STRATEGY_CAP,
        });
    }
    let mut sets = Vec::with_capacity(count as usize);
    for_each_combination(m, tau_c, |s| sets.push(s.to_vec()));
    let fails = sets
        .par_iter()
        .map(|s| {
            if s.is_empty() {
                Ok(1.0)
            } else {
                classical_success_prob(dist, s).map(|p| 1.0 - p)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, &f) in fails.iter().enumerate() {
        if f < fails[best] {
            best = i;
        }
        lo = lo.min(f);
        hi = hi.max(f);
    }
    Ok(StrategyReport {
        set: sets.swap_remove(best),
        fail_prob: fails[best],
        success_prob: 1.0 - fails[best],
        strategies_checked: fails.len(),
        max_deviation: hi - lo,
    })
}
