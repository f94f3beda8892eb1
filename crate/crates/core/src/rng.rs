//! Seeded random streams with counter-based splitting.
//!
//! Monte Carlo work is cut into fixed-size blocks of trials; block `b` always
//! draws from ChaCha stream `b` of the user seed, so results do not depend on
//! how many threads execute the blocks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub type StreamRng = ChaCha8Rng;

/// Trials per independently seeded block.
pub const BLOCK_TRIALS: usize = 4096;

/// The generator for sub-stream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs `trials` trials in blocks of [`BLOCK_TRIALS`], calling `block` once per
/// block with that block's generator and trial count. Outputs come back in
/// block order.
pub fn run_blocks<T, F>(seed: u64, trials: usize, block: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut StreamRng, usize) -> T + Sync,
{
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK_TRIALS.min(trials - b * BLOCK_TRIALS);
            let mut rng = substream(seed, b as u64);
            block(&mut rng, n)
        })
        .collect()
}

/// How a success probability is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulationMode {
    /// Exact expectation over the distribution.
    Exact,
    /// Seeded Monte Carlo estimate.
    MonteCarlo { trials: usize, seed: u64 },
}

/// Running sums for a mean and its standard error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeanAccumulator {
    pub count: usize,
    pub sum: f64,
    pub sum_sq: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, v: f64) {
        self.count += 1;
        self.sum += v;
        self.sum_sq += v * v;
    }

    pub fn merge(mut self, other: &MeanAccumulator) -> Self {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }

    /// Standard error of the mean, using the unbiased sample variance.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean = self.mean();
        let var = ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }
}
