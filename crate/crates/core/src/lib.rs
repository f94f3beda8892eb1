//! Distributional search over Boolean oracles under hybrid classical-quantum
//! query budgets.
//!
//! The crate bundles
//!
//! * distributions over truth tables and their hardness parameter `ν_D`
//!   ([`distribution`]),
//! * an exact simulator of the weight-aware Grover iteration
//!   ([`quantum_sim`]) and the two-stage hybrid search algorithm ([`hybrid`]),
//! * hardness bounds and progress-measure recurrences ([`hardness`]),
//! * a numerical verifier for the per-query progress lemmas ([`progress`]),
//! * Boolean Fourier tools for classical failure probabilities ([`fourier`]),
//! * hash and proof-of-work security calculators ([`crypto`]),
//! * the command implementations behind the `dsearch` binary ([`cli`]).

pub mod bits;
pub mod budget;
pub mod cli;
pub mod crypto;
pub mod distribution;
pub mod error;
pub mod fourier;
pub mod hardness;
pub mod hybrid;
pub mod progress;
pub mod quantum_sim;
pub mod rng;

pub use bits::FunctionInstance;
pub use budget::{QueryBudget, QueryKind, StrategySchedule};
pub use distribution::{DistributionKind, DistributionModel, WeightProfile};
pub use error::{Error, Result};
pub use rng::SimulationMode;
