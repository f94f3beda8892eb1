//! Query budgets and orderings of classical and quantum queries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numbers of classical (`τc`) and quantum (`τq`) queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QueryBudget {
    pub tau_c: usize,
    pub tau_q: usize,
}

impl QueryBudget {
    pub fn new(tau_c: usize, tau_q: usize) -> Self {
        QueryBudget { tau_c, tau_q }
    }

    /// `τ = τc + τq`.
    pub fn total(&self) -> usize {
        self.tau_c + self.tau_q
    }

    /// `2√τc + c_q·τq + 1`, the common factor of the hardness bounds.
    pub fn query_factor(&self, quantum_coefficient: f64) -> f64 {
        2.0 * (self.tau_c as f64).sqrt() + quantum_coefficient * self.tau_q as f64 + 1.0
    }
}

/// One query slot of a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QueryKind {
    Classical,
    Quantum,
}

/// Ordered sequence of query kinds `A = [x_1, …, x_τ]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrategySchedule {
    slots: Vec<QueryKind>,
}

impl StrategySchedule {
    pub fn new(slots: Vec<QueryKind>) -> Self {
        StrategySchedule { slots }
    }

    /// `[Classical^τc, Quantum^τq]`: all classical queries first.
    pub fn classical_first(budget: QueryBudget) -> Self {
        let mut slots = vec![QueryKind::Classical; budget.tau_c];
        slots.extend(std::iter::repeat_n(QueryKind::Quantum, budget.tau_q));
        StrategySchedule { slots }
    }

    /// Schedule of length `tau` with classical queries at `classical_positions`.
    pub fn with_classical_at(tau: usize, classical_positions: &[usize]) -> Self {
        let mut slots = vec![QueryKind::Quantum; tau];
        for &p in classical_positions {
            slots[p] = QueryKind::Classical;
        }
        StrategySchedule { slots }
    }

    pub fn slots(&self) -> &[QueryKind] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn tau_c(&self) -> usize {
        self.slots
            .iter()
            .filter(|k| **k == QueryKind::Classical)
            .count()
    }

    pub fn tau_q(&self) -> usize {
        self.len() - self.tau_c()
    }

    pub fn budget(&self) -> QueryBudget {
        QueryBudget::new(self.tau_c(), self.tau_q())
    }

    /// True when no quantum slot precedes a classical one.
    pub fn is_classical_first(&self) -> bool {
        self.slots
            .windows(2)
            .all(|w| !(w[0] == QueryKind::Quantum && w[1] == QueryKind::Classical))
    }

    /// The schedule with slots `i` and `i + 1` exchanged.
    pub fn swapped(&self, i: usize) -> Self {
        let mut slots = self.slots.clone();
        slots.swap(i, i + 1);
        StrategySchedule { slots }
    }
}

/// Written as a string of `C` and `Q`, e.g. `CCQ`.
impl fmt::Display for StrategySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.slots {
            f.write_str(match k {
                QueryKind::Classical => "C",
                QueryKind::Quantum => "Q",
            })?;
        }
        Ok(())
    }
}

impl FromStr for StrategySchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'C' => Ok(QueryKind::Classical),
                'Q' => Ok(QueryKind::Quantum),
                other => Err(Error::InvalidInput(format!(
                    "schedule contains '{other}'; use C and Q"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(StrategySchedule::new)
    }
}
