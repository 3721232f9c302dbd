//! Step-indexed oracle functionals, their running times, and domination
//! witnesses over clopen classes of oracles.
//!
//! A [`Functional`] is evaluated on a finite oracle prefix, an input and a
//! step budget. It reports convergence only when both the convergence step
//! and the value are within the budget, and the same `(value, step)` is
//! reported at every larger budget. The running time
//! `ϕ^X(n) = μs ∀m<n Φ^X_s(m)↓ ≤ s` is therefore the maximum of
//! `max(value, step)` over inputs below `n`.

mod constructions;
mod running;
mod table;
mod xi;

pub use constructions::{join, ApproxTotality, StagedOracle, StagedTable, TotalityFromPredicate};
pub use running::{
    class_from_witness, dominates_on, phi_profile, running_time, witness_from_class, Domination,
    RecoveredClass, RunningTime, Undetermined, Witness,
};
pub use table::{TableFunctional, TableRow};
pub use xi::{decode_triple, encode_triple, SearchOutcome, StabilitySearch, XiFunctional};

use std::fmt;

use thiserror::Error;

use crate::bitspace::{BitString, BitspaceError};

/// Result of one bounded evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eval {
    /// `value ≤ budget` and `step ≤ budget`.
    Converged { value: u64, step: u64 },
    /// Not converged within the budget.
    Pending,
    /// The computation needs oracle bit `position`, past the given prefix.
    OracleTooShort { position: usize },
}

pub trait Functional: Send + Sync {
    fn eval(&self, oracle: &[bool], input: u64, budget: u64) -> Eval;

    /// Name and parameters.
    fn describe(&self) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error(
        "BudgetInsufficient: branch {branch} input {input} is undetermined within budget {budget}"
    )]
    BudgetInsufficient {
        branch: BitString,
        input: u64,
        budget: u64,
    },
    #[error("OracleTooShort: branch {branch} input {input} queries position {position}")]
    OracleTooShort {
        branch: BitString,
        input: u64,
        position: usize,
    },
    #[error("StageBoundExceeded: the search passed stage {bound}")]
    StageBoundExceeded { bound: u64 },
    #[error("InvalidRow: {0}")]
    InvalidRow(String),
    #[error(transparent)]
    Bitspace(#[from] BitspaceError),
}

/// `f(0), ..., f(N)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrowthFunction(pub Vec<u64>);

impl GrowthFunction {
    pub fn constant(value: u64, max_input: u64) -> Self {
        Self(vec![value; max_input as usize + 1])
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.0.get(n as usize).copied()
    }

    /// Largest input `N` in the domain; `None` when empty.
    pub fn max_input(&self) -> Option<u64> {
        self.0.len().checked_sub(1).map(|n| n as u64)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GrowthFunction {
    /// Witness-file lines `n f(n)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in self.0.iter().enumerate() {
            writeln!(f, "{n} {v}")?;
        }
        Ok(())
    }
}

/// Run `f` over `items`, in parallel on `jobs` threads when asked, with
/// results in input order.
pub(crate) fn map_ordered<T, R>(
    items: &[T],
    jobs: Option<usize>,
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    use rayon::prelude::*;
    match jobs {
        None | Some(1) => items.iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}
