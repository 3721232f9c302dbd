use super::{DominationError, Eval, Functional};
use crate::machine::HaltingTimeline;

/// A stage-indexed approximation `A_t` of an oracle. Every stage is a total
/// bit sequence; positions not yet enumerated read 0.
pub trait StagedOracle: Send + Sync {
    fn bit(&self, stage: u64, index: usize) -> bool;
}

/// `A_t` given explicitly; stages past the last one repeat it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagedTable(pub Vec<Vec<bool>>);

impl StagedOracle for StagedTable {
    fn bit(&self, stage: u64, index: usize) -> bool {
        let Some(last) = self.0.len().checked_sub(1) else {
            return false;
        };
        let row = &self.0[(stage as usize).min(last)];
        row.get(index).copied().unwrap_or(false)
    }
}

/// `0'[t]`, frozen past the horizon.
impl StagedOracle for HaltingTimeline {
    fn bit(&self, stage: u64, index: usize) -> bool {
        HaltingTimeline::bit(self, index as u64, stage.min(self.horizon()))
    }
}

/// `X ⊕ A`: `X` on even positions, `A` on odd ones, for `2|X|` positions.
pub fn join(x: &[bool], a: impl Fn(usize) -> bool) -> Vec<bool> {
    x.iter().enumerate().flat_map(|(i, &b)| [b, a(i)]).collect()
}

/// `Φ^X(s) = μt > s. Ψ_t^{X ⊕ A_t}(0)↑`, searched up to a stage bound.
///
/// Converges at step `t` with value `t`.
pub struct ApproxTotality<P, A> {
    pub psi: P,
    pub approx: A,
    pub stage_bound: u64,
}

impl<P: Functional, A: StagedOracle> ApproxTotality<P, A> {
    pub fn new(psi: P, approx: A, stage_bound: u64) -> Self {
        Self {
            psi,
            approx,
            stage_bound,
        }
    }

    /// Evaluation with the budget set to the stage bound; a search that runs
    /// past it is an error rather than [`Eval::Pending`].
    pub fn search(&self, oracle: &[bool], input: u64) -> Result<Eval, DominationError> {
        match self.eval(oracle, input, self.stage_bound) {
            Eval::Pending => Err(DominationError::StageBoundExceeded {
                bound: self.stage_bound,
            }),
            other => Ok(other),
        }
    }
}

impl<P: Functional, A: StagedOracle> Functional for ApproxTotality<P, A> {
    fn eval(&self, oracle: &[bool], input: u64, budget: u64) -> Eval {
        let limit = budget.min(self.stage_bound);
        for t in input.saturating_add(1)..=limit {
            let joined = join(oracle, |i| self.approx.bit(t, i));
            match self.psi.eval(&joined, 0, t) {
                Eval::Converged { .. } => {}
                Eval::Pending => return Eval::Converged { value: t, step: t },
                Eval::OracleTooShort { position } => {
                    return Eval::OracleTooShort {
                        position: position / 2,
                    }
                }
            }
        }
        Eval::Pending
    }

    fn describe(&self) -> String {
        format!(
            "approx-totality(psi = {}, stage bound {})",
            self.psi.describe(),
            self.stage_bound
        )
    }
}

/// Decides `R(y, s, A, X)` on finite prefixes; `None` when `X` is too short.
pub type Predicate = dyn Fn(u64, u64, &[bool], &[bool]) -> Option<bool> + Send + Sync;

/// `Φ^{A ⊕ X}(y) = μs R(y, s, A, X)` for a fixed `A`.
///
/// Converges at step `s` with value `s`.
pub struct TotalityFromPredicate {
    name: String,
    a: Vec<bool>,
    relation: Box<Predicate>,
}

impl TotalityFromPredicate {
    pub fn new(
        name: impl Into<String>,
        a: Vec<bool>,
        relation: impl Fn(u64, u64, &[bool], &[bool]) -> Option<bool> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            a,
            relation: Box::new(relation),
        }
    }
}

impl Functional for TotalityFromPredicate {
    fn eval(&self, oracle: &[bool], input: u64, budget: u64) -> Eval {
        for s in 0..=budget {
            match (self.relation)(input, s, &self.a, oracle) {
                Some(true) => return Eval::Converged { value: s, step: s },
                Some(false) => {}
                None => {
                    return Eval::OracleTooShort {
                        position: oracle.len(),
                    }
                }
            }
        }
        Eval::Pending
    }

    fn describe(&self) -> String {
        format!("predicate-totality({})", self.name)
    }
}
