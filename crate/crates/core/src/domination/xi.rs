use super::{Eval, Functional};
use crate::bitspace::BitString;
use crate::machine::{HaltingTimeline, Outcome, UniversalMachine};

/// Number of triples of weight below `w`.
fn below_weight(w: u64) -> u128 {
    let w = w as u128;
    w * (w + 1) * (w + 2) / 6
}

/// Position of `(n, j, s)` when triples are listed by weight `n + j + s`,
/// then lexicographically.
pub fn encode_triple(n: u64, j: u64, s: u64) -> u128 {
    let w = n + j + s;
    let before: u128 = (0..n).map(|k| (w - k + 1) as u128).sum();
    below_weight(w) + before + j as u128
}

/// Inverse of [`encode_triple`].
pub fn decode_triple(index: u128) -> (u64, u64, u64) {
    let mut w = 0u64;
    while below_weight(w + 1) <= index {
        w += 1;
    }
    let mut rest = index - below_weight(w);
    let mut n = 0u64;
    while rest > (w - n) as u128 {
        rest -= (w - n + 1) as u128;
        n += 1;
    }
    let j = rest as u64;
    (n, j, w - n - j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    Stage(u64),
    /// Every stage up to the bound still matches.
    Undetermined,
    OracleTooShort {
        position: usize,
    },
}

/// The least stage `t ≥ s` at which `X` no longer looks compressible by
/// `σ`: not both `U^{0'[t]}_t(σ) = X↾n` and `0'[t]↾υ = 0'[t-1]↾υ`, with `υ`
/// the oracle use of that run.
#[derive(Debug, Clone)]
pub struct StabilitySearch {
    machine: UniversalMachine,
    timeline: HaltingTimeline,
    constant: usize,
    stage_bound: u64,
}

impl StabilitySearch {
    pub fn new(machine: UniversalMachine, constant: usize, stage_bound: u64) -> Self {
        let timeline = HaltingTimeline::new(&machine, stage_bound);
        Self {
            machine,
            timeline,
            constant,
            stage_bound,
        }
    }

    pub fn machine(&self) -> &UniversalMachine {
        &self.machine
    }

    pub fn timeline(&self) -> &HaltingTimeline {
        &self.timeline
    }

    pub fn constant(&self) -> usize {
        self.constant
    }

    pub fn stage_bound(&self) -> u64 {
        self.stage_bound
    }

    /// Whether stage `t` still shows `σ` as a stable description of `target`.
    pub fn matches_at(&self, target: &[bool], sigma: &BitString, t: u64) -> bool {
        let oracle = self.timeline.oracle(t, t as usize + 1);
        match self.machine.run(sigma, &oracle, t) {
            Outcome::Halted {
                output, oracle_use, ..
            } => output[..] == *target && (t == 0 || self.timeline.stable_below(t, oracle_use)),
            _ => false,
        }
    }

    fn search_to(
        &self,
        x: &[bool],
        n: usize,
        sigma: &BitString,
        s: u64,
        limit: u64,
    ) -> SearchOutcome {
        if sigma.len() + self.constant >= n {
            return if s <= limit {
                SearchOutcome::Stage(s)
            } else {
                SearchOutcome::Undetermined
            };
        }
        if x.len() < n {
            return SearchOutcome::OracleTooShort { position: x.len() };
        }
        let target = &x[..n];
        (s..=limit)
            .find(|&t| !self.matches_at(target, sigma, t))
            .map_or(SearchOutcome::Undetermined, SearchOutcome::Stage)
    }

    /// `Ξ_c^X(n, σ, s)` up to the stage bound.
    pub fn search(&self, x: &[bool], n: usize, sigma: &BitString, s: u64) -> SearchOutcome {
        self.search_to(x, n, sigma, s, self.stage_bound)
    }
}

/// [`StabilitySearch`] as a single-input functional, the input indexing
/// `(n, j, s)` through [`decode_triple`] and `σ` the `j`-th word in
/// length-lexicographic order. Converges at step `t` with value `t`.
#[derive(Debug, Clone)]
pub struct XiFunctional(pub StabilitySearch);

impl Functional for XiFunctional {
    fn eval(&self, oracle: &[bool], input: u64, budget: u64) -> Eval {
        let (n, j, s) = decode_triple(input as u128);
        let sigma = BitString::from_index(j);
        let limit = budget.min(self.0.stage_bound);
        match self.0.search_to(oracle, n as usize, &sigma, s, limit) {
            SearchOutcome::Stage(t) => Eval::Converged { value: t, step: t },
            SearchOutcome::Undetermined => Eval::Pending,
            SearchOutcome::OracleTooShort { position } => Eval::OracleTooShort { position },
        }
    }

    fn describe(&self) -> String {
        format!(
            "xi(c = {}, stage bound {})",
            self.0.constant, self.0.stage_bound
        )
    }
}
