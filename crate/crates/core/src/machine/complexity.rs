use super::{MachineError, Outcome, UniversalMachine};
use crate::bitspace::{BitString, CodeSet, DepthCap, OpenSet};

impl UniversalMachine {
    /// Time-bounded complexity: the length of the shortest program that
    /// halts within `budget` steps with output `word`; `None` for ∞.
    ///
    /// Every slot has a single cheapest program for a given output, so
    /// checking one candidate per slot is exact.
    pub fn bounded_complexity(
        &self,
        word: &BitString,
        budget: u64,
        oracle: &[bool],
    ) -> Option<usize> {
        self.catalog()
            .iter()
            .enumerate()
            .filter_map(|(i, sub)| {
                let payload = sub.payload_for(word, oracle)?;
                let program = UniversalMachine::program(i, &payload);
                match self.run(&program, oracle, budget) {
                    Outcome::Halted { output, .. } if &output == word => Some(program.len()),
                    _ => None,
                }
            })
            .min()
    }

    /// Stage-`t` approximation of the universal test level
    /// `S_n = {X : ∃m K(X↾m) ≤ m - n}`: the union of `[ρ]` over `|ρ| ≤ t`
    /// with a program of length at most `|ρ| - n` halting within `t` steps.
    ///
    /// Negative levels are accepted; they arise when a registered constant
    /// exceeds the test level being embedded.
    pub fn universal_test_level(
        &self,
        level: i64,
        stage: u64,
        oracle: &[bool],
        cap: DepthCap,
    ) -> Result<OpenSet, MachineError> {
        let max_output = usize::try_from(stage).unwrap_or(usize::MAX);
        let mut raw = Vec::new();
        for (i, sub) in self.catalog().iter().enumerate() {
            let slack = (i as i64 + 1) + level;
            for (payload, output) in sub.compressing(oracle, max_output, slack) {
                let program = UniversalMachine::program(i, &payload);
                if program.len() as i64 > output.len() as i64 - level {
                    continue;
                }
                if let Outcome::Halted { output: got, .. } = self.run(&program, oracle, stage) {
                    if got == output {
                        raw.push(output);
                    }
                }
            }
        }
        let code = CodeSet::normalize(&raw, DepthCap(usize::MAX))?;
        cap.check(code.depth())?;
        Ok(OpenSet::new(code))
    }
}
