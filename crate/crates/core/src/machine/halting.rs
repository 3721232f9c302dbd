//! Dovetailed halting-set approximation of the catalog machine, standing in
//! for `0'`.
//!
//! At stage `t` every program with length-lexicographic index below `t` is
//! run for `t` steps without an oracle. The approximation `0'[t]` is the bit
//! sequence of which of those programs have halted; positions `≥ t` read 0.

use std::fmt;

use super::{Outcome, UniversalMachine};
use crate::bitspace::BitString;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaltingApprox {
    stage: u64,
    bits: Vec<bool>,
}

impl HaltingApprox {
    pub fn stage(&self) -> u64 {
        self.stage
    }

    /// Bit `i` of `0'[t]`.
    pub fn bit(&self, index: u64) -> bool {
        self.bits.get(index as usize).copied().unwrap_or(false)
    }

    /// Enumerated part, one bit per program index below the stage.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `0'[t]↾len`, zero-padded past the enumerated part.
    pub fn oracle(&self, len: usize) -> Vec<bool> {
        (0..len as u64).map(|i| self.bit(i)).collect()
    }

    pub fn halted(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
    }

    pub fn subset_of(&self, later: &HaltingApprox) -> bool {
        self.halted().all(|i| later.bit(i))
    }
}

impl UniversalMachine {
    /// `0'[t]` by direct simulation.
    pub fn halting_approx(&self, stage: u64) -> HaltingApprox {
        let bits = (0..stage)
            .map(|i| {
                let program = BitString::from_index(i);
                self.run(&program, &[], stage).is_halted()
            })
            .collect();
        HaltingApprox { stage, bits }
    }
}

/// For every program index below a horizon, the first stage at which it
/// enters the halting approximation.
#[derive(Debug, Clone)]
pub struct HaltingTimeline {
    horizon: u64,
    entry: Vec<Option<u64>>,
}

impl HaltingTimeline {
    /// Covers stages `0..=horizon`.
    pub fn new(machine: &UniversalMachine, horizon: u64) -> Self {
        let entry = (0..horizon)
            .map(|i| {
                let program = BitString::from_index(i);
                match machine.run(&program, &[], horizon) {
                    // needs index < t and steps <= t
                    Outcome::Halted { steps, .. } => Some((i + 1).max(steps)),
                    _ => None,
                }
            })
            .collect();
        Self { horizon, entry }
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// Stage at which program `index` enters, if it does by the horizon.
    pub fn entry_stage(&self, index: u64) -> Option<u64> {
        self.entry.get(index as usize).copied().flatten()
    }

    /// Bit `index` of `0'[stage]`.
    pub fn bit(&self, index: u64, stage: u64) -> bool {
        debug_assert!(stage <= self.horizon);
        self.entry_stage(index).is_some_and(|s| s <= stage)
    }

    /// `0'[stage]↾len`.
    pub fn oracle(&self, stage: u64, len: usize) -> Vec<bool> {
        (0..len as u64).map(|i| self.bit(i, stage)).collect()
    }

    pub fn approx(&self, stage: u64) -> HaltingApprox {
        HaltingApprox {
            stage,
            bits: (0..stage).map(|i| self.bit(i, stage)).collect(),
        }
    }

    /// Whether `0'[stage]` and `0'[stage - 1]` agree below `len`.
    pub fn stable_below(&self, stage: u64, len: usize) -> bool {
        (0..len as u64).all(|i| self.entry_stage(i) != Some(stage))
    }

    /// Last stage at which some position below `len` changed; 0 if none did.
    pub fn last_change_below(&self, len: usize) -> u64 {
        (0..len as u64)
            .filter_map(|i| self.entry_stage(i))
            .max()
            .unwrap_or(0)
    }

    /// Dump lines `index program stage_halted` for programs halted by `stage`.
    pub fn dump(&self, stage: u64) -> HaltingDump<'_> {
        HaltingDump {
            timeline: self,
            stage,
        }
    }
}

pub struct HaltingDump<'a> {
    timeline: &'a HaltingTimeline,
    stage: u64,
}

impl fmt::Display for HaltingDump<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.stage.min(self.timeline.horizon) {
            if let Some(s) = self.timeline.entry_stage(i).filter(|&s| s <= self.stage) {
                writeln!(f, "{i} {} {s}", BitString::from_index(i))?;
            }
        }
        Ok(())
    }
}
