use std::collections::BTreeMap;
use std::fmt;

use super::MachineError;
use crate::bitspace::{BitString, CodeSet, DepthCap};
use crate::kc::{KraftChaitin, Request};
use crate::Dyadic;

/// A finite prefix-free machine: program `τ` outputs `σ`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MachineTable {
    entries: BTreeMap<BitString, BitString>,
}

impl MachineTable {
    pub fn new(
        entries: impl IntoIterator<Item = (BitString, BitString)>,
        cap: DepthCap,
    ) -> Result<Self, MachineError> {
        let entries: BTreeMap<BitString, BitString> = entries.into_iter().collect();
        for out in entries.values() {
            cap.check(out.len())?;
        }
        CodeSet::new(entries.keys().cloned(), cap)?;
        Ok(Self { entries })
    }

    pub(crate) fn from_prefix_free(
        entries: impl IntoIterator<Item = (BitString, BitString)>,
    ) -> Self {
        Self {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, program: &BitString) -> Option<&BitString> {
        self.entries.get(program)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical program order.
    pub fn iter(&self) -> impl Iterator<Item = (&BitString, &BitString)> + '_ {
        self.entries.iter()
    }

    pub fn domain(&self) -> CodeSet {
        CodeSet::from_prefix_free(self.entries.keys().cloned().collect())
    }

    /// Shortest program with the given output (leftmost on ties).
    pub fn shortest_program(&self, output: &BitString) -> Option<&BitString> {
        self.entries
            .iter()
            .filter(|(_, o)| *o == output)
            .map(|(p, _)| p)
            .next()
    }

    /// `K_M(σ)`: the length of the shortest program for `σ`.
    pub fn complexity(&self, output: &BitString) -> Option<usize> {
        self.shortest_program(output).map(BitString::len)
    }

    pub fn kraft_sum(&self) -> Dyadic {
        self.entries
            .keys()
            .map(|p| Dyadic::pow2_neg(p.len() as u32))
            .sum()
    }
}

impl fmt::Debug for MachineTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl fmt::Display for MachineTable {
    /// Lines `τ σ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, o) in &self.entries {
            writeln!(f, "{p} {o}")?;
        }
        Ok(())
    }
}

/// Information content measure: `σ ↦ K̂(σ)` with `Σ 2^-K̂(σ) ≤ 1`.
///
/// Several entries for one word collapse to the smallest exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Icm {
    entries: BTreeMap<BitString, u32>,
}

impl Icm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: BitString, k: u32) {
        self.entries
            .entry(word)
            .and_modify(|old| *old = (*old).min(k))
            .or_insert(k);
    }

    pub fn get(&self, word: &BitString) -> Option<u32> {
        self.entries.get(word).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitString, u32)> + '_ {
        self.entries.iter().map(|(w, &k)| (w, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> Dyadic {
        self.entries.values().map(|&k| Dyadic::pow2_neg(k)).sum()
    }
}

impl fmt::Display for Icm {
    /// Lines `σ k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, k) in &self.entries {
            writeln!(f, "{w} {k}")?;
        }
        Ok(())
    }
}

impl FromIterator<(BitString, u32)> for Icm {
    fn from_iter<T: IntoIterator<Item = (BitString, u32)>>(iter: T) -> Self {
        let mut icm = Icm::new();
        for (w, k) in iter {
            icm.insert(w, k);
        }
        icm
    }
}

/// Realize an information content measure as a machine with
/// `K_table(σ) ≤ K̂(σ)`, one Kraft-Chaitin request `(K̂(σ), σ)` per word in
/// canonical order.
pub fn icm_to_machine(icm: &Icm, cap: DepthCap) -> Result<MachineTable, MachineError> {
    let mut kc = KraftChaitin::with_cap(cap);
    for (word, k) in icm.iter() {
        kc.request(Request::new(k as usize, word.clone()))
            .map_err(|source| MachineError::Request {
                entry: word.clone(),
                source,
            })?;
    }
    Ok(kc.to_machine())
}
