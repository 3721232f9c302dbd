//! Online Kraft-Chaitin code assignment.
//!
//! Requests `(n_k, σ_k)` arrive one at a time. Each accepted request gets a
//! code word `τ_k` of length exactly `n_k`, incomparable with every earlier
//! code word, as long as the running weight `Σ 2^-n_k` stays at most 1.
//!
//! Assignment is best-fit: take the longest free interval whose length is at
//! most `n_k` (lexicographically least on ties), extend it with zeros and
//! return the split-off siblings to the free pool. Free intervals then always
//! have pairwise distinct lengths, so the free measure is a binary expansion
//! and a request fits whenever the remaining weight allows it.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bitspace::{BitString, DepthCap};
use crate::machine::MachineTable;
use crate::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Request {
    pub length: usize,
    pub target: BitString,
}

impl Request {
    pub fn new(length: usize, target: BitString) -> Self {
        Self { length, target }
    }

    pub fn weight(&self) -> Dyadic {
        Dyadic::pow2_neg(self.length as u32)
    }
}

impl fmt::Display for Request {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.length, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KcError {
    #[error(
        "WeightExceeded: request of length {length} would raise the weight from {spent} above 1"
    )]
    WeightExceeded { length: usize, spent: Dyadic },
    #[error("DepthExceeded: request length {length} exceeds depth cap {cap}")]
    DepthExceeded { length: usize, cap: usize },
}

/// Builder state: free intervals, assignments so far and the weight spent.
#[derive(Debug, Clone)]
pub struct KraftChaitin {
    free: BTreeSet<BitString>,
    assignments: Vec<(BitString, BitString)>,
    spent: Dyadic,
    cap: DepthCap,
}

impl Default for KraftChaitin {
    fn default() -> Self {
        Self::new()
    }
}

impl KraftChaitin {
    pub fn new() -> Self {
        Self::with_cap(DepthCap::default())
    }

    pub fn with_cap(cap: DepthCap) -> Self {
        Self {
            free: BTreeSet::from([BitString::empty()]),
            assignments: Vec::new(),
            spent: Dyadic::zero(),
            cap,
        }
    }

    /// Assign a code word of length `r.length`, or refuse without changing
    /// the state.
    pub fn request(&mut self, r: Request) -> Result<BitString, KcError> {
        if r.length > self.cap.0 {
            return Err(KcError::DepthExceeded {
                length: r.length,
                cap: self.cap.0,
            });
        }
        let spent = &self.spent + &r.weight();
        if spent > Dyadic::one() {
            return Err(KcError::WeightExceeded {
                length: r.length,
                spent: self.spent.clone(),
            });
        }
        // longest interval that still fits; leftmost among equal lengths
        let best_len = self
            .free
            .iter()
            .map(BitString::len)
            .filter(|&l| l <= r.length)
            .max()
            .expect("remaining weight guarantees a fitting interval");
        let chosen = self
            .free
            .iter()
            .find(|w| w.len() == best_len)
            .cloned()
            .unwrap();
        self.free.remove(&chosen);
        let mut code = chosen;
        while code.len() < r.length {
            self.free.insert(code.pushed(true));
            code.push(false);
        }
        self.spent = spent;
        self.assignments.push((code.clone(), r.target));
        Ok(code)
    }

    pub fn free_intervals(&self) -> impl Iterator<Item = &BitString> + '_ {
        self.free.iter()
    }

    pub fn free_measure(&self) -> Dyadic {
        self.free
            .iter()
            .map(|w| Dyadic::pow2_neg(w.len() as u32))
            .sum()
    }

    /// `(τ_k, σ_k)` in acceptance order.
    pub fn assignments(&self) -> &[(BitString, BitString)] {
        &self.assignments
    }

    pub fn spent_weight(&self) -> &Dyadic {
        &self.spent
    }

    pub fn to_machine(&self) -> MachineTable {
        MachineTable::from_prefix_free(self.assignments.iter().cloned())
    }
}

/// Feed every request; stops at the first refusal.
pub fn build(requests: &[Request], cap: DepthCap) -> Result<KraftChaitin, KcError> {
    let mut kc = KraftChaitin::with_cap(cap);
    for r in requests {
        kc.request(r.clone())?;
    }
    Ok(kc)
}
