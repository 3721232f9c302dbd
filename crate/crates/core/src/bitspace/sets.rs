use std::collections::BTreeSet;
use std::fmt;

use super::trie::{measure_from_counts, Trie, Walk};
use super::{BitString, BitspaceError, CodeSet, DepthCap};
use crate::Dyadic;

/// A clopen subset of Cantor space, carried by its generator set.
///
/// The generator set is part of the value's identity: products and powers
/// are computed on generators, not on points.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OpenSet {
    code: CodeSet,
}

impl OpenSet {
    pub fn new(code: CodeSet) -> Self {
        Self { code }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn whole() -> Self {
        Self::new(CodeSet::whole())
    }

    pub fn cylinder(sigma: &BitString) -> Self {
        Self::new(CodeSet::from_prefix_free(BTreeSet::from([sigma.clone()])))
    }

    pub fn code(&self) -> &CodeSet {
        &self.code
    }

    pub fn into_code(self) -> CodeSet {
        self.code
    }

    pub fn generators(&self) -> impl Iterator<Item = &BitString> + '_ {
        self.code.iter()
    }

    pub fn depth(&self) -> usize {
        self.code.depth()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Exact `Σ 2^-|σ|` over generators.
    pub fn measure(&self) -> Dyadic {
        let mut counts = vec![0u64; self.depth() + 1];
        for w in self.code.iter() {
            counts[w.len()] += 1;
        }
        if self.code.is_empty() {
            return Dyadic::zero();
        }
        measure_from_counts(&counts)
    }

    pub fn normalized(&self) -> Self {
        // members already respect the cap they were built under
        Self::new(CodeSet::normalize(self.code.iter(), DepthCap(usize::MAX)).unwrap())
    }

    /// `{στ : σ ∈ self, τ ∈ other}`. Prefix-free whenever both inputs are.
    pub fn product(&self, other: &OpenSet, cap: DepthCap) -> Result<OpenSet, BitspaceError> {
        if self.is_empty() || other.is_empty() {
            return Ok(OpenSet::empty());
        }
        cap.check(self.depth() + other.depth())?;
        let members = self
            .code
            .iter()
            .flat_map(|s| other.code.iter().map(move |t| s.concat(t)))
            .collect();
        Ok(OpenSet::new(CodeSet::from_prefix_free(members)))
    }

    /// `U^n = U^{n-1} U`, `U^1 = U`.
    pub fn power(&self, n: u32, cap: DepthCap) -> Result<OpenSet, BitspaceError> {
        if n == 0 {
            return Err(BitspaceError::InvalidExponent);
        }
        if !self.is_empty() {
            cap.check(self.depth().saturating_mul(n as usize))?;
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self, cap)?;
        }
        Ok(acc)
    }

    /// `U|σ = ⋃{[τ] : [στ] ⊆ U}`; the whole space when `[σ] ⊆ U`.
    pub fn localize(&self, sigma: &BitString) -> OpenSet {
        let trie = self.code.trie();
        match trie.walk(sigma) {
            Walk::Covered => OpenSet::whole(),
            Walk::Inner(node) => {
                if trie.full(node) {
                    OpenSet::whole()
                } else {
                    OpenSet::new(CodeSet::from_prefix_free(
                        trie.suffixes(node).into_iter().collect(),
                    ))
                }
            }
            Walk::Missing => OpenSet::empty(),
        }
    }

    /// `μ(U|σ)` without materializing the localized generators.
    pub fn local_measure(&self, sigma: &BitString) -> Dyadic {
        let trie = self.code.trie();
        match trie.walk(sigma) {
            Walk::Covered => Dyadic::one(),
            Walk::Inner(node) => trie.relative_measure(node),
            Walk::Missing => Dyadic::zero(),
        }
    }

    /// Minimal cylinders `[σ]` with `μ(U|σ) ≥ threshold`, for a positive
    /// threshold. Only words along `U`'s trie can qualify.
    pub fn dense_cylinders(&self, threshold: &Dyadic) -> OpenSet {
        assert!(!threshold.is_zero(), "threshold must be positive");
        let trie = self.code.trie();
        let mut out = BTreeSet::new();
        if trie.is_empty() {
            return OpenSet::empty();
        }
        let mut stack = vec![(Trie::ROOT, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            let local = if trie.is_terminal(node) {
                Dyadic::one()
            } else {
                trie.relative_measure(node)
            };
            if &local >= threshold {
                out.insert(BitString::from_bits(path));
                continue;
            }
            for bit in [false, true] {
                if let Some(child) = trie.child(node, bit) {
                    let mut p = path.clone();
                    p.push(bit);
                    stack.push((child, p));
                }
            }
        }
        OpenSet::new(CodeSet::from_prefix_free(out))
    }

    /// `[σ] ⊆ U`.
    pub fn covers(&self, sigma: &BitString) -> bool {
        let trie = self.code.trie();
        match trie.walk(sigma) {
            Walk::Covered => true,
            Walk::Inner(node) => trie.full(node),
            Walk::Missing => false,
        }
    }

    /// `[σ] ∩ U ≠ ∅`.
    pub fn meets(&self, sigma: &BitString) -> bool {
        !matches!(self.code.trie().walk(sigma), Walk::Missing)
    }

    pub fn union(&self, other: &OpenSet, cap: DepthCap) -> Result<OpenSet, BitspaceError> {
        Ok(OpenSet::new(CodeSet::normalize(
            self.code.iter().chain(other.code.iter()),
            cap,
        )?))
    }

    pub fn intersect(&self, other: &OpenSet, cap: DepthCap) -> Result<OpenSet, BitspaceError> {
        let trie = other.code.trie();
        let mut raw = Vec::new();
        for s in self.code.iter() {
            match trie.walk(s) {
                Walk::Covered => raw.push(s.clone()),
                Walk::Inner(node) => raw.extend(trie.suffixes(node).iter().map(|t| s.concat(t))),
                Walk::Missing => {}
            }
        }
        Ok(OpenSet::new(CodeSet::normalize(&raw, cap)?))
    }

    /// `U ∩ [σ]`.
    pub fn intersect_cylinder(
        &self,
        sigma: &BitString,
        cap: DepthCap,
    ) -> Result<OpenSet, BitspaceError> {
        cap.check(sigma.len())?;
        self.intersect(&OpenSet::cylinder(sigma), cap)
    }

    /// Generators of the complement. `d` must be at least the depth of `self`.
    pub fn complement_at_depth(&self, d: usize, cap: DepthCap) -> Result<OpenSet, BitspaceError> {
        cap.check(d)?;
        if d < self.depth() {
            return Err(BitspaceError::DepthBelowCode {
                depth: d,
                required: self.depth(),
            });
        }
        let raw = self.code.trie().complement();
        Ok(OpenSet::new(CodeSet::normalize(&raw, cap)?))
    }

    pub fn complement(&self) -> OpenSet {
        let raw = self.code.trie().complement();
        OpenSet::new(CodeSet::normalize(&raw, DepthCap(usize::MAX)).unwrap())
    }

    /// `U ⊆ V`, decided by walking `V`'s trie along each generator of `U`.
    pub fn subset(&self, other: &OpenSet) -> bool {
        let trie = other.code.trie();
        self.code.iter().all(|s| match trie.walk(s) {
            Walk::Covered => true,
            Walk::Inner(node) => trie.full(node),
            Walk::Missing => false,
        })
    }

    pub fn disjoint(&self, other: &OpenSet) -> bool {
        let trie = other.code.trie();
        self.code
            .iter()
            .all(|s| matches!(trie.walk(s), Walk::Missing))
    }

    /// Point-set equality (generators may differ).
    pub fn same_set(&self, other: &OpenSet) -> bool {
        self.subset(other) && other.subset(self)
    }

    /// The length-`d` words whose cylinders lie inside `U`.
    pub fn enumerate_depth(
        &self,
        d: usize,
        cap: DepthCap,
    ) -> Result<BTreeSet<BitString>, BitspaceError> {
        cap.check(d)?;
        if d < self.depth() {
            return Err(BitspaceError::DepthBelowCode {
                depth: d,
                required: self.depth(),
            });
        }
        let mut out = BTreeSet::new();
        for s in self.code.iter() {
            for tail in BitString::all_of_length(d - s.len()) {
                out.insert(s.concat(&tail));
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpenSet{:?}", self.code)
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.code.fmt(f)
    }
}

/// A clopen set given by the generators of its complement.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedSet {
    complement: OpenSet,
}

impl ClosedSet {
    pub fn from_complement(complement: OpenSet) -> Self {
        Self { complement }
    }

    pub fn whole() -> Self {
        Self::from_complement(OpenSet::empty())
    }

    pub fn empty() -> Self {
        Self::from_complement(OpenSet::whole())
    }

    /// The closed set equal (as a point set) to the clopen `u`.
    pub fn from_open(u: &OpenSet) -> Self {
        Self::from_complement(u.complement())
    }

    /// `[σ]` as a closed set.
    pub fn cylinder(sigma: &BitString) -> Self {
        Self::from_open(&OpenSet::cylinder(sigma))
    }

    pub fn complement(&self) -> &OpenSet {
        &self.complement
    }

    /// The same point set as an open set.
    pub fn as_open(&self) -> OpenSet {
        self.complement.complement()
    }

    pub fn depth(&self) -> usize {
        self.complement.depth()
    }

    pub fn measure(&self) -> Dyadic {
        self.complement
            .measure()
            .complement()
            .expect("prefix-free complement has measure at most 1")
    }

    pub fn is_empty(&self) -> bool {
        self.complement.covers(&BitString::empty())
    }

    /// `Q^n`, defined by `complement(Q^n) = complement(Q)^n`.
    pub fn power(&self, n: u32, cap: DepthCap) -> Result<ClosedSet, BitspaceError> {
        Ok(Self::from_complement(self.complement.power(n, cap)?))
    }

    /// `[σ] ⊆ Q`.
    pub fn contains_cylinder(&self, sigma: &BitString) -> bool {
        !self.complement.meets(sigma)
    }

    /// `Q ∩ [σ] ≠ ∅`.
    pub fn meets(&self, sigma: &BitString) -> bool {
        !self.complement.covers(sigma)
    }

    pub fn subset(&self, other: &ClosedSet) -> bool {
        other.complement.subset(&self.complement)
    }

    /// Length-`d` words whose cylinders lie in `Q`, in lexicographic order.
    pub fn branches(&self, d: usize, cap: DepthCap) -> Result<Vec<BitString>, BitspaceError> {
        cap.check(d)?;
        if d < self.depth() {
            return Err(BitspaceError::DepthBelowCode {
                depth: d,
                required: self.depth(),
            });
        }
        let mut out = Vec::new();
        for g in self.as_open().generators() {
            out.extend(BitString::all_of_length(d - g.len()).map(|t| g.concat(&t)));
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Debug for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedSet(complement {:?})", self.complement.code())
    }
}
