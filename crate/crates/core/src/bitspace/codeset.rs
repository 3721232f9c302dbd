use std::collections::BTreeSet;
use std::fmt;

use super::trie::Trie;
use super::{BitString, BitspaceError, DepthCap};

/// A finite prefix-free set of words, kept in length-lexicographic order.
///
/// A code set need not be reduced: products keep their generators as given,
/// so sibling pairs `σ0, σ1` may both be present. [`CodeSet::normalize`]
/// produces the reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CodeSet {
    members: BTreeSet<BitString>,
}

impl CodeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `{@}`, generating the whole space.
    pub fn whole() -> Self {
        Self {
            members: BTreeSet::from([BitString::empty()]),
        }
    }

    /// Build from words that must already be pairwise incomparable.
    pub fn new(
        words: impl IntoIterator<Item = BitString>,
        cap: DepthCap,
    ) -> Result<Self, BitspaceError> {
        let members: BTreeSet<BitString> = words.into_iter().collect();
        for w in &members {
            cap.check(w.len())?;
        }
        check_prefix_free(&members)?;
        Ok(Self { members })
    }

    /// Skips validation; callers guarantee prefix-freeness.
    pub(crate) fn from_prefix_free(members: BTreeSet<BitString>) -> Self {
        debug_assert!(check_prefix_free(&members).is_ok());
        Self { members }
    }

    /// Canonical generator set for the open set generated by `raw`: drops
    /// words covered by a shorter member and merges sibling pairs.
    pub fn normalize<'a>(
        raw: impl IntoIterator<Item = &'a BitString>,
        cap: DepthCap,
    ) -> Result<Self, BitspaceError> {
        let mut trie = Trie::new();
        for w in raw {
            cap.check(w.len())?;
            trie.insert(w);
        }
        Ok(Self {
            members: trie.reduced().into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &BitString) -> bool {
        self.members.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitString> + '_ {
        self.members.iter()
    }

    /// Longest member length; 0 for the empty set.
    pub fn depth(&self) -> usize {
        self.members.iter().map(BitString::len).max().unwrap_or(0)
    }

    /// No sibling pair `σ0, σ1` is present.
    pub fn is_reduced(&self) -> bool {
        self.members.iter().all(|w| match w.last() {
            Some(&last) => {
                let mut sib = w.clone().into_bits();
                *sib.last_mut().unwrap() = !last;
                !self.members.contains(&BitString::from(sib))
            }
            None => true,
        })
    }

    pub(crate) fn trie(&self) -> Trie {
        Trie::from_words(&self.members)
    }

    pub fn into_members(self) -> BTreeSet<BitString> {
        self.members
    }
}

impl<'a> IntoIterator for &'a CodeSet {
    type Item = &'a BitString;
    type IntoIter = std::collections::btree_set::Iter<'a, BitString>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for CodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for CodeSet {
    /// One member per line, canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.members {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

/// In lexicographic order a prefix sorts directly before its extensions,
/// so checking neighbours is enough.
fn check_prefix_free(members: &BTreeSet<BitString>) -> Result<(), BitspaceError> {
    let mut lex: Vec<&BitString> = members.iter().collect();
    lex.sort_by(|a, b| a.as_bits().cmp(b.as_bits()));
    for pair in lex.windows(2) {
        if pair[0].is_prefix_of(pair[1]) {
            return Err(BitspaceError::NotPrefixFree {
                shorter: pair[0].clone(),
                longer: pair[1].clone(),
            });
        }
    }
    Ok(())
}
