//! Binary trie over generator sets; all containment and localization queries
//! walk this instead of enumerating points.

use super::BitString;
use crate::Dyadic;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Node {
    child: [u32; 2],
    terminal: bool,
}

impl Node {
    const EMPTY: Node = Node {
        child: [NONE, NONE],
        terminal: false,
    };
}

#[derive(Clone)]
pub(crate) struct Trie {
    nodes: Vec<Node>,
}

/// Where a walk along a word ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Walk {
    /// A generator is a prefix of (or equal to) the word.
    Covered,
    /// The word ends at an internal node; generators strictly extend it.
    Inner(u32),
    /// No generator is comparable with the word.
    Missing,
}

impl Trie {
    pub(crate) fn new() -> Self {
        Self {
            nodes: vec![Node::EMPTY],
        }
    }

    pub(crate) fn from_words<'a>(words: impl IntoIterator<Item = &'a BitString>) -> Self {
        let mut trie = Self::new();
        for w in words {
            trie.insert(w);
        }
        trie
    }

    pub(crate) fn insert(&mut self, word: &[bool]) {
        let mut node = 0usize;
        for &b in word {
            let next = self.nodes[node].child[b as usize];
            node = if next == NONE {
                self.nodes.push(Node::EMPTY);
                let id = (self.nodes.len() - 1) as u32;
                self.nodes[node].child[b as usize] = id;
                id as usize
            } else {
                next as usize
            };
        }
        self.nodes[node].terminal = true;
    }

    pub(crate) const ROOT: u32 = 0;

    pub(crate) fn child(&self, node: u32, bit: bool) -> Option<u32> {
        let c = self.nodes[node as usize].child[bit as usize];
        (c != NONE).then_some(c)
    }

    pub(crate) fn is_terminal(&self, node: u32) -> bool {
        self.nodes[node as usize].terminal
    }

    pub(crate) fn is_empty(&self) -> bool {
        !self.nodes[0].terminal && self.nodes[0].child == [NONE, NONE]
    }

    pub(crate) fn walk(&self, word: &[bool]) -> Walk {
        let mut node = 0usize;
        if self.nodes[0].terminal {
            return Walk::Covered;
        }
        for &b in word {
            let next = self.nodes[node].child[b as usize];
            if next == NONE {
                return Walk::Missing;
            }
            node = next as usize;
            if self.nodes[node].terminal {
                return Walk::Covered;
            }
        }
        if self.nodes[node].child == [NONE, NONE] {
            // only reachable for the root of an empty trie
            Walk::Missing
        } else {
            Walk::Inner(node as u32)
        }
    }

    /// Whether the generators below `node` cover its whole cylinder.
    pub(crate) fn full(&self, node: u32) -> bool {
        let n = self.nodes[node as usize];
        if n.terminal {
            return true;
        }
        n.child.iter().all(|&c| c != NONE && self.full(c))
    }

    /// Measure of the set generated below `node`, relative to its cylinder.
    pub(crate) fn relative_measure(&self, node: u32) -> Dyadic {
        let mut counts: Vec<u64> = Vec::new();
        self.count_by_depth(node, 0, &mut counts);
        measure_from_counts(&counts)
    }

    fn count_by_depth(&self, node: u32, depth: usize, counts: &mut Vec<u64>) {
        let n = self.nodes[node as usize];
        if n.terminal {
            if counts.len() <= depth {
                counts.resize(depth + 1, 0);
            }
            counts[depth] += 1;
            return;
        }
        for &c in &n.child {
            if c != NONE {
                self.count_by_depth(c, depth + 1, counts);
            }
        }
    }

    /// Generators below `node`, with the path to `node` stripped.
    pub(crate) fn suffixes(&self, node: u32) -> Vec<BitString> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(node, &mut path, &mut out);
        out
    }

    fn collect(&self, node: u32, path: &mut Vec<bool>, out: &mut Vec<BitString>) {
        let n = self.nodes[node as usize];
        if n.terminal {
            out.push(BitString::from_bits(path.clone()));
            return;
        }
        for (b, &c) in n.child.iter().enumerate() {
            if c != NONE {
                path.push(b == 1);
                self.collect(c, path, out);
                path.pop();
            }
        }
    }

    /// Maximal cylinders disjoint from every generator.
    pub(crate) fn complement(&self) -> Vec<BitString> {
        if self.is_empty() {
            return vec![BitString::empty()];
        }
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.complement_below(0, &mut path, &mut out);
        out
    }

    fn complement_below(&self, node: u32, path: &mut Vec<bool>, out: &mut Vec<BitString>) {
        let n = self.nodes[node as usize];
        if n.terminal {
            return;
        }
        for (b, &c) in n.child.iter().enumerate() {
            path.push(b == 1);
            if c == NONE {
                out.push(BitString::from_bits(path.clone()));
            } else {
                self.complement_below(c, path, out);
            }
            path.pop();
        }
    }

    /// Reduced generators: drop words covered by a shorter generator and
    /// merge full sibling pairs.
    pub(crate) fn reduced(&self) -> Vec<BitString> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        if self.reduce(0, &mut path, &mut out) {
            out.push(BitString::empty());
        }
        out
    }

    /// Returns true if `node` is full (caller emits it); otherwise pushes the
    /// reduced generators below it.
    fn reduce(&self, node: u32, path: &mut Vec<bool>, out: &mut Vec<BitString>) -> bool {
        let n = self.nodes[node as usize];
        if n.terminal {
            return true;
        }
        let mut full = [false; 2];
        let mark = out.len();
        for (b, &c) in n.child.iter().enumerate() {
            if c != NONE {
                path.push(b == 1);
                full[b] = self.reduce(c, path, out);
                path.pop();
            }
        }
        if full[0] && full[1] {
            debug_assert_eq!(out.len(), mark);
            return true;
        }
        for (b, &is_full) in full.iter().enumerate() {
            if is_full {
                let mut w = path.clone();
                w.push(b == 1);
                out.push(BitString::from_bits(w));
            }
        }
        false
    }
}

/// `sum_l counts[l] * 2^-l`.
pub(crate) fn measure_from_counts(counts: &[u64]) -> Dyadic {
    use num_bigint::BigUint;
    let Some(top) = counts.len().checked_sub(1) else {
        return Dyadic::zero();
    };
    let mut total = BigUint::default();
    for (len, &c) in counts.iter().enumerate() {
        if c > 0 {
            total += BigUint::from(c) << (top - len);
        }
    }
    Dyadic::new(total, top as u32)
}
