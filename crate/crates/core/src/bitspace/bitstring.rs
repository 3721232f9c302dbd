use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use super::BitspaceError;

/// A finite binary word. Ordered length-lexicographically.
///
/// The empty word is printed and parsed as `@`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: impl Into<Vec<bool>>) -> Self {
        Self { bits: bits.into() }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn as_bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn pushed(&self, bit: bool) -> Self {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(bit);
        Self { bits }
    }

    pub fn concat(&self, other: &BitString) -> Self {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.bits.starts_with(&self.bits)
    }

    pub fn is_prefix_of_bits(&self, other: &[bool]) -> bool {
        other.starts_with(&self.bits)
    }

    /// True when one of the two words extends the other.
    pub fn comparable(&self, other: &BitString) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, prefix: &BitString) -> Option<BitString> {
        self.bits
            .strip_prefix(prefix.bits.as_slice())
            .map(BitString::from_bits)
    }

    pub fn prefix(&self, n: usize) -> BitString {
        BitString::from_bits(&self.bits[..n.min(self.len())])
    }

    pub fn suffix_from(&self, n: usize) -> BitString {
        BitString::from_bits(&self.bits[n.min(self.len())..])
    }

    /// Position in the length-lexicographic enumeration `@, 0, 1, 00, 01, ...`.
    pub fn index(&self) -> Option<u64> {
        if self.len() >= 63 {
            return None;
        }
        let value = self
            .bits
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        Some((1u64 << self.len()) - 1 + value)
    }

    /// Inverse of [`BitString::index`].
    pub fn from_index(index: u64) -> Self {
        let len = 63 - (index + 1).leading_zeros() as usize;
        let value = index + 1 - (1u64 << len);
        let bits = (0..len).rev().map(|i| (value >> i) & 1 == 1).collect();
        Self { bits }
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitString> {
        let first = (1u64 << n) - 1;
        (first..first + (1u64 << n)).map(BitString::from_index)
    }
}

impl Deref for BitString {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.bits
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("@");
        }
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = BitspaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "@" {
            return Ok(Self::empty());
        }
        if s.is_empty() {
            return Err(BitspaceError::Parse(
                "empty token (use `@` for the empty string)".into(),
            ));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitspaceError::Parse(format!(
                    "unexpected character {other:?} in bit string {s:?}"
                ))),
            })
            .collect()
    }
}
