//! Clopen subsets of Cantor space generated by finite prefix-free code sets,
//! with exact dyadic measure.

mod bitstring;
mod codeset;
mod sets;
pub(crate) mod trie;

pub use bitstring::BitString;
pub use codeset::CodeSet;
pub use sets::{ClosedSet, OpenSet};

use thiserror::Error;

/// Longest word any public operation may produce or accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DepthCap(pub usize);

impl DepthCap {
    pub const DEFAULT: DepthCap = DepthCap(64);

    pub fn check(self, length: usize) -> Result<(), BitspaceError> {
        if length > self.0 {
            Err(BitspaceError::DepthExceeded {
                length,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for DepthCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitspaceError {
    #[error("DepthExceeded: length {length} exceeds depth cap {cap}")]
    DepthExceeded { length: usize, cap: usize },
    #[error("NotPrefixFree: {shorter} is a prefix of {longer}")]
    NotPrefixFree {
        shorter: BitString,
        longer: BitString,
    },
    #[error("DepthBelowCode: depth {depth} is below the code depth {required}")]
    DepthBelowCode { depth: usize, required: usize },
    #[error("InvalidExponent: powers start at 1")]
    InvalidExponent,
    #[error("{0}")]
    Parse(String),
}

impl BitspaceError {
    /// Malformed input, as opposed to a violated contract.
    pub fn is_parse(&self) -> bool {
        matches!(self, BitspaceError::Parse(_))
    }
}
