//! Martin-Löf tests at finite depth, and the constructions that move
//! between tests, closed classes of positive measure and their powers.

mod amplify;
mod classes;
mod convert;
mod extract;

pub use amplify::{amplification_exponent, amplified_test};
pub use classes::{separation_check, separation_check_at, subclass_check, tail_search};
pub use convert::{convert_test, Conversion, LevelReport};
pub use extract::{extract_cover, iterate_extract, ExtractCase, Extraction, IteratedExtraction};

use std::fmt;

use thiserror::Error;

use crate::bitspace::{BitString, BitspaceError, DepthCap, OpenSet};
use crate::kc::KcError;
use crate::machine::MachineError;
use crate::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MlTestError {
    #[error("InvalidBound: measure bound {0} is not in (0, 1]")]
    InvalidBound(Dyadic),
    #[error("ZeroMeasure: the closed set has measure 0")]
    ZeroMeasure,
    #[error("AmplificationTooLarge: no exponent up to {limit} reaches level {level}")]
    AmplificationTooLarge { level: u32, limit: u64 },
    #[error("UncertifiedLevel: level {level} has measure {measure} > 2^-{level}")]
    UncertifiedLevel { level: usize, measure: Dyadic },
    #[error("MalformedTest: generator {generator} of level {level} is too short and clamping overflows the weight ({weight})")]
    MalformedTest {
        level: usize,
        generator: BitString,
        weight: Dyadic,
    },
    #[error("WeightExceeded: request weight {0} exceeds 1")]
    WeightExceeded(Dyadic),
    #[error("PreconditionFailed: {0}")]
    PreconditionFailed(String),
    #[error("PowerNotNested: P^{higher} is not contained in P^{lower}")]
    PowerNotNested { higher: u32, lower: u32 },
    #[error("StageBoundExceeded: stage {needed} is past the bound {bound}")]
    StageBoundExceeded { needed: u64, bound: u64 },
    #[error(transparent)]
    Bitspace(#[from] BitspaceError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Kc(#[from] KcError),
}

/// Finite-depth Martin-Löf test: levels `V_0..V_N` with `μV_k ≤ 2^-k`,
/// each measure kept as its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MlTest {
    levels: Vec<OpenSet>,
    certified: Vec<Dyadic>,
}

impl MlTest {
    pub fn new(levels: Vec<OpenSet>, cap: DepthCap) -> Result<Self, MlTestError> {
        let mut certified = Vec::with_capacity(levels.len());
        for (k, v) in levels.iter().enumerate() {
            cap.check(v.depth())?;
            let measure = v.measure();
            if measure > Dyadic::pow2_neg(k as u32) {
                return Err(MlTestError::UncertifiedLevel { level: k, measure });
            }
            certified.push(measure);
        }
        Ok(Self { levels, certified })
    }

    pub fn levels(&self) -> &[OpenSet] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> Option<&OpenSet> {
        self.levels.get(k)
    }

    /// Exact measure of each level.
    pub fn certified(&self) -> &[Dyadic] {
        &self.certified
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

impl fmt::Display for MlTest {
    /// Test-file layout: `level k` headers followed by generator lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, m)) in self.levels.iter().zip(&self.certified).enumerate() {
            writeln!(f, "level {k}")?;
            writeln!(f, "# measure {m} <= 1/2^{k}")?;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
