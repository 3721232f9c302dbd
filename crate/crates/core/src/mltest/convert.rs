use std::fmt;

use super::{MlTest, MlTestError};
use crate::bitspace::DepthCap;
use crate::kc::{KraftChaitin, Request};
use crate::machine::{MachineTable, Outcome, Registration, UniversalMachine};
use crate::Dyadic;

/// Containment check for one embedded level `V_{2m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub m: usize,
    /// Universal test level `m - c - 1`.
    pub universal_level: i64,
    pub stage: u64,
    pub generators: usize,
    /// Every generator `σ` got a table code of length at most `|σ| - m + 1`.
    pub codes_short: bool,
    /// `V_{2m} ⊆ S_{m-c-1}[stage]`.
    pub contained: bool,
}

/// A test embedded into the universal test through a registered table.
#[derive(Debug, Clone)]
pub struct Conversion {
    pub requests: Vec<Request>,
    pub weight: Dyadic,
    pub table: MachineTable,
    pub machine: UniversalMachine,
    pub registration: Registration,
    pub levels: Vec<LevelReport>,
}

impl Conversion {
    pub fn verified(&self) -> bool {
        self.levels.iter().all(|l| l.codes_short && l.contained)
    }
}

impl fmt::Display for Conversion {
    /// The table, then the certificate as comment lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table)?;
        writeln!(f, "# weight {} <= 1", self.weight)?;
        writeln!(
            f,
            "# slot {} constant {}",
            self.registration.index, self.registration.constant
        )?;
        for l in &self.levels {
            writeln!(
                f,
                "# level {} generators {} codes {} S_{}[{}] {}",
                2 * l.m,
                l.generators,
                if l.codes_short { "ok" } else { "long" },
                l.universal_level,
                l.stage,
                if l.contained { "contains" } else { "misses" },
            )?;
        }
        Ok(())
    }
}

/// Request `(|σ| - m + 1, σ)` for every generator of every even level
/// `V_{2m}`, build the table, register it and check each level against the
/// universal test at the shifted level.
pub fn convert_test(
    test: &MlTest,
    machine: &UniversalMachine,
    oracle: &[bool],
    stage_bound: u64,
    cap: DepthCap,
) -> Result<Conversion, MlTestError> {
    let mut requests = Vec::new();
    let mut clamped = None;
    for (m, level) in test
        .levels()
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(k, v)| (k / 2, v))
    {
        for sigma in level.generators() {
            let n = sigma.len() as i64 - m as i64 + 1;
            if n <= 0 && clamped.is_none() {
                clamped = Some((2 * m, sigma.clone()));
            }
            requests.push(Request::new(n.max(0) as usize, sigma.clone()));
        }
    }
    let weight: Dyadic = requests.iter().map(Request::weight).sum();
    if weight > Dyadic::one() {
        return Err(match clamped {
            Some((level, generator)) => MlTestError::MalformedTest {
                level,
                generator,
                weight,
            },
            None => MlTestError::WeightExceeded(weight),
        });
    }

    let mut kc = KraftChaitin::with_cap(cap);
    for r in &requests {
        kc.request(r.clone())?;
    }
    let table = kc.to_machine();
    let (machine, registration) = machine.register(table.clone())?;
    let c = registration.constant as i64;

    let mut levels = Vec::new();
    for (m, level) in test
        .levels()
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(k, v)| (k / 2, v))
    {
        let mut stage = level.depth() as u64;
        let mut codes_short = true;
        for sigma in level.generators() {
            let limit = (sigma.len() as i64 - m as i64 + 1).max(0) as usize;
            codes_short &= table.complexity(sigma).is_some_and(|k| k <= limit);
            let code = table
                .shortest_program(sigma)
                .expect("every generator was requested");
            let program = UniversalMachine::program(registration.index, code);
            match machine.run(&program, oracle, stage_bound) {
                Outcome::Halted { steps, .. } => stage = stage.max(steps),
                _ => {
                    return Err(MlTestError::StageBoundExceeded {
                        needed: stage_bound.saturating_add(1),
                        bound: stage_bound,
                    })
                }
            }
        }
        if stage > stage_bound {
            return Err(MlTestError::StageBoundExceeded {
                needed: stage,
                bound: stage_bound,
            });
        }
        let universal_level = m as i64 - c - 1;
        let s = machine.universal_test_level(universal_level, stage, oracle, cap)?;
        levels.push(LevelReport {
            m,
            universal_level,
            stage,
            generators: level.code().len(),
            codes_short,
            contained: level.subset(&s),
        });
    }

    Ok(Conversion {
        requests,
        weight,
        table,
        machine,
        registration,
        levels,
    })
}
