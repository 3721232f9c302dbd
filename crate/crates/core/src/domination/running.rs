use std::fmt;

use super::{map_ordered, DominationError, Eval, Functional, GrowthFunction};
use crate::bitspace::{BitString, ClosedSet, CodeSet, DepthCap, OpenSet};

/// Why a running time could not be fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Undetermined {
    /// Input `input` did not converge within the budget.
    Budget {
        input: u64,
    },
    OracleTooShort {
        input: u64,
        position: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunningTime {
    Determined(u64),
    Undetermined(Undetermined),
}

impl RunningTime {
    pub fn value(self) -> Option<u64> {
        match self {
            RunningTime::Determined(v) => Some(v),
            RunningTime::Undetermined(_) => None,
        }
    }
}

impl fmt::Display for RunningTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunningTime::Determined(v) => write!(f, "{v}"),
            RunningTime::Undetermined(Undetermined::Budget { input }) => {
                write!(f, "undetermined budget input {input}")
            }
            RunningTime::Undetermined(Undetermined::OracleTooShort { input, position }) => {
                write!(f, "undetermined oracle input {input} position {position}")
            }
        }
    }
}

/// `ϕ^X(0), ..., ϕ^X(max_input)`; entries after the first undetermined one
/// repeat it.
pub fn phi_profile(
    fnl: &dyn Functional,
    oracle: &[bool],
    max_input: u64,
    budget: u64,
) -> Vec<RunningTime> {
    let mut out = Vec::with_capacity(max_input as usize + 1);
    let mut current = RunningTime::Determined(0);
    out.push(current);
    for m in 0..max_input {
        if let RunningTime::Determined(acc) = current {
            current = match fnl.eval(oracle, m, budget) {
                Eval::Converged { value, step } => {
                    RunningTime::Determined(acc.max(value).max(step))
                }
                Eval::Pending => RunningTime::Undetermined(Undetermined::Budget { input: m }),
                Eval::OracleTooShort { position } => {
                    RunningTime::Undetermined(Undetermined::OracleTooShort { input: m, position })
                }
            };
        }
        out.push(current);
    }
    out
}

/// `ϕ^X(n) = μs ∀m<n Φ^X_s(m)↓ ≤ s`, searched up to `budget`.
pub fn running_time(fnl: &dyn Functional, oracle: &[bool], n: u64, budget: u64) -> RunningTime {
    *phi_profile(fnl, oracle, n, budget)
        .last()
        .expect("profile is nonempty")
}

fn branch_profiles(
    fnl: &dyn Functional,
    branches: &[BitString],
    max_input: u64,
    budget: u64,
    jobs: Option<usize>,
) -> Result<Vec<Vec<u64>>, DominationError> {
    let profiles = map_ordered(branches, jobs, |x| phi_profile(fnl, x, max_input, budget));
    branches
        .iter()
        .zip(profiles)
        .map(|(x, profile)| {
            profile
                .into_iter()
                .map(|r| match r {
                    RunningTime::Determined(v) => Ok(v),
                    RunningTime::Undetermined(Undetermined::Budget { input }) => {
                        Err(DominationError::BudgetInsufficient {
                            branch: x.clone(),
                            input,
                            budget,
                        })
                    }
                    RunningTime::Undetermined(Undetermined::OracleTooShort { input, position }) => {
                        Err(DominationError::OracleTooShort {
                            branch: x.clone(),
                            input,
                            position,
                        })
                    }
                })
                .collect()
        })
        .collect()
}

/// `f` with its per-branch running times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub function: GrowthFunction,
    pub branches: Vec<(BitString, Vec<u64>)>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.function)?;
        for (x, phis) in &self.branches {
            for (n, v) in phis.iter().enumerate() {
                writeln!(f, "# {x} {n} {v}")?;
            }
        }
        Ok(())
    }
}

/// `f(n) = 1 + max ϕ^X(n)` over the depth-`depth` branches `X` of `F`, for
/// `n ≤ max_input`; `f ≡ 1` on the empty class.
pub fn witness_from_class(
    fnl: &dyn Functional,
    class: &ClosedSet,
    depth: usize,
    max_input: u64,
    budget: u64,
    cap: DepthCap,
    jobs: Option<usize>,
) -> Result<Witness, DominationError> {
    let branches = class.branches(depth, cap)?;
    let profiles = branch_profiles(fnl, &branches, max_input, budget, jobs)?;
    let values = (0..=max_input as usize)
        .map(|n| 1 + profiles.iter().map(|p| p[n]).max().unwrap_or(0))
        .collect();
    Ok(Witness {
        function: GrowthFunction(values),
        branches: branches.into_iter().zip(profiles).collect(),
    })
}

/// The class recovered from a witness at a fixed depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredClass {
    pub class: ClosedSet,
    /// `(X, ϕ^X(0..=N))` for each branch kept on the evidence.
    pub kept: Vec<(BitString, Vec<u64>)>,
    /// Branches kept because the prefix was too short to decide:
    /// `(X, input, position)`.
    pub undecided: Vec<(BitString, u64, usize)>,
}

impl fmt::Display for RecoveredClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# measure {}", self.class.measure())?;
        for (x, phis) in &self.kept {
            for (n, v) in phis.iter().enumerate() {
                writeln!(f, "# {x} {n} {v}")?;
            }
        }
        for (x, input, position) in &self.undecided {
            writeln!(f, "# {x} undecided input {input} position {position}")?;
        }
        write!(f, "{}", self.class.as_open())
    }
}

/// Depth-`depth` branches `X` with `ϕ^X(n) ≤ f(n)` for every `n ≤ N`, that
/// is, `Φ^X_{f(n)}(m)↓` for all `m < n`. Branches whose prefix runs out are
/// kept, so the result contains the class it approximates.
pub fn class_from_witness(
    fnl: &dyn Functional,
    f: &GrowthFunction,
    depth: usize,
    cap: DepthCap,
    jobs: Option<usize>,
) -> Result<RecoveredClass, DominationError> {
    cap.check(depth)?;
    let Some(max_input) = f.max_input() else {
        return Ok(RecoveredClass {
            class: ClosedSet::whole(),
            kept: Vec::new(),
            undecided: Vec::new(),
        });
    };
    let budget = f.values().iter().copied().max().unwrap_or(0);
    let branches: Vec<BitString> = BitString::all_of_length(depth).collect();
    let profiles = map_ordered(&branches, jobs, |x| phi_profile(fnl, x, max_input, budget));

    let mut kept = Vec::new();
    let mut undecided = Vec::new();
    let mut words = Vec::new();
    for (x, profile) in branches.into_iter().zip(profiles) {
        let mut phis = Vec::new();
        let mut verdict = Some(true);
        for (n, r) in profile.iter().enumerate() {
            match *r {
                RunningTime::Determined(v) if v <= f.values()[n] => phis.push(v),
                RunningTime::Undetermined(Undetermined::OracleTooShort { input, position }) => {
                    undecided.push((x.clone(), input, position));
                    verdict = None;
                    break;
                }
                _ => {
                    verdict = Some(false);
                    break;
                }
            }
        }
        match verdict {
            Some(true) => {
                words.push(x.clone());
                kept.push((x, phis));
            }
            None => words.push(x),
            Some(false) => {}
        }
    }
    let open = OpenSet::new(CodeSet::normalize(&words, cap)?);
    Ok(RecoveredClass {
        class: ClosedSet::from_open(&open),
        kept,
        undecided,
    })
}

/// Outcome of a domination check; `failure` is the first `(X, n, ϕ^X(n),
/// f(n))` in branch order with `ϕ^X(n) ≥ f(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domination {
    pub holds: bool,
    pub failure: Option<(BitString, u64, u64, u64)>,
    pub branches: Vec<(BitString, Vec<u64>)>,
}

impl fmt::Display for Domination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}",
            if self.holds {
                "dominated"
            } else {
                "not dominated"
            }
        )?;
        if let Some((x, n, phi, fv)) = &self.failure {
            writeln!(f, "# fails at {x} {n} phi {phi} f {fv}")?;
        }
        for (x, phis) in &self.branches {
            for (n, v) in phis.iter().enumerate() {
                writeln!(f, "# {x} {n} {v}")?;
            }
        }
        Ok(())
    }
}

/// Whether `ϕ^X(n) < f(n)` for every depth-`depth` branch `X` of `F` and
/// every `n` in the domain of `f`.
pub fn dominates_on(
    fnl: &dyn Functional,
    f: &GrowthFunction,
    class: &ClosedSet,
    depth: usize,
    budget: u64,
    cap: DepthCap,
    jobs: Option<usize>,
) -> Result<Domination, DominationError> {
    let branches = class.branches(depth, cap)?;
    let Some(max_input) = f.max_input() else {
        return Ok(Domination {
            holds: true,
            failure: None,
            branches: Vec::new(),
        });
    };
    let profiles = branch_profiles(fnl, &branches, max_input, budget, jobs)?;
    let failure = branches.iter().zip(&profiles).find_map(|(x, p)| {
        p.iter()
            .zip(f.values())
            .enumerate()
            .find(|(_, (phi, fv))| phi >= fv)
            .map(|(n, (&phi, &fv))| (x.clone(), n as u64, phi, fv))
    });
    Ok(Domination {
        holds: failure.is_none(),
        failure,
        branches: branches.into_iter().zip(profiles).collect(),
    })
}
