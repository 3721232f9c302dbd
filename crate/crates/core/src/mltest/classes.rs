use crate::bitspace::{BitString, BitspaceError, ClosedSet, DepthCap, OpenSet};
use crate::machine::{MachineError, UniversalMachine};

/// Least shift `n ≤ |x| - depth(Q)` with `[x_n x_{n+1} ...] ⊆ Q`.
pub fn tail_search(q: &ClosedSet, x: &BitString) -> Option<usize> {
    let last = x.len().checked_sub(q.depth())?;
    (0..=last).find(|&n| q.contains_cylinder(&x.suffix_from(n)))
}

/// `Q ∩ [σ] ≠ ∅` and `Q ∩ S ∩ [σ] = ∅`.
pub fn separation_check(
    q: &ClosedSet,
    s_level: &OpenSet,
    sigma: &BitString,
    cap: DepthCap,
) -> Result<bool, BitspaceError> {
    cap.check(q.depth().max(s_level.depth()).max(sigma.len()))?;
    if !q.meets(sigma) {
        return Ok(false);
    }
    Ok(s_level
        .intersect_cylinder(sigma, cap)?
        .subset(q.complement()))
}

/// [`separation_check`] against the stage-`t` universal test level `S_n`.
pub fn separation_check_at(
    machine: &UniversalMachine,
    q: &ClosedSet,
    level: i64,
    stage: u64,
    oracle: &[bool],
    sigma: &BitString,
    cap: DepthCap,
) -> Result<bool, MachineError> {
    let s = machine.universal_test_level(level, stage, oracle, cap)?;
    Ok(separation_check(q, &s, sigma, cap)?)
}

/// `F ⊆ C` and `μF > 0`.
pub fn subclass_check(f: &ClosedSet, c: &ClosedSet) -> bool {
    f.subset(c) && !f.measure().is_zero()
}
