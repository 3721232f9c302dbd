use std::collections::BTreeMap;

use super::{MlTest, MlTestError};
use crate::bitspace::{ClosedSet, DepthCap};
use crate::Dyadic;

/// Exponents past this are refused rather than computed.
const EXPONENT_LIMIT: u64 = 1 << 20;

/// Least `n ≥ 1` with `(1 - q)^n ≤ 2^-level`, by exact comparison.
///
/// If `μQ ≥ q` then the `n`-th power of the complement of `Q` has measure
/// at most `2^-level`.
pub fn amplification_exponent(q: &Dyadic, level: u32) -> Result<u32, MlTestError> {
    if q.is_zero() || q > &Dyadic::one() {
        return Err(MlTestError::InvalidBound(q.clone()));
    }
    let base = q.complement().expect("q <= 1");
    let target = Dyadic::pow2_neg(level);
    let fits = |n: u64| base.pow(n as u32) <= target;

    // (1-q)^n is non-increasing in n: gallop, then bisect
    let mut hi = 1u64;
    while !fits(hi) {
        hi *= 2;
        if hi > EXPONENT_LIMIT {
            return Err(MlTestError::AmplificationTooLarge {
                level,
                limit: EXPONENT_LIMIT,
            });
        }
    }
    let mut lo = hi / 2; // fails (or 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi as u32)
}

/// The test `V_k = P^{f(k)}` for `P` the complement of `q_set` and `f` the
/// amplification exponent at `μQ`, for `k = 0..=max_level`.
pub fn amplified_test(
    q_set: &ClosedSet,
    max_level: u32,
    cap: DepthCap,
) -> Result<MlTest, MlTestError> {
    let q = q_set.measure();
    if q.is_zero() {
        return Err(MlTestError::ZeroMeasure);
    }
    let mut powers = BTreeMap::new();
    let mut levels = Vec::with_capacity(max_level as usize + 1);
    for k in 0..=max_level {
        let n = amplification_exponent(&q, k)?;
        if let std::collections::btree_map::Entry::Vacant(e) = powers.entry(n) {
            e.insert(q_set.complement().power(n, cap)?);
        }
        levels.push(powers[&n].clone());
    }
    MlTest::new(levels, cap)
}
