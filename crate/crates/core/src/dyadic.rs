//! Exact dyadic rationals `a / 2^k`.
//!
//! Every measure in the crate is a finite sum of powers of two, so this is
//! the only numeric carrier used for measures and weights. Values are kept in
//! canonical form: the numerator is odd, or the value is `0/2^0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigUint,
    log_denominator: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed dyadic `{0}` (expected `a/2^k`)")]
pub struct ParseDyadicError(pub String);

impl Dyadic {
    pub fn new(numerator: impl Into<BigUint>, log_denominator: u32) -> Self {
        let mut numerator = numerator.into();
        let mut log_denominator = log_denominator;
        if numerator.is_zero() {
            return Self::zero();
        }
        let shift = numerator
            .trailing_zeros()
            .map(|z| z.min(u64::from(log_denominator)))
            .unwrap_or(0);
        if shift > 0 {
            numerator >>= shift;
            log_denominator -= shift as u32;
        }
        Self {
            numerator,
            log_denominator,
        }
    }

    pub fn zero() -> Self {
        Self {
            numerator: BigUint::zero(),
            log_denominator: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            numerator: BigUint::one(),
            log_denominator: 0,
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Self {
            numerator: BigUint::one(),
            log_denominator: k,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn log_denominator(&self) -> u32 {
        self.log_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.log_denominator == 0 && self.numerator.is_one()
    }

    /// Numerator rescaled to denominator `2^k`; `k` must be at least the
    /// canonical exponent.
    fn scaled(&self, k: u32) -> BigUint {
        debug_assert!(k >= self.log_denominator);
        &self.numerator << (k - self.log_denominator)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let k = self.log_denominator.max(other.log_denominator);
        let a = self.scaled(k);
        let b = other.scaled(k);
        if a < b {
            None
        } else {
            Some(Self::new(a - b, k))
        }
    }

    /// `1 - self`, or `None` when `self > 1`.
    pub fn complement(&self) -> Option<Self> {
        Self::one().checked_sub(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            numerator: self.numerator.pow(n),
            log_denominator: self.log_denominator * n,
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: u32) -> Self {
        if k <= self.log_denominator {
            Self {
                numerator: self.numerator.clone(),
                log_denominator: self.log_denominator - k,
            }
        } else {
            Self::new(&self.numerator << (k - self.log_denominator), 0)
        }
    }

    /// Divide by `2^k`.
    pub fn shr(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            numerator: self.numerator.clone(),
            log_denominator: self.log_denominator + k,
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.log_denominator.max(other.log_denominator);
        self.scaled(k).cmp(&other.scaled(k))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let k = self.log_denominator.max(rhs.log_denominator);
        Dyadic::new(self.scaled(k) + rhs.scaled(k), k)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd numerators stays odd
        Dyadic::new(
            &self.numerator * &rhs.numerator,
            self.log_denominator + rhs.log_denominator,
        )
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Self {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.log_denominator)
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some(parts) => parts,
            None => (t, "2^0"),
        };
        let numerator: BigUint = num.trim().parse().map_err(|_| err())?;
        let exp = den
            .trim()
            .strip_prefix("2^")
            .ok_or_else(err)?
            .parse::<u32>()
            .map_err(|_| err())?;
        Ok(Dyadic::new(numerator, exp))
    }
}
