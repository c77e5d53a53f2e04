//! Exact non-negative counts: `u128` fast path that escalates to `BigUint`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Exact count of embeddings (or products/sums of such counts).
///
/// Values that fit in `u128` are always stored inline, so equality and
/// ordering never depend on the representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EmbeddingCount(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u128),
    Big(BigUint),
}

impl EmbeddingCount {
    pub const ZERO: EmbeddingCount = EmbeddingCount(Repr::Small(0));
    pub const ONE: EmbeddingCount = EmbeddingCount(Repr::Small(1));

    pub fn from_big(v: BigUint) -> Self {
        match v.to_u128() {
            Some(s) => Self(Repr::Small(s)),
            None => Self(Repr::Big(v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn to_u128(&self) -> Option<u128> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(v) => v.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(v) => *v as f64,
            Repr::Big(v) => v.to_f64().unwrap_or(f64::INFINITY),
        }
    }
}

impl From<u128> for EmbeddingCount {
    fn from(v: u128) -> Self {
        Self(Repr::Small(v))
    }
}

impl From<u64> for EmbeddingCount {
    fn from(v: u64) -> Self {
        Self(Repr::Small(v as u128))
    }
}

impl From<BigUint> for EmbeddingCount {
    fn from(v: BigUint) -> Self {
        Self::from_big(v)
    }
}

impl Add for &EmbeddingCount {
    type Output = EmbeddingCount;
    fn add(self, rhs: &EmbeddingCount) -> EmbeddingCount {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return EmbeddingCount(Repr::Small(s));
            }
        }
        EmbeddingCount::from_big(self.to_biguint() + rhs.to_biguint())
    }
}

impl Add for EmbeddingCount {
    type Output = EmbeddingCount;
    fn add(self, rhs: EmbeddingCount) -> EmbeddingCount {
        &self + &rhs
    }
}

impl Mul for &EmbeddingCount {
    type Output = EmbeddingCount;
    fn mul(self, rhs: &EmbeddingCount) -> EmbeddingCount {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return EmbeddingCount(Repr::Small(s));
            }
        }
        EmbeddingCount::from_big(self.to_biguint() * rhs.to_biguint())
    }
}

impl Mul for EmbeddingCount {
    type Output = EmbeddingCount;
    fn mul(self, rhs: EmbeddingCount) -> EmbeddingCount {
        &self * &rhs
    }
}

impl Ord for EmbeddingCount {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for EmbeddingCount {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for EmbeddingCount {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        EmbeddingCount::is_zero(self)
    }
}

impl std::iter::Sum for EmbeddingCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| &a + &b)
    }
}

impl fmt::Display for EmbeddingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for EmbeddingCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EmbeddingCount({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escalates_and_normalises() {
        let big = EmbeddingCount::from(u128::MAX);
        let two = EmbeddingCount::from(2u64);
        let prod = &big * &two;
        assert!(prod.to_u128().is_none());
        assert!(prod > big);
        assert_eq!(prod.to_biguint(), BigUint::from(u128::MAX) * 2u32);
        let back = EmbeddingCount::from_big(BigUint::from(7u32));
        assert_eq!(back, EmbeddingCount::from(7u64));
        assert_eq!(&big + &EmbeddingCount::ONE, EmbeddingCount::from_big(BigUint::from(u128::MAX) + 1u32));
    }
}
