//! Exact integer arithmetic with a checked machine-word fast path.
//!
//! Algorithms in this module are generic over [`ExactInt`]. The `i64`
//! implementation reports overflow as `None`, and callers retry the same
//! algorithm over [`BigInt`], which never overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// A Euclidean ring element usable by the normal-form algorithms.
pub trait ExactInt: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division; `other` is nonzero.
    fn div_floor(&self, other: &Self) -> Option<Self>;
    /// Exact division; `None` also when the remainder is nonzero.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering;
    fn to_bigint(&self) -> BigInt;
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn abs(&self) -> Option<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Some(self.clone())
        }
    }

    /// `self - q * other`.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.sub(&q.mul(other)?)
    }

    fn divides(&self, other: &Self) -> Option<bool> {
        if self.is_zero() {
            return Some(other.is_zero());
        }
        let q = other.div_floor(self)?;
        Some(q.mul(self)? == *other)
    }
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        if *self == i64::MIN && *other == -1 {
            return None;
        }
        Some(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if *self == i64::MIN && *other == -1 {
            return None;
        }
        let (q, r) = self.div_rem(other);
        (r == 0).then_some(q)
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, other))
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// Extended gcd: `(g, x, y)` with `a*x + b*y = g` and `g >= 0`.
pub fn ext_gcd<T: ExactInt>(a: &T, b: &T) -> Option<(T, T, T)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1)?;
        let r2 = r0.sub_mul(&q, &r1)?;
        let s2 = s0.sub_mul(&q, &s1)?;
        let t2 = t0.sub_mul(&q, &t1)?;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Some((r0.neg()?, s0.neg()?, t0.neg()?))
    } else {
        Some((r0, s0, t0))
    }
}

/// Runs `f` over `i64`, falling back to `BigInt` when it overflows.
pub(crate) fn with_fallback<R>(
    fast: impl FnOnce() -> Option<R>,
    slow: impl FnOnce() -> Option<R>,
) -> R {
    fast().or_else(slow).expect("arbitrary-precision arithmetic cannot overflow")
}
