//! Minimal ring traits shared by the generic algorithms (Bareiss elimination,
//! dense univariate polynomials, binary forms).
//!
//! Elements carry their own context (a modulus, a variable list), so the
//! traits hand out zeros and ones relative to an existing element.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::modp::Fp;

pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn from_i64_like(&self, v: i64) -> Self;

    fn pow_u32(&self, mut exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A commutative ring without zero divisors in which exact quotients can be
/// recovered.
pub trait IntegralDomain: Ring {
    /// Returns `Some(q)` with `self = q * rhs`, or `None` when no such `q`
    /// exists (or `rhs` is zero).
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

pub trait Field: IntegralDomain {
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigInt::from(v)
    }
}

impl IntegralDomain for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl IntegralDomain for BigRational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.modulus())
    }
    fn one_like(&self) -> Self {
        Fp::one(self.modulus())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Fp::from_i64(v, self.modulus())
    }
}

impl IntegralDomain for Fp {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| *self * r)
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}
