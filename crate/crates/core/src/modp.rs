//! Residues modulo an odd prime below 2^62.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{AlgebraError, Result};

/// Largest prime below 2^62; the default modulus for fast checks.
pub const DEFAULT_PRIME: u64 = (1 << 62) - 57;
/// The next prime below [`DEFAULT_PRIME`].
pub const SECOND_PRIME: u64 = (1 << 62) - 87;

/// A residue in `[0, p)`. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Checks that `p` is usable as a modulus: an odd prime below 2^62.
pub fn check_modulus(p: u64) -> Result<u64> {
    if p > 2 && p < (1 << 62) && is_prime_u64(p) {
        Ok(p)
    } else {
        Err(AlgebraError::BadModulus(p))
    }
}

impl Fp {
    /// Caller guarantees `modulus` passed [`check_modulus`].
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let r = (value as i128).rem_euclid(modulus as i128);
        Fp { value: r as u64, modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        Fp { value: r.to_u64().expect("residue fits"), modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Fp { value: 1, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        Fp { value: pow_mod(self.value, exp, self.modulus), modulus: self.modulus }
    }

    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(Fp { value: t0.rem_euclid(self.modulus as i128) as u64, modulus: self.modulus })
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn to_signed_bigint(self) -> BigInt {
        let v = BigInt::from(self.value);
        if self.value > self.modulus / 2 {
            v - BigInt::from(self.modulus)
        } else {
            v
        }
    }

    fn same_modulus(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in Fp arithmetic");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.same_modulus(rhs);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.same_modulus(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        Fp { value: v, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.same_modulus(rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

impl<'a> Add<&'a Fp> for Fp {
    type Output = Fp;
    fn add(self, rhs: &Fp) -> Fp {
        self + *rhs
    }
}

impl<'a> Sub<&'a Fp> for Fp {
    type Output = Fp;
    fn sub(self, rhs: &Fp) -> Fp {
        self - *rhs
    }
}

impl<'a> Mul<&'a Fp> for Fp {
    type Output = Fp;
    fn mul(self, rhs: &Fp) -> Fp {
        self * *rhs
    }
}

/// Reduces a signed big integer into `[0, p)` without going through `Fp`.
pub(crate) fn bigint_residue(value: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = if value.is_negative() { value.mod_floor(&m) } else { value % &m };
    r.to_u64().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_primes_are_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(SECOND_PRIME));
        assert_eq!(64 - DEFAULT_PRIME.leading_zeros(), 62);
        for n in (DEFAULT_PRIME + 1)..(1u64 << 62) {
            assert!(!is_prime_u64(n));
        }
    }

    #[test]
    fn small_primes_match_trial_division() {
        for n in 0u64..2000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "n = {n}");
        }
    }

    #[test]
    fn modulus_validation() {
        assert!(check_modulus(2).is_err());
        assert!(check_modulus(9).is_err());
        assert!(check_modulus(1 << 62).is_err());
        assert_eq!(check_modulus(101), Ok(101));
    }

    #[test]
    fn inverse_and_signed_lift() {
        let p = 1_000_003;
        for v in [1u64, 2, 17, p - 1, 123_456] {
            let x = Fp::new(v, p);
            assert_eq!(x * x.inverse().unwrap(), Fp::one(p));
        }
        assert!(Fp::zero(p).inverse().is_none());
        assert_eq!(Fp::from_i64(-5, p).to_signed_bigint(), BigInt::from(-5));
        assert_eq!(bigint_residue(&BigInt::from(-1), 7), 6);
    }
}
