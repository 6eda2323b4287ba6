//! The coefficient domain: arbitrary-precision integers, normalized rationals,
//! or residues modulo an odd prime. Mixing domains is an error; nothing is
//! promoted implicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::modp::{bigint_residue, Fp};
use crate::ring::{IntegralDomain, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Domain {
    Integer,
    Rational,
    ModP(u64),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => write!(f, "ZZ"),
            Domain::Rational => write!(f, "QQ"),
            Domain::ModP(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(Fp),
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Int(_) => Domain::Integer,
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Mod(x) => Domain::ModP(x.modulus()),
        }
    }

    pub fn zero(domain: Domain) -> Self {
        Scalar::from_i64(0, domain)
    }

    pub fn one(domain: Domain) -> Self {
        Scalar::from_i64(1, domain)
    }

    pub fn from_i64(v: i64, domain: Domain) -> Self {
        match domain {
            Domain::Integer => Scalar::Int(BigInt::from(v)),
            Domain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Domain::ModP(p) => Scalar::Mod(Fp::from_i64(v, p)),
        }
    }

    pub fn from_bigint(v: BigInt, domain: Domain) -> Self {
        match domain {
            Domain::Integer => Scalar::Int(v),
            Domain::Rational => Scalar::Rat(BigRational::from_integer(v)),
            Domain::ModP(p) => Scalar::Mod(Fp::from_bigint(&v, p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(x) => x.is_one(),
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => x.value() == 1,
        }
    }

    /// Sign for display purposes; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(x) => x.is_negative(),
            Scalar::Rat(x) => x.is_negative(),
            Scalar::Mod(_) => false,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.domain() == other.domain() {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(self.domain(), other.domain()))
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(*a + *b),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a - b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(*a - *b),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(*a * *b),
            _ => unreachable!(),
        })
    }

    /// Exact quotient: integers must divide evenly; fields divide by any nonzero.
    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check(rhs)?;
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(AlgebraError::InexactDivision)
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Mod(a), Scalar::Mod(b)) => Ok(Scalar::Mod(*a * b.inverse().expect("nonzero"))),
            _ => unreachable!(),
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        self.pow_u32(exp)
    }

    /// Image in GF(p). Rationals need a denominator prime to `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        Ok(Scalar::Mod(match self {
            Scalar::Int(a) => Fp::new(bigint_residue(a, p), p),
            Scalar::Rat(a) => {
                let den = Fp::new(bigint_residue(a.denom(), p), p);
                let inv = den
                    .inverse()
                    .ok_or_else(|| AlgebraError::NotReducible(a.to_string(), p))?;
                Fp::new(bigint_residue(a.numer(), p), p) * inv
            }
            Scalar::Mod(x) if x.modulus() == p => *x,
            Scalar::Mod(x) => {
                return Err(AlgebraError::DomainMismatch(Domain::ModP(x.modulus()), Domain::ModP(p)))
            }
        }))
    }

    /// Integers and rationals as a rational number; residues have no such image.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(a) => Some(BigRational::from_integer(a.clone())),
            Scalar::Rat(a) => Some(a.clone()),
            Scalar::Mod(_) => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(a) => Some(a),
            _ => None,
        }
    }

    /// Parses `"-12"`, `"3/4"` or a residue, interpreting the text in `domain`.
    pub fn parse(text: &str, domain: Domain) -> Result<Scalar> {
        let text = text.trim();
        let bad = || AlgebraError::Parse(format!("invalid number {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(AlgebraError::Parse(format!("zero denominator in {text:?}")));
        }
        let q = BigRational::new(num, den);
        match domain {
            Domain::Integer if q.is_integer() => Ok(Scalar::Int(q.to_integer())),
            Domain::Integer => Err(AlgebraError::Parse(format!("{text:?} is not an integer"))),
            Domain::Rational => Ok(Scalar::Rat(q)),
            Domain::ModP(p) => Scalar::Rat(q).reduce_mod(p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Scalar::Rat(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            Scalar::Mod(a) => write!(f, "{a}"),
        }
    }
}

// Operator impls panic on domain mismatch; the `try_*` methods are the
// checked surface.
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.try_add(&rhs).expect("scalar add")
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar add")
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.try_sub(&rhs).expect("scalar sub")
    }
}

impl<'a> Sub<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar sub")
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.try_mul(&rhs).expect("scalar mul")
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar mul")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(-a),
        }
    }
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.domain())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.domain())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Scalar::from_i64(v, self.domain())
    }
}

impl IntegralDomain for Scalar {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        match self.try_div(rhs) {
            Ok(q) => Some(q),
            Err(AlgebraError::DomainMismatch(a, b)) => panic!("scalar division across {a} and {b}"),
            Err(_) => None,
        }
    }
}
