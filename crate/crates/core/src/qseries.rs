//! Truncated Laurent series in `q` with exact rational coefficients, the
//! Eisenstein series `E4`, `E6`, and the weight -2 form
//! `1728 E4 / (E4^3 - E6^2) = q^-1 + 264 + 8244 q + ...`.
//!
//! `E6` is computed from its divisor-sum definition, `1 - 504 sum sigma_5(n) q^n`,
//! so its `q^2` coefficient is `-504 * 33 = -16632`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};

/// `sum_{e = start}^{prec} coeffs[e - start] q^e + O(q^(prec + 1))`.
///
/// Stored coefficients start and end with a nonzero entry, so equal series
/// compare equal; the zero series stores nothing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    start: i64,
    coeffs: Vec<BigRational>,
    prec: i64,
}

impl QSeries {
    /// Builds a series from coefficients of `q^start, q^(start+1), ...`,
    /// discarding anything beyond `q^prec`.
    pub fn new(start: i64, mut coeffs: Vec<BigRational>, prec: i64) -> Self {
        let keep = usize::try_from(prec - start + 1).unwrap_or(0);
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let start = if coeffs.is_empty() { prec + 1 } else { start + lead as i64 };
        QSeries { start, coeffs, prec }
    }

    pub fn from_integers(start: i64, coeffs: &[i64], prec: i64) -> Self {
        QSeries::new(start, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), prec)
    }

    /// Valuation (exponent of the leading term); `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// The largest exponent whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^e`, or `None` if `e` exceeds the precision.
    pub fn coeff(&self, e: i64) -> Option<BigRational> {
        if e > self.prec {
            return None;
        }
        let idx = e - self.start;
        Some(if idx < 0 { BigRational::zero() } else { self.coeffs.get(idx as usize).cloned().unwrap_or_else(BigRational::zero) })
    }

    /// `(exponent, coefficient)` for every exponent from the valuation up to
    /// the precision.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i as i64, c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QSeries::new(self.start, self.coeffs.iter().map(|a| a * c).collect(), self.prec)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let prec = self.prec.min(other.prec);
        let start = self.start.min(other.start);
        let sign = BigRational::from_integer(sign.into());
        let coeffs = (start..=prec)
            .map(|e| self.coeff(e).unwrap_or_default() + other.coeff(e).unwrap_or_default() * &sign)
            .collect();
        QSeries::new(start, coeffs, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.prec + other.start).min(other.prec + self.start);
        let start = self.start + other.start;
        let len = usize::try_from(prec - start + 1).unwrap_or(0);
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                out[i + j] += a * b;
            }
        }
        QSeries::new(start, out, prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        // the exact series 1
        let mut acc = QSeries::new(0, vec![BigRational::one()], i64::MAX / 4);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 / self`, known to the same relative precision.
    pub fn reciprocal(&self) -> Result<Self> {
        let v = self.valuation().ok_or(AlgebraError::ZeroSeries)?;
        let n = (self.prec - v) as usize;
        let inv0 = BigRational::one() / &self.coeffs[0];
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = BigRational::zero();
            for (j, b) in out.iter().enumerate() {
                if let Some(a) = self.coeffs.get(k - j) {
                    s += a * b;
                }
            }
            out.push(-s * &inv0);
        }
        Ok(QSeries::new(-v, out, self.prec - 2 * v))
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Whether every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec + 1)
    }
}

/// `sigma_k(n)` by direct divisor enumeration.
pub fn divisor_sum(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E_k = 1 + c_k sum_{n >= 1} sigma_{k-1}(n) q^n` to `q^n`, with
/// `c_4 = 240` and `c_6 = -504`.
pub fn eisenstein(k: u32, n: usize) -> Result<QSeries> {
    let c = match k {
        4 => 240,
        6 => -504,
        other => return Err(AlgebraError::UnsupportedWeight(other)),
    };
    let mut coeffs = vec![BigRational::one()];
    for m in 1..=n as u64 {
        coeffs.push(BigRational::from_integer(divisor_sum(m, k - 1) * c));
    }
    Ok(QSeries::new(0, coeffs, n as i64))
}

/// `E4^3 - E6^2 = 1728 q - 41472 q^2 + ...` to `q^n`.
pub fn cusp_combination(n: usize) -> Result<QSeries> {
    let e4 = eisenstein(4, n)?;
    let e6 = eisenstein(6, n)?;
    Ok(e4.pow(3).sub(&e6.pow(2)))
}

/// `1728 E4 / (E4^3 - E6^2)` with every coefficient up to `q^n` exact.
pub fn borcherds_input(n: usize) -> Result<QSeries> {
    let m = n + 2;
    let e4 = eisenstein(4, m)?;
    let denom = cusp_combination(m)?;
    let out = e4.scale(&BigRational::from_integer(1728.into())).divide(&denom)?;
    debug_assert_eq!(out.precision(), n as i64);
    Ok(out)
}
