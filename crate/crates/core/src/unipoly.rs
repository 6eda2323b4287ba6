//! Dense univariate polynomials.
//!
//! Coefficients are stored in ascending order and the vector is never empty:
//! the zero polynomial is `[0]`, which keeps the coefficient context (e.g.
//! the modulus of an `Fp`) available.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::ring::{Field, IntegralDomain, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "UniPoly needs at least one coefficient");
        while coeffs.len() > 1 && coeffs.last().is_some_and(Ring::is_zero_elem) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero(template: &T) -> Self {
        UniPoly { coeffs: vec![template.zero_like()] }
    }

    pub fn constant(c: T) -> Self {
        UniPoly { coeffs: vec![c] }
    }

    /// The monomial `c * s^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero_elem()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("nonempty")
    }

    pub fn template(&self) -> T {
        self.coeffs[0].zero_like()
    }

    pub fn scale(&self, c: &T) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn eval(&self, at: &T) -> T {
        let mut acc = self.template();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return UniPoly::zero(&self.coeffs[0]);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * &c.from_i64_like(i as i64 + 1))
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = UniPoly::constant(self.coeffs[0].one_like());
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Multiplicity of the root 0, i.e. the number of leading zero coefficients.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_elem())
    }

    /// Reverses the coefficient list of length `n + 1`; turns f(s) into s^n f(1/s).
    pub fn reversed(&self, n: usize) -> Self {
        let mut c: Vec<T> = (0..=n).map(|k| self.coeff(k)).collect();
        c.reverse();
        UniPoly::new(c)
    }
}

impl<T: IntegralDomain> UniPoly<T> {
    /// Exact division: returns `q` with `self = q * d`, or `InexactDivision`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let n = self.coeffs.len() - 1;
        if n < dd {
            return Err(AlgebraError::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.template(); n - dd + 1];
        let lc = d.leading();
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero_elem() {
                continue;
            }
            let c = top.div_exact(lc).ok_or(AlgebraError::InexactDivision)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(c.clone() * dc);
            }
            q[k] = c;
        }
        if rem.iter().all(Ring::is_zero_elem) {
            Ok(UniPoly::new(q))
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }
}

impl<T: Field> UniPoly<T> {
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv = d.leading().inv().expect("nonzero leading coefficient");
        let Some(n) = self.degree() else {
            return Ok((self.clone(), self.clone()));
        };
        if n < dd {
            return Ok((UniPoly::zero(&self.coeffs[0]), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.template(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone() * &inv;
            if c.is_zero_elem() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(c.clone() * dc);
            }
            q[k] = c;
        }
        rem.truncate(dd.max(1));
        Ok((UniPoly::new(q), UniPoly::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero");
        self.scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Newton interpolation through `(xs[i], ys[i])`; the nodes must be distinct.
    pub fn interpolate(xs: &[T], ys: &[T]) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(!xs.is_empty());
        let n = xs.len();
        let mut dd: Vec<T> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i].clone() - &dd[i - 1];
                let den = xs[i].clone() - &xs[i - level];
                dd[i] = num * &den.inv().expect("distinct interpolation nodes");
            }
        }
        let mut acc = UniPoly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            let lin = UniPoly::new(vec![-xs[i].clone(), xs[i].one_like()]);
            acc = acc * &lin + &UniPoly::constant(dd[i].clone());
        }
        acc
    }
}

fn zip_with<T: Ring>(a: &UniPoly<T>, b: &UniPoly<T>, f: impl Fn(T, &T) -> T) -> UniPoly<T> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|k| f(a.coeff(k), &b.coeff(k))).collect();
    UniPoly::new(coeffs)
}

fn convolve<T: Ring>(a: &UniPoly<T>, b: &UniPoly<T>) -> UniPoly<T> {
    let mut out = vec![a.template(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero_elem() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = out[i + j].clone() + &(x.clone() * y);
        }
    }
    UniPoly::new(out)
}

impl<T: Ring> Add for UniPoly<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        zip_with(&self, &rhs, |x, y| x + y)
    }
}

impl<'a, T: Ring> Add<&'a UniPoly<T>> for UniPoly<T> {
    type Output = Self;
    fn add(self, rhs: &Self) -> Self {
        zip_with(&self, rhs, |x, y| x + y)
    }
}

impl<T: Ring> Sub for UniPoly<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        zip_with(&self, &rhs, |x, y| x - y)
    }
}

impl<'a, T: Ring> Sub<&'a UniPoly<T>> for UniPoly<T> {
    type Output = Self;
    fn sub(self, rhs: &Self) -> Self {
        zip_with(&self, rhs, |x, y| x - y)
    }
}

impl<T: Ring> Mul for UniPoly<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        convolve(&self, &rhs)
    }
}

impl<'a, T: Ring> Mul<&'a UniPoly<T>> for UniPoly<T> {
    type Output = Self;
    fn mul(self, rhs: &Self) -> Self {
        convolve(&self, rhs)
    }
}

impl<T: Ring> Neg for UniPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Ring> Ring for UniPoly<T> {
    fn zero_like(&self) -> Self {
        UniPoly::zero(&self.coeffs[0])
    }
    fn one_like(&self) -> Self {
        UniPoly::constant(self.coeffs[0].one_like())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        UniPoly::constant(self.coeffs[0].from_i64_like(v))
    }
}

impl<T: IntegralDomain> IntegralDomain for UniPoly<T> {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        UniPoly::div_exact(self, rhs).ok()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero_elem() && !(k == 0 && first) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*s")?,
                _ => write!(f, "{c}*s^{k}")?,
            }
        }
        Ok(())
    }
}

// Integer-coefficient helpers: content, primitive parts, subresultant gcd and
// square-free decomposition.
impl UniPoly<BigInt> {
    pub fn from_i64s(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Gcd of the coefficients, sign taken from the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        UniPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let Some(n) = self.degree() else { return self.clone() };
        if n < dd {
            return self.clone();
        }
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            for c in rem.iter_mut() {
                *c *= lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &top * dc;
            }
        }
        rem.truncate(dd.max(1));
        UniPoly::new(rem)
    }

    /// Gcd over Z[s] by the subresultant polynomial remainder sequence, applied
    /// to primitive parts; the content gcd is multiplied back in. The result has
    /// positive leading coefficient.
    pub fn gcd_subresultant(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content().abs());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content().abs());
        }
        let cont = self.content().abs().gcd(&other.content().abs());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                return UniPoly::constant(cont);
            }
            let divisor = &g * h.pow(delta as u32);
            a = b;
            b = UniPoly::new(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.leading().clone();
            h = if delta == 0 {
                h
            } else {
                let num = g.pow(delta as u32);
                let den = h.pow(delta as u32 - 1);
                num / den
            };
        }
        b.primitive_part().scale(&cont)
    }

    /// Yun's square-free decomposition of a primitive polynomial:
    /// `f = prod a_i^i` with each `a_i` square-free, primitive and pairwise coprime.
    /// Returns the nonconstant `(a_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let df = f.derivative();
        let a0 = f.gcd_subresultant(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd_subresultant(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn to_rational(&self) -> UniPoly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl UniPoly<BigRational> {
    /// Clears denominators: returns the primitive integer polynomial with
    /// positive leading coefficient and the rational `u` with `self = u * result`.
    pub fn to_primitive_integer(&self) -> (BigRational, UniPoly<BigInt>) {
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = UniPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        if ints.is_zero() {
            return (BigRational::zero(), ints);
        }
        let cont = ints.content();
        let prim = UniPoly::new(ints.coeffs.iter().map(|c| c / &cont).collect());
        (BigRational::new(cont, den), prim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::Fp;

    fn z(c: &[i64]) -> UniPoly<BigInt> {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn trimming_and_degree() {
        let p = z(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(z(&[0, 0]).is_zero());
        assert_eq!(z(&[0]).degree(), None);
    }

    #[test]
    fn exact_division_over_integers() {
        let f = z(&[-1, 0, 1]); // s^2 - 1
        let g = z(&[-1, 1]);
        assert_eq!(f.div_exact(&g).unwrap(), z(&[1, 1]));
        assert_eq!(f.div_exact(&f).unwrap(), z(&[1]));
        assert_eq!(z(&[1, 0, 1]).div_exact(&g), Err(AlgebraError::InexactDivision));
        // 2s + 1 does not divide 4s^2 - 1 over Z? It does: (2s-1)(2s+1).
        assert_eq!(z(&[-1, 0, 4]).div_exact(&z(&[1, 2])).unwrap(), z(&[-1, 2]));
        // s does not divide 2s^2 + 1
        assert!(z(&[1, 0, 2]).div_exact(&z(&[0, 1])).is_err());
        // 2s does not divide 3s over Z
        assert!(z(&[0, 3]).div_exact(&z(&[0, 2])).is_err());
    }

    #[test]
    fn subresultant_gcd_matches_rational_euclid() {
        let a = z(&[1, 1]) * z(&[-3, 0, 2]) * z(&[5, -1, 7]);
        let b = z(&[1, 1]) * z(&[5, -1, 7]) * z(&[2, 9]);
        let g = a.gcd_subresultant(&b);
        assert_eq!(g, z(&[5, -1, 7]) * z(&[1, 1]));
        let ga = a.to_rational().gcd(&b.to_rational());
        assert_eq!(g.to_rational().monic(), ga);
        assert_eq!(z(&[6, 4]).gcd_subresultant(&z(&[9, 6])), z(&[3, 2]));
        assert_eq!(z(&[1, 1]).gcd_subresultant(&z(&[1, 2])), z(&[1]));
    }

    #[test]
    fn yun_decomposition() {
        let f = z(&[0, 1]).pow(2) * z(&[1, 0, 1]).pow(3) * z(&[-2, 3]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(z(&[-2, 3]), 1), (z(&[0, 1]), 2), (z(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = 1_000_003;
        let f = UniPoly::new(vec![Fp::new(5, p), Fp::new(0, p), Fp::new(7, p), Fp::new(3, p)]);
        let xs: Vec<Fp> = (0..4).map(|i| Fp::from_i64(i - 2, p)).collect();
        let ys: Vec<Fp> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&xs, &ys), f);
    }

    #[test]
    fn rational_to_primitive() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let f = UniPoly::new(vec![q(1, 2), q(-3, 4)]);
        let (u, p) = f.to_primitive_integer();
        assert_eq!(p, z(&[-2, 3]));
        assert_eq!(u, q(-1, 4));
    }
}
