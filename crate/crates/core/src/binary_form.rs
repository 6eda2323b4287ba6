//! Binary forms in `(x, w)`: a degree `n` and `n + 1` coefficients, entry `i`
//! being the coefficient of `x^(n-i) w^i`.

use crate::error::{AlgebraError, Result};
use crate::ring::Ring;
use crate::unipoly::UniPoly;

/// A 2x2 matrix `[[a, b], [c, d]]` acting by `f(x, w) -> f(a x + b w, c x + d w)`.
pub type Mat2<T> = [[T; 2]; 2];

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> BinaryForm<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(AlgebraError::LengthMismatch { expected: 1, got: 0 });
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn zero(degree: usize, template: &T) -> Self {
        BinaryForm { coeffs: vec![template.zero_like(); degree + 1] }
    }

    /// `c * x^(n-i) * w^i`.
    pub fn monomial(degree: usize, i: usize, c: T) -> Self {
        let mut f = BinaryForm::zero(degree, &c);
        f.coeffs[i] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn template(&self) -> T {
        self.coeffs[0].zero_like()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero_elem)
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> BinaryForm<U> {
        BinaryForm { coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn check_same_degree(&self, other: &Self) -> Result<()> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(AlgebraError::LengthMismatch { expected: self.coeffs.len(), got: other.coeffs.len() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b).collect();
        Ok(BinaryForm { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b).collect();
        Ok(BinaryForm { coeffs })
    }

    pub fn scale(&self, c: &T) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect() }
    }

    /// Product of forms; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BinaryForm::zero(self.degree() + other.degree(), &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = BinaryForm { coeffs: vec![self.coeffs[0].one_like()] };
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(a x + b w, c x + d w)`. Under this convention `subst(f, g h) =
    /// subst(subst(f, g), h)`, i.e. it is a right action.
    pub fn substitute(&self, gamma: &Mat2<T>) -> Self {
        let n = self.degree();
        let first = BinaryForm { coeffs: vec![gamma[0][0].clone(), gamma[0][1].clone()] };
        let second = BinaryForm { coeffs: vec![gamma[1][0].clone(), gamma[1][1].clone()] };
        let one = BinaryForm { coeffs: vec![self.coeffs[0].one_like()] };
        let mut first_pows = vec![one.clone()];
        let mut second_pows = vec![one];
        for k in 1..=n {
            first_pows.push(first_pows[k - 1].mul(&first));
            second_pows.push(second_pows[k - 1].mul(&second));
        }
        let mut out = BinaryForm::zero(n, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            let term = first_pows[n - i].mul(&second_pows[i]).scale(a);
            out = out.add(&term).expect("same degree");
        }
        out
    }

    /// `(df/dx, df/dw)`, both of degree `n - 1`.
    pub fn partials(&self) -> Result<(Self, Self)> {
        let n = self.degree();
        if n == 0 {
            return Err(AlgebraError::DegreeTooSmall { op: "binary_partials", min: 1, got: 0 });
        }
        let t = &self.coeffs[0];
        let dx = (0..n).map(|i| self.coeffs[i].clone() * &t.from_i64_like((n - i) as i64)).collect();
        let dw = (0..n)
            .map(|i| self.coeffs[i + 1].clone() * &t.from_i64_like(i as i64 + 1))
            .collect();
        Ok((BinaryForm { coeffs: dx }, BinaryForm { coeffs: dw }))
    }

    /// Multiplies by `x` (first) or `w` (second): degree goes up by one.
    pub fn times_x(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.push(self.template());
        BinaryForm { coeffs: c }
    }

    pub fn times_w(&self) -> Self {
        let mut c = vec![self.template()];
        c.extend(self.coeffs.iter().cloned());
        BinaryForm { coeffs: c }
    }

    pub fn evaluate(&self, x: &T, w: &T) -> T {
        let mut acc = self.template();
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = self.degree();
            acc = acc + &(c.clone() * &x.pow_u32((n - i) as u32) * &w.pow_u32(i as u32));
        }
        acc
    }

    /// Order of vanishing at the place `w = 0`, or `None` for the zero form.
    pub fn order_at_infinity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_elem())
    }

    /// `f(x, 1)` as a polynomial in `x` (ascending coefficients).
    pub fn dehomogenize(&self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Inverse of [`Self::dehomogenize`] for a chosen degree `n >= deg p`.
    pub fn homogenize(p: &UniPoly<T>, n: usize) -> Result<Self> {
        let deg = p.degree().unwrap_or(0);
        if deg > n {
            return Err(AlgebraError::DegreeTooSmall { op: "homogenize", min: deg, got: n });
        }
        let coeffs = (0..=n).map(|i| p.coeff(n - i)).collect();
        Ok(BinaryForm { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn form(c: &[i64]) -> BinaryForm<BigInt> {
        BinaryForm::new(c.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
    }

    fn mat(a: i64, b: i64, c: i64, d: i64) -> Mat2<BigInt> {
        [[a.into(), b.into()], [c.into(), d.into()]]
    }

    #[test]
    fn linear_form_substitution() {
        let x = form(&[1, 0]);
        assert_eq!(x.substitute(&mat(2, 3, 5, 7)), form(&[2, 3]));
    }

    #[test]
    fn binomial_shear() {
        let x8 = BinaryForm::monomial(8, 0, BigInt::from(1));
        let sheared = x8.substitute(&mat(1, 1, 0, 1));
        assert_eq!(sheared, form(&[1, 8, 28, 56, 70, 56, 28, 8, 1]));
        assert_eq!(x8.substitute(&mat(1, 0, 0, 1)), x8);
    }

    #[test]
    fn partials_and_errors() {
        let x2 = form(&[1, 0, 0]);
        let (dx, dw) = x2.partials().unwrap();
        assert_eq!(dx, form(&[2, 0]));
        assert!(dw.is_zero());
        let mut c = vec![0i64; 9];
        c[0] = 1;
        c[8] = 1;
        let (dx, dw) = form(&c).partials().unwrap();
        let mut ex = vec![0i64; 8];
        ex[0] = 8;
        let mut ew = vec![0i64; 8];
        ew[7] = 8;
        assert_eq!(dx, form(&ex));
        assert_eq!(dw, form(&ew));
        assert!(form(&[5]).partials().is_err());
    }

    #[test]
    fn dehomogenize_round_trip() {
        let f = form(&[0, 3, 0, 2]); // 3 x^2 w + 2 w^3
        assert_eq!(f.order_at_infinity(), Some(1));
        let p = f.dehomogenize();
        assert_eq!(p, UniPoly::from_i64s(&[2, 0, 3]));
        assert_eq!(BinaryForm::homogenize(&p, 3).unwrap(), f);
    }
}
