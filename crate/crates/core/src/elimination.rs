//! Sylvester matrices, resultants and discriminants of binary forms,
//! square-free/irreducible decomposition over Q, and exact division.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::binary_form::BinaryForm;
use crate::error::{AlgebraError, Result};
use crate::factor::factor_rational;
use crate::matrix::Matrix;
use crate::multipoly::{MultiPoly, PolyRing};
use crate::ring::{IntegralDomain, Ring};
use crate::scalar::{Domain, Scalar};
use crate::unipoly::UniPoly;

/// Sylvester matrix of `f` (degree m) and `g` (degree n): `n` shifted rows of
/// `f`'s coefficients followed by `m` shifted rows of `g`'s. Coefficient
/// arrays are used as given, leading entry first.
pub fn sylvester_matrix<T: Ring>(f: &BinaryForm<T>, g: &BinaryForm<T>) -> Result<Matrix<T>> {
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return Err(AlgebraError::DegreeTooSmall { op: "sylvester_matrix", min: 1, got: 0 });
    }
    let size = m + n;
    let mut out = Matrix::filled(size, size, f.template());
    for r in 0..n {
        for (j, c) in f.coeffs().iter().enumerate() {
            out[(r, r + j)] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.coeffs().iter().enumerate() {
            out[(n + r, r + j)] = c.clone();
        }
    }
    Ok(out)
}

/// `det(sylvester_matrix(f, g))` by fraction-free elimination.
pub fn resultant<T: IntegralDomain>(f: &BinaryForm<T>, g: &BinaryForm<T>) -> Result<T> {
    Ok(sylvester_matrix(f, g)?.determinant())
}

/// `Res(df/dx, df/dw)`: vanishes exactly when `f` has a repeated factor and
/// has degree `2(n-1)` in the coefficients of `f`.
pub fn discriminant_binary<T: IntegralDomain>(f: &BinaryForm<T>) -> Result<T> {
    if f.degree() < 2 {
        return Err(AlgebraError::DegreeTooSmall { op: "discriminant_binary", min: 2, got: f.degree() });
    }
    let (fx, fw) = f.partials()?;
    resultant(&fx, &fw)
}

/// A place of P^1 over Q: the point at infinity `w = 0`, or the closed point
/// cut out by a monic irreducible `p(x)` (homogenized as `w^deg p * p(x/w)`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinity,
    Finite(UniPoly<BigRational>),
}

impl Place {
    pub fn residue_degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.degree().unwrap_or(0),
        }
    }

    /// Vanishing order of a binary form at this place; `None` for the zero form.
    pub fn order_of(&self, f: &BinaryForm<BigRational>) -> Option<u32> {
        if f.is_zero() {
            return None;
        }
        match self {
            Place::Infinity => f.order_at_infinity().map(|k| k as u32),
            Place::Finite(p) => {
                let mut g = f.dehomogenize();
                let mut k = 0;
                loop {
                    let (q, r) = g.div_rem(p).expect("nonzero place polynomial");
                    if !r.is_zero() {
                        return Some(k);
                    }
                    g = q;
                    k += 1;
                }
            }
        }
    }

    /// The place as a binary form in `(x, w)`.
    pub fn to_form(&self) -> BinaryForm<BigRational> {
        match self {
            Place::Infinity => BinaryForm::monomial(1, 1, BigRational::one()),
            Place::Finite(p) => {
                BinaryForm::homogenize(p, p.degree().unwrap_or(0)).expect("degree fits")
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = self.to_form();
        let ring = PolyRing::unweighted(&["x", "w"], Domain::Rational);
        let n = form.degree() as u32;
        let terms = form
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![n - i as u32, i as u32], Scalar::Rat(c.clone())));
        let poly = MultiPoly::from_terms(&ring, terms).expect("well-formed terms");
        write!(f, "{poly}")
    }
}

/// Decomposes a nonzero binary form over Q into places with multiplicities:
/// monic irreducible factors of `f(x, 1)` followed by the place `w` when
/// `w | f`. Multiplicities times residue degrees sum to `deg f`.
pub fn gcd_and_squarefree(f: &BinaryForm<BigRational>) -> Result<Vec<(Place, u32)>> {
    let at_inf = f.order_at_infinity().ok_or(AlgebraError::ZeroPolynomial)?;
    let (_, factors) = factor_rational(&f.dehomogenize());
    let mut out: Vec<(Place, u32)> = factors.into_iter().map(|(p, m)| (Place::Finite(p), m)).collect();
    if at_inf > 0 {
        out.push((Place::Infinity, at_inf as u32));
    }
    Ok(out)
}

/// Whether two nonzero forms share a root on P^1 (including `[1:0]`).
pub fn share_root(f: &BinaryForm<BigRational>, g: &BinaryForm<BigRational>) -> bool {
    if f.is_zero() || g.is_zero() {
        return true;
    }
    if f.order_at_infinity() > Some(0) && g.order_at_infinity() > Some(0) {
        return true;
    }
    f.dehomogenize().gcd(&g.dehomogenize()).degree().unwrap_or(0) > 0
}

/// Whether a nonzero form is square-free on P^1.
pub fn is_squarefree(f: &BinaryForm<BigRational>) -> bool {
    if f.is_zero() || f.order_at_infinity() > Some(1) {
        return false;
    }
    let p = f.dehomogenize();
    p.gcd(&p.derivative()).degree().unwrap_or(0) == 0
}

/// Polynomials supporting an exact quotient.
pub trait ExactQuotient: Sized {
    fn exact_quotient(&self, divisor: &Self) -> Result<Self>;
}

impl ExactQuotient for MultiPoly {
    fn exact_quotient(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        self.div_exact(divisor)
    }
}

impl<T: IntegralDomain> ExactQuotient for UniPoly<T> {
    fn exact_quotient(&self, divisor: &Self) -> Result<Self> {
        self.div_exact(divisor)
    }
}

/// `q` with `f = q * g`, or `InexactDivision`.
pub fn exact_divide<P: ExactQuotient>(f: &P, g: &P) -> Result<P> {
    f.exact_quotient(g)
}

/// Converts a form with integer or rational scalar coefficients to rationals.
pub fn to_rational_form(f: &BinaryForm<Scalar>) -> Result<BinaryForm<BigRational>> {
    let mut out = Vec::with_capacity(f.degree() + 1);
    for c in f.coeffs() {
        out.push(c.to_rational().ok_or(AlgebraError::DomainMismatch(Domain::Rational, c.domain()))?);
    }
    BinaryForm::new(out)
}
