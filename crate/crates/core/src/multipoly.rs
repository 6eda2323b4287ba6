//! Sparse multivariate polynomials with a per-variable weight table.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors in graded-lex order,
//! so iteration (and therefore printing) is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::ring::{IntegralDomain, Ring};
use crate::scalar::{Domain, Scalar};

/// Variable names, their weights, and the coefficient domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    vars: Vec<String>,
    weights: Vec<u32>,
    domain: Domain,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, weights: Vec<u32>, domain: Domain) -> Result<Arc<PolyRing>> {
        if vars.len() != weights.len() {
            return Err(AlgebraError::LengthMismatch { expected: vars.len(), got: weights.len() });
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(AlgebraError::Parse(format!("bad or repeated variable name {v:?}")));
            }
        }
        Ok(Arc::new(PolyRing { vars, weights, domain }))
    }

    /// All variables of weight 1.
    pub fn unweighted(vars: &[&str], domain: Domain) -> Arc<PolyRing> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let weights = vec![1; vars.len()];
        PolyRing::new(vars, weights, domain).expect("valid variable names")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and weights over another domain.
    pub fn with_domain(&self, domain: Domain) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: self.vars.clone(), weights: self.weights.clone(), domain })
    }
}

/// Exponent vector ordered graded-lex: total degree first, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WeightedDegree {
    pub homogeneous: bool,
    /// The common weighted degree if homogeneous, otherwise the largest one.
    pub degree: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponents, Scalar>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Result<Self> {
        Self::from_terms(ring, [(vec![0; ring.nvars()], c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Scalar::one(ring.domain)).expect("domain matches")
    }

    pub fn from_i64(ring: &Arc<PolyRing>, v: i64) -> Self {
        Self::constant(ring, Scalar::from_i64(v, ring.domain)).expect("domain matches")
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[index] = 1;
        Self::from_terms(ring, [(e, Scalar::one(ring.domain))]).expect("domain matches")
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name:?}")))?;
        Ok(Self::var(ring, i))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = MultiPoly::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(AlgebraError::LengthMismatch { expected: ring.nvars(), got: e.len() });
            }
            if c.domain() != ring.domain {
                return Err(AlgebraError::DomainMismatch(ring.domain, c.domain()));
            }
            p.add_term(Exponents(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn domain(&self) -> Domain {
        self.ring.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring.domain))
    }

    /// The constant term, or `None` if the polynomial involves any variable.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.ring.domain)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.0.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn same_ring(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else if self.ring.vars == other.ring.vars && self.ring.weights == other.ring.weights {
            Err(AlgebraError::DomainMismatch(self.ring.domain, other.ring.domain))
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(rhs)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponents(e), ca.clone() * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<MultiPoly> {
        if c.domain() != self.ring.domain {
            return Err(AlgebraError::DomainMismatch(self.ring.domain, c.domain()));
        }
        let mut out = MultiPoly::zero(&self.ring);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c);
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        self.pow_u32(exp)
    }

    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        let mut degrees = self.terms.keys().map(|e| self.term_weight(&e.0));
        let first = degrees.next().ok_or(AlgebraError::ZeroPolynomial)?;
        let (mut lo, mut hi) = (first, first);
        for d in degrees {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok(WeightedDegree { homogeneous: lo == hi, degree: hi })
    }

    fn term_weight(&self, e: &[u32]) -> u64 {
        e.iter().zip(&self.ring.weights).map(|(&x, &w)| x as u64 * w as u64).sum()
    }

    /// Exact evaluation by a recursive Horner scheme over the variables.
    pub fn evaluate_at(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        if let Some(c) = point.iter().find(|c| c.domain() != self.ring.domain) {
            return Err(AlgebraError::DomainMismatch(self.ring.domain, c.domain()));
        }
        let terms: Vec<(&[u32], &Scalar)> = self.terms().collect();
        Ok(horner(&terms, 0, point, self.ring.domain))
    }

    /// Term-by-term evaluation; kept as a cross-check for [`Self::evaluate_at`].
    pub fn evaluate_naive(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let mut acc = Scalar::zero(self.ring.domain);
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t.try_mul(&x.pow(k))?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.0.clone();
            e2[var] -= 1;
            out.add_term(Exponents(e2), c.clone() * Scalar::from_i64(k as i64, self.ring.domain));
        }
        out
    }

    /// Substitutes a constant for one variable (the variable stays in the ring).
    pub fn specialize(&self, var: usize, value: &Scalar) -> Result<MultiPoly> {
        if value.domain() != self.ring.domain {
            return Err(AlgebraError::DomainMismatch(self.ring.domain, value.domain()));
        }
        let mut out = MultiPoly::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e.0[var];
            let mut e2 = e.0.clone();
            e2[var] = 0;
            out.add_term(Exponents(e2), c.clone() * value.pow(k));
        }
        Ok(out)
    }

    /// Coefficient-wise image in GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<MultiPoly> {
        let ring = self.ring.with_domain(Domain::ModP(p));
        let mut out = MultiPoly::zero(&ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Exact multivariate division by repeated leading-term cancellation.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(d)?;
        let (lead_e, lead_c) = d.terms.iter().next_back().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.ring);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if !lead_e.divides(e) {
                return Err(AlgebraError::InexactDivision);
            }
            let qc = c.try_div(lead_c)?;
            let qe = Exponents(e.0.iter().zip(&lead_e.0).map(|(a, b)| a - b).collect());
            let qt = MultiPoly { ring: self.ring.clone(), terms: BTreeMap::from([(qe, qc)]) };
            rem = rem.try_sub(&qt.try_mul(d)?)?;
            quot = quot.try_add(&qt)?;
        }
        Ok(quot)
    }
}

/// Free-standing form of the three ring operations.
pub fn poly_arithmetic(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Sub => a.try_sub(b),
        PolyOp::Mul => a.try_mul(b),
    }
}

fn horner(terms: &[(&[u32], &Scalar)], var: usize, point: &[Scalar], domain: Domain) -> Scalar {
    if terms.is_empty() {
        return Scalar::zero(domain);
    }
    if var == point.len() {
        return terms.iter().fold(Scalar::zero(domain), |acc, (_, c)| acc + *c);
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Scalar)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(*t);
    }
    let x = &point[var];
    let mut acc = Scalar::zero(domain);
    let mut prev: Option<u32> = None;
    for (&k, group) in groups.iter().rev() {
        if let Some(p) = prev {
            acc = acc * x.pow(p - k);
        }
        acc = acc + horner(group, var + 1, point, domain);
        prev = Some(k);
    }
    acc * x.pow(prev.unwrap_or(0))
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.try_add(&rhs).expect("polynomial add")
    }
}

impl<'a> Add<&'a MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.try_sub(&rhs).expect("polynomial sub")
    }
}

impl<'a> Sub<&'a MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.try_mul(&rhs).expect("polynomial mul")
    }
}

impl<'a> Mul<&'a MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MultiPoly { ring: self.ring, terms }
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.ring)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        MultiPoly::from_i64(&self.ring, v)
    }
}

impl IntegralDomain for MultiPoly {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, rhs).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(domain: Domain) -> Arc<PolyRing> {
        PolyRing::unweighted(&["x", "w"], domain)
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Domain::Integer);
        let x = MultiPoly::var(&r, 0);
        let w = MultiPoly::var(&r, 1);
        let p = (x.clone() + &w) * (x.clone() - &w);
        let expected = x.pow(2) - w.pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(poly_arithmetic(&p, &MultiPoly::zero(&r), PolyOp::Add).unwrap(), p);
    }

    #[test]
    fn rational_coefficients_normalize() {
        let r = ring(Domain::Rational);
        let a = MultiPoly::var(&r, 0).scale(&Scalar::parse("3/2", Domain::Rational).unwrap()).unwrap();
        let b = MultiPoly::var(&r, 1).scale(&Scalar::parse("2/3", Domain::Rational).unwrap()).unwrap();
        let p = a * b;
        assert_eq!(p.coefficient(&[1, 1]), Scalar::one(Domain::Rational));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = MultiPoly::var(&ring(Domain::Integer), 0);
        let b = MultiPoly::var(&ring(Domain::Rational), 0);
        let c = MultiPoly::var(&PolyRing::unweighted(&["x", "y"], Domain::Integer), 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::DomainMismatch(..))));
        assert_eq!(a.try_mul(&c), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn weighted_degrees() {
        let r = PolyRing::new(vec!["a".into(), "b".into()], vec![4, 6], Domain::Integer).unwrap();
        let a = MultiPoly::var(&r, 0);
        let b = MultiPoly::var(&r, 1);
        assert_eq!(a.weighted_degree().unwrap(), WeightedDegree { homogeneous: true, degree: 4 });
        assert_eq!((a.clone() * &b).weighted_degree().unwrap().degree, 10);
        assert!(!(a + &b).weighted_degree().unwrap().homogeneous);
        assert_eq!(MultiPoly::zero(&r).weighted_degree(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn evaluation() {
        let r = ring(Domain::Integer);
        let x = MultiPoly::var(&r, 0);
        let w = MultiPoly::var(&r, 1);
        let p = x.pow(2) - w.pow(2);
        let pt = [Scalar::from_i64(3, Domain::Integer), Scalar::from_i64(2, Domain::Integer)];
        assert_eq!(p.evaluate_at(&pt).unwrap(), Scalar::from_i64(5, Domain::Integer));
        let q = p + &MultiPoly::from_i64(&r, 7);
        let origin = [Scalar::zero(Domain::Integer), Scalar::zero(Domain::Integer)];
        assert_eq!(q.evaluate_at(&origin).unwrap(), Scalar::from_i64(7, Domain::Integer));
        assert!(q.evaluate_at(&origin[..1]).is_err());
    }

    #[test]
    fn exact_division() {
        let r = ring(Domain::Integer);
        let x = MultiPoly::var(&r, 0);
        let w = MultiPoly::var(&r, 1);
        let f = x.pow(2) - w.pow(2);
        assert_eq!(f.div_exact(&(x.clone() - &w)).unwrap(), x.clone() + &w);
        assert_eq!(f.div_exact(&f).unwrap(), MultiPoly::one(&r));
        assert_eq!(f.div_exact(&(x.clone() + &x)), Err(AlgebraError::InexactDivision));
        assert_eq!((x.pow(2) + w.pow(2)).div_exact(&(x + &w)), Err(AlgebraError::InexactDivision));
    }
}
