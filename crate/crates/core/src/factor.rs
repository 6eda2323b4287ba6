//! Factorization of univariate polynomials over Z and Q.
//!
//! Square-free parts are factored modulo a single large prime `P` (chosen
//! above twice the Mignotte bound times the leading coefficient) by
//! distinct-degree and Cantor-Zassenhaus equal-degree splitting, after which
//! true factors are recovered by subset recombination and trial division
//! over Z. No Hensel lifting is needed because `P` already bounds every
//! candidate.

use itertools::Itertools;
use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::unipoly::UniPoly;

/// Polynomial arithmetic over GF(P) on ascending coefficient vectors; the
/// zero polynomial is the empty vector.
struct BigField {
    p: BigInt,
}

type Coeffs = Vec<BigInt>;

impl BigField {
    fn norm(&self, v: &BigInt) -> BigInt {
        v.mod_floor(&self.p)
    }

    fn trim(mut v: Coeffs) -> Coeffs {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2u32), &self.p)
    }

    fn reduce(&self, f: &UniPoly<BigInt>) -> Coeffs {
        Self::trim(f.coeffs().iter().map(|c| self.norm(c)).collect())
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Coeffs {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| self.norm(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))))
            .collect();
        Self::trim(v)
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Coeffs {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::trim(out.iter().map(|c| self.norm(c)).collect())
    }

    fn scale(&self, a: &[BigInt], c: &BigInt) -> Coeffs {
        Self::trim(a.iter().map(|x| self.norm(&(x * c))).collect())
    }

    fn monic(&self, a: &[BigInt]) -> Coeffs {
        match a.last() {
            None => Vec::new(),
            Some(lc) => self.scale(a, &self.inv(lc)),
        }
    }

    fn div_rem(&self, a: &[BigInt], b: &[BigInt]) -> (Coeffs, Coeffs) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b.last().unwrap());
        let db = b.len() - 1;
        let mut rem = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.norm(&(&rem[k + db] * &inv));
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.iter().enumerate() {
                rem[k + j] = self.norm(&(&rem[k + j] - &c * bc));
            }
            q[k] = c;
        }
        rem.truncate(db);
        (Self::trim(q), Self::trim(rem))
    }

    fn rem(&self, a: &[BigInt], m: &[BigInt]) -> Coeffs {
        self.div_rem(a, m).1
    }

    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> Coeffs {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    fn pow_mod(&self, base: &[BigInt], exp: &BigInt, m: &[BigInt]) -> Coeffs {
        let mut acc = vec![BigInt::one()];
        let b = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        self.rem(&acc, m)
    }

    fn derivative(&self, a: &[BigInt]) -> Coeffs {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.norm(&(c * BigInt::from(i))))
                .collect(),
        )
    }

    /// Distinct-degree factorization of a monic square-free `f`, using the
    /// matrix of the Frobenius map `g -> g^P mod f`.
    fn distinct_degree(&self, f: &[BigInt]) -> Vec<(Coeffs, usize)> {
        let n = f.len() - 1;
        let x = vec![BigInt::zero(), BigInt::one()];
        let xp = self.pow_mod(&x, &self.p, f);
        let mut frob = vec![vec![BigInt::one()]];
        for i in 1..n {
            let next = self.rem(&self.mul(&frob[i - 1], &xp), f);
            frob.push(next);
        }
        let apply = |g: &[BigInt]| -> Coeffs {
            let mut acc = vec![BigInt::zero(); n];
            for (gi, row) in g.iter().zip(&frob) {
                if gi.is_zero() {
                    continue;
                }
                for (k, c) in row.iter().enumerate() {
                    acc[k] += gi * c;
                }
            }
            Self::trim(acc.iter().map(|c| self.norm(c)).collect())
        };
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() - 1 >= 2 * (d + 1) {
            d += 1;
            h = apply(&h);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                out.push((g, d));
            }
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((self.monic(&rest), deg));
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles
    /// of degree `d`.
    fn equal_degree(&self, g: Coeffs, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Coeffs>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g);
            return;
        }
        let exp = (self.p.pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Coeffs = Self::trim((0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &exp, &g), &[BigInt::one()]);
            let c = self.gcd(&g, &b);
            if c.len() > 1 && c.len() < g.len() {
                let other = self.monic(&self.div_rem(&g, &c).0);
                self.equal_degree(c, d, rng, out);
                self.equal_degree(other, d, rng, out);
                return;
            }
        }
    }
}

fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(from: &BigInt) -> BigInt {
    let mut c = from.clone();
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c) {
        c += 2;
    }
    c
}

/// Maps a residue to the symmetric range `(-P/2, P/2]`.
fn symmetric(v: &BigInt, p: &BigInt) -> BigInt {
    let half = p >> 1;
    if v > &half {
        v - p
    } else {
        v.clone()
    }
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive square-free polynomial of degree at least one.
pub fn factor_squarefree(f: &UniPoly<BigInt>) -> Vec<UniPoly<BigInt>> {
    let n = f.degree().expect("nonzero polynomial");
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let lc = f.leading().abs();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = &lc * (BigInt::one() << n) * BigInt::from(n + 1) * &max;
    let mut p = next_prime(&(BigInt::from(2) * bound + 1u32));
    let (field, monic) = loop {
        let field = BigField { p: p.clone() };
        if !(f.leading() % &p).is_zero() {
            let fr = field.monic(&field.reduce(f));
            if field.gcd(&fr, &field.derivative(&fr)).len() == 1 {
                break (field, fr);
            }
        }
        p = next_prime(&(&p + 2u32));
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x6b33_6d6f_64);
    let mut modular = Vec::new();
    for (g, d) in field.distinct_degree(&monic) {
        field.equal_degree(g, d, &mut rng, &mut modular);
    }
    modular.sort();

    // Recombination: try subsets in increasing size.
    let mut remaining = f.primitive_part();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in (0..modular.len()).combinations(size) {
            let lc_rem = remaining.leading().clone();
            let mut prod = vec![field.norm(&lc_rem)];
            for &i in &subset {
                prod = field.mul(&prod, &modular[i]);
            }
            let cand = UniPoly::new(prod.iter().map(|c| symmetric(c, &field.p)).collect()).primitive_part();
            if let Ok(q) = remaining.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                let keep: Vec<Coeffs> = modular
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                modular = keep;
            }
            None => size += 1,
        }
    }
    if remaining.degree().unwrap_or(0) > 0 {
        found.push(remaining.primitive_part());
    }
    found.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    found
}

/// Complete factorization over Z: content (signed) and irreducible primitive
/// factors with multiplicities.
pub fn factor_integer(f: &UniPoly<BigInt>) -> (BigInt, Vec<(UniPoly<BigInt>, u32)>) {
    if f.is_zero() {
        return (BigInt::zero(), Vec::new());
    }
    let content = f.content();
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    (content, out)
}

/// Complete factorization over Q into a unit and monic irreducible factors.
pub fn factor_rational(f: &UniPoly<BigRational>) -> (BigRational, Vec<(UniPoly<BigRational>, u32)>) {
    let (unit, prim) = f.to_primitive_integer();
    if prim.is_zero() {
        return (unit, Vec::new());
    }
    let mut lead = unit;
    let (_, factors) = factor_integer(&prim);
    let mut out = Vec::new();
    for (g, m) in factors {
        let lc = BigRational::from_integer(g.leading().clone());
        for _ in 0..m {
            lead = &lead * &lc;
        }
        out.push((g.to_rational().monic(), m));
    }
    (lead, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> UniPoly<BigInt> {
        UniPoly::from_i64s(c)
    }

    fn expand(content: &BigInt, factors: &[(UniPoly<BigInt>, u32)]) -> UniPoly<BigInt> {
        let mut acc = UniPoly::constant(content.clone());
        for (g, m) in factors {
            acc = acc * g.pow(*m);
        }
        acc
    }

    #[test]
    fn splits_products_of_linears() {
        let f = z(&[-1, 1]) * z(&[2, 1]) * z(&[-3, 2]) * z(&[5, 7]) * z(&[0, 1]);
        let (c, fs) = factor_integer(&f);
        assert_eq!(fs.len(), 5);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(expand(&c, &fs), f);
    }

    #[test]
    fn keeps_irreducibles_whole() {
        // x^4 + 1 splits modulo every prime but is irreducible over Q.
        let f = z(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
        let g = z(&[1, 0, 1]).pow(3) * z(&[-2, 0, 1]);
        let (c, fs) = factor_integer(&g);
        assert_eq!(fs, vec![(z(&[-2, 0, 1]), 1), (z(&[1, 0, 1]), 3)]);
        assert_eq!(expand(&c, &fs), g);
    }

    #[test]
    fn cyclotomic_pieces() {
        // x^12 - 1 = product of cyclotomic polynomials of orders 1,2,3,4,6,12.
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let (_, fs) = factor_integer(&z(&c));
        let degrees: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn rational_factorization_is_monic() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let f = UniPoly::new(vec![q(-3, 2), q(0, 1), q(2, 3)]); // (2/3)(x^2 - 9/4)
        let (unit, fs) = factor_rational(&f);
        assert_eq!(unit, q(2, 3));
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, _)| g.leading() == &q(1, 1)));
    }
}
