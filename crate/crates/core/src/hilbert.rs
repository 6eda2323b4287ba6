//! Graded dimensions of the SL2-invariants of `Sym^8 V x Sym^12 V`.
//!
//! [`molien_series`] evaluates the Molien-Weyl residue formula by expanding
//! every factor `1 / (1 - q^a t^b)` t-adically, so each t-coefficient is a
//! Laurent polynomial in `q`, and reading off the `q^-1` coefficient of
//! `(q^-1 - q)` times the product. [`invariant_dimension_oracle`] computes the
//! same numbers independently as kernel dimensions of the raising operator on
//! the torus-weight-0 part of the polynomial ring.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::binary_form::BinaryForm;
use crate::conventions::{G2_DEGREE, G2_WEIGHT, G3_DEGREE, G3_WEIGHT, ORACLE_BOUND};
use crate::error::{AlgebraError, Result};
use crate::invariants::{grading_constants, surface_ring};
use crate::matrix::Matrix;
use crate::multipoly::{MultiPoly, PolyRing};
use crate::scalar::{Domain, Scalar};

/// Torus weight `q^(2i - n)` and grading weight `t^w` of every coordinate
/// `u_{n-i,i}`, in the order of [`surface_ring`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusWeightTable {
    pub entries: Vec<(i32, u32)>,
}

impl TorusWeightTable {
    pub fn standard() -> Self {
        let mut entries = Vec::new();
        for (n, w) in [(G2_DEGREE as i32, G2_WEIGHT), (G3_DEGREE as i32, G3_WEIGHT)] {
            for i in 0..=n {
                entries.push((2 * i - n, w));
            }
        }
        TorusWeightTable { entries }
    }

    pub fn q_weight(&self, exps: &[u32]) -> i64 {
        exps.iter().zip(&self.entries).map(|(&e, &(q, _))| i64::from(e) * i64::from(q)).sum()
    }

    pub fn t_weight(&self, exps: &[u32]) -> u64 {
        exps.iter().zip(&self.entries).map(|(&e, &(_, t))| u64::from(e) * u64::from(t)).sum()
    }
}

/// `sum_k coefficients[k] t^k`, truncated after `t^N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    pub coefficients: Vec<u128>,
}

impl HilbertSeries {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn get(&self, k: usize) -> u128 {
        self.coefficients.get(k).copied().unwrap_or(0)
    }
}

/// Molien-Weyl coefficients for t-degrees `0..=n`. Counts are exact; an
/// overflow of 128-bit arithmetic or a negative residue is reported as an
/// error instead of being wrapped.
pub fn molien_series(n: usize) -> Result<HilbertSeries> {
    let table = TorusWeightTable::standard();
    let max_q = table.entries.iter().map(|&(q, t)| (q.unsigned_abs() as usize).div_ceil(t as usize)).max().unwrap_or(0);
    // |q| <= max_q * k at t-degree k
    let offset = max_q * n + 2;
    let width = 2 * offset + 1;
    let mut c = vec![vec![0u128; width]; n + 1];
    c[0][offset] = 1;
    for &(q, t) in &table.entries {
        let t = t as usize;
        for k in t..=n {
            let (lo, hi) = c.split_at_mut(k);
            let src = &lo[k - t];
            let dst = &mut hi[0];
            for (j, &v) in src.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let target = j as i64 + i64::from(q);
                let slot = &mut dst[usize::try_from(target).map_err(|_| AlgebraError::Overflow("q range"))?];
                *slot = slot.checked_add(v).ok_or(AlgebraError::Overflow("molien_series"))?;
            }
        }
    }
    let mut coefficients = Vec::with_capacity(n + 1);
    for row in &c {
        let diff = row[offset]
            .checked_sub(row[offset - 2])
            .ok_or(AlgebraError::Overflow("negative residue in molien_series"))?;
        coefficients.push(diff);
    }
    Ok(HilbertSeries { coefficients })
}

/// The tangent vector of the substitution action at the identity along
/// `[[1, 0], [eps, 1]]`: coordinate `j` moves by `sum (k, c)` of `c * u_k`.
fn vector_field() -> &'static Vec<Vec<(usize, i64)>> {
    static FIELD: OnceLock<Vec<Vec<(usize, i64)>>> = OnceLock::new();
    FIELD.get_or_init(derive_vector_field)
}

fn derive_vector_field() -> Vec<Vec<(usize, i64)>> {
    let base = surface_ring(Domain::Integer);
    let mut names = base.vars().to_vec();
    names.push("eps".into());
    let mut weights = base.weights().to_vec();
    weights.push(0);
    let ring = PolyRing::new(names, weights, Domain::Integer).expect("fresh name");
    let eps_index = ring.nvars() - 1;
    let one = MultiPoly::one(&ring);
    let zero = MultiPoly::zero(&ring);
    let eps = MultiPoly::var(&ring, eps_index);
    let gamma = [[one.clone(), zero], [eps, one]];
    let mut field = Vec::new();
    let mut first = 0;
    for n in [G2_DEGREE, G3_DEGREE] {
        let form = BinaryForm::new((0..=n).map(|i| MultiPoly::var(&ring, first + i)).collect()).expect("nonempty");
        let moved = form.substitute(&gamma);
        for c in moved.coeffs() {
            let tangent = c
                .derivative(eps_index)
                .specialize(eps_index, &Scalar::zero(Domain::Integer))
                .expect("same domain");
            let mut lin = Vec::new();
            for (e, coeff) in tangent.terms() {
                let k = e.iter().position(|&x| x == 1).expect("linear in u");
                let v = coeff.as_int().and_then(|v| i64::try_from(v).ok()).expect("small integer");
                lin.push((k, v));
            }
            field.push(lin);
        }
        first += n + 1;
    }
    field
}

fn apply_to_monomial(exps: &[u32], mut emit: impl FnMut(Vec<u32>, i64)) {
    for (j, lin) in vector_field().iter().enumerate() {
        let e = exps[j];
        if e == 0 {
            continue;
        }
        for &(k, c) in lin {
            let mut m = exps.to_vec();
            m[j] -= 1;
            m[k] += 1;
            emit(m, i64::from(e) * c);
        }
    }
}

/// The infinitesimal action of `[[1, 0], [eps, 1]]` on polynomials in the
/// 22 coordinates: a derivation raising the torus weight by 2 and killing
/// every SL2-invariant.
pub fn raising_operator(p: &MultiPoly) -> Result<MultiPoly> {
    let ring = p.ring();
    if ring.nvars() != G2_DEGREE + G3_DEGREE + 2 {
        return Err(AlgebraError::LengthMismatch { expected: G2_DEGREE + G3_DEGREE + 2, got: ring.nvars() });
    }
    let domain = ring.domain();
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        apply_to_monomial(e, |m, k| terms.push((m, c.clone() * Scalar::from_i64(k, domain))));
    }
    MultiPoly::from_terms(ring, terms)
}

/// Monomials of t-degree `d` and torus weight `q` in the 22 coordinates.
pub fn weight_basis(d: usize, q: i64) -> Vec<Vec<u32>> {
    let table = TorusWeightTable::standard();
    let split = G2_DEGREE + 1;
    let mut out = Vec::new();
    let (w2, w3) = (G2_WEIGHT as usize, G3_WEIGHT as usize);
    for a in 0..=d / w2 {
        let rest = d - a * w2;
        if rest % w3 != 0 {
            continue;
        }
        let b = rest / w3;
        let left = monomials_by_weight(&table.entries[..split], a);
        let right = monomials_by_weight(&table.entries[split..], b);
        for (ql, ms) in &left {
            let Some(others) = right.get(&(q - ql)) else { continue };
            for l in ms {
                for r in others {
                    let mut m = l.clone();
                    m.extend_from_slice(r);
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// Degree-`deg` monomials in a block of variables, grouped by torus weight.
fn monomials_by_weight(block: &[(i32, u32)], deg: usize) -> HashMap<i64, Vec<Vec<u32>>> {
    let mut out: HashMap<i64, Vec<Vec<u32>>> = HashMap::new();
    let mut current = vec![0u32; block.len()];
    fn rec(block: &[(i32, u32)], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut HashMap<i64, Vec<Vec<u32>>>) {
        if i + 1 == block.len() {
            cur[i] = left;
            let q = cur.iter().zip(block).map(|(&e, &(q, _))| i64::from(e) * i64::from(q)).sum();
            out.entry(q).or_default().push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(block, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(block, 0, deg as u32, &mut current, &mut out);
    out
}

/// How an oracle rank was certified.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankCertificate {
    /// No monomials of this weight: nothing to eliminate.
    Empty,
    /// Full rank modulo a prime, which forces full rank over Q.
    FullRankModP,
    /// Fraction-free elimination over Z.
    Exact,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OracleResult {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub certificate: RankCertificate,
}

/// Sparse rows of the raising map from torus weight 0 to torus weight 2.
fn raising_rows(d: usize) -> (Vec<Vec<u32>>, Vec<Vec<(usize, i64)>>, usize) {
    let sources = weight_basis(d, 0);
    let targets = weight_basis(d, 2);
    let index: HashMap<&[u32], usize> = targets.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let rows = sources
        .iter()
        .map(|m| {
            let mut row: Vec<(usize, i64)> = Vec::new();
            apply_to_monomial(m, |img, c| {
                let col = index[img.as_slice()];
                match row.iter_mut().find(|(k, _)| *k == col) {
                    Some((_, v)) => *v += c,
                    None => row.push((col, c)),
                }
            });
            row.retain(|&(_, v)| v != 0);
            row
        })
        .collect();
    (sources, rows, targets.len())
}

const RANK_PRIME: u64 = 2_147_483_647;

fn rank_mod_p(rows: &[Vec<(usize, i64)>], cols: usize) -> usize {
    let p = RANK_PRIME;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![0u64; cols];
            for &(j, v) in r {
                dense[j] = v.rem_euclid(p as i64) as u64;
            }
            dense
        })
        .collect();
    let inv = |a: u64| crate::modp::Fp::new(a, p).inverse().expect("nonzero").value();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(piv, rank);
        let scale = inv(m[rank][col]);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&v| v * scale % p).collect();
        m[rank + 1..].par_iter_mut().for_each(|row| {
            let f = row[col];
            if f == 0 {
                return;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        });
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Dimension of the degree-`d` SL2-invariants, computed as the kernel of the
/// raising operator on the torus-weight-0 monomials. Refuses `d` above
/// [`ORACLE_BOUND`].
pub fn invariant_dimension_oracle(d: usize) -> Result<usize> {
    Ok(oracle_details(d)?.kernel_dim)
}

pub fn oracle_details(d: usize) -> Result<OracleResult> {
    if d > ORACLE_BOUND {
        return Err(AlgebraError::OracleBound { degree: d, bound: ORACLE_BOUND });
    }
    let (sources, rows, cols) = raising_rows(d);
    let n = sources.len();
    if n == 0 || cols == 0 {
        let certificate = RankCertificate::Empty;
        return Ok(OracleResult { degree: d, source_dim: n, target_dim: cols, rank: 0, kernel_dim: n, certificate });
    }
    let rp = rank_mod_p(&rows, cols);
    let (rank, certificate) = if rp == n.min(cols) {
        (rp, RankCertificate::FullRankModP)
    } else {
        let dense = Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    let mut v = vec![BigInt::from(0); cols];
                    for &(j, c) in r {
                        v[j] = BigInt::from(c);
                    }
                    v
                })
                .collect(),
        );
        (dense.rank_fraction_free(), RankCertificate::Exact)
    };
    Ok(OracleResult { degree: d, source_dim: n, target_dim: cols, rank, kernel_dim: n - rank, certificate })
}

/// Oracle results for every t-degree `0..=max`, computed in parallel.
pub fn oracle_table(max: usize) -> Result<Vec<OracleResult>> {
    (0..=max).into_par_iter().map(oracle_details).collect()
}

/// A basis of the degree-`d` invariants over Q, as polynomials in the
/// coordinates of [`surface_ring`].
pub fn invariant_basis(d: usize) -> Result<Vec<MultiPoly>> {
    if d > ORACLE_BOUND {
        return Err(AlgebraError::OracleBound { degree: d, bound: ORACLE_BOUND });
    }
    let (sources, rows, cols) = raising_rows(d);
    let ring: Arc<PolyRing> = surface_ring(Domain::Rational);
    if sources.is_empty() {
        return Ok(Vec::new());
    }
    let zero = BigRational::from_integer(BigInt::from(0));
    // columns of this matrix are the source monomials
    let mut m = Matrix::filled(cols.max(1), sources.len(), zero.clone());
    for (s, row) in rows.iter().enumerate() {
        for &(t, c) in row {
            m[(t, s)] = BigRational::from_integer(BigInt::from(c));
        }
    }
    m.kernel_basis(&zero)
        .into_iter()
        .map(|v| {
            let den_lcm = v.iter().fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
            let terms = sources.iter().zip(&v).filter(|(_, c)| *c != &zero).map(|(e, c)| {
                let scaled = c * BigRational::from_integer(den_lcm.clone());
                (e.clone(), Scalar::Rat(scaled))
            });
            MultiPoly::from_terms(&ring, terms)
        })
        .collect()
}

/// The plain series and its extension by a generator of weight
/// `borcherds_weight`: `with_characters = (1 + t^132) * plain`.
pub fn character_series(n: usize) -> Result<(HilbertSeries, HilbertSeries)> {
    let plain = molien_series(n)?;
    let shift = grading_constants().borcherds_weight as usize;
    let mut with = plain.coefficients.clone();
    for k in shift..=n {
        with[k] = with[k]
            .checked_add(plain.coefficients[k - shift])
            .ok_or(AlgebraError::Overflow("character_series"))?;
    }
    Ok((plain, HilbertSeries { coefficients: with }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_coefficients() {
        let h = molien_series(40).unwrap();
        let expected: [u128; 41] = [
            1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 2, 0, 1, 0, 3, 0, 3, 0, 7, 0, 6, 0, 16, 0, 16, 0, 32, 0, 40, 0,
            71, 0, 88, 0, 155, 0, 201, 0, 324,
        ];
        assert_eq!(h.coefficients, expected);
    }

    #[test]
    fn torus_weights_are_symmetric() {
        let t = TorusWeightTable::standard();
        assert_eq!(t.entries.len(), 22);
        let qs: Vec<i32> = t.entries.iter().map(|e| e.0).collect();
        let mut neg: Vec<i32> = qs.iter().map(|q| -q).collect();
        neg.sort();
        let mut sorted = qs.clone();
        sorted.sort();
        assert_eq!(sorted, neg);
    }

    #[test]
    fn vector_field_shifts_indices() {
        let f = vector_field();
        // u_{8-j,j} moves by (j + 1) u_{7-j,j+1}
        assert_eq!(f[0], vec![(1, 1)]);
        assert_eq!(f[7], vec![(8, 8)]);
        assert!(f[8].is_empty());
        assert_eq!(f[9], vec![(10, 1)]);
        assert!(f[21].is_empty());
    }

    #[test]
    fn small_oracle_values() {
        assert_eq!(invariant_dimension_oracle(0).unwrap(), 1);
        assert_eq!(invariant_dimension_oracle(4).unwrap(), 0);
        assert_eq!(invariant_dimension_oracle(6).unwrap(), 0);
        assert_eq!(invariant_dimension_oracle(8).unwrap(), 1);
        assert_eq!(invariant_dimension_oracle(12).unwrap(), 2);
        assert!(invariant_dimension_oracle(25).is_err());
    }

    #[test]
    fn quadratic_octic_invariant_is_killed() {
        let basis = invariant_basis(8).unwrap();
        assert_eq!(basis.len(), 1);
        let p = &basis[0];
        assert!(raising_operator(p).unwrap().is_zero());
        let wd = p.weighted_degree().unwrap();
        assert!(wd.homogeneous && wd.degree == 8);
    }

    #[test]
    fn character_extension() {
        let (plain, with) = character_series(300).unwrap();
        for k in 0..=300 {
            let extra = if k >= 132 { plain.get(k - 132) } else { 0 };
            assert_eq!(with.get(k), plain.get(k) + extra);
        }
        assert_eq!(with.get(132), plain.get(132) + 1);
    }
}
