//! The `SL2 x Gm` action on the parameter space and the invariants
//! `r96 = Res(g2, g3)`, `k552 = disc(h)` and `delta264 = k552 / r96^3`.
//!
//! None of these is ever expanded in all 22 variables. They are evaluated at
//! points by fraction-free determinants, and restricted to lines by
//! evaluation at enough nodes followed by interpolation.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::binary_form::Mat2;
use crate::conventions::{CONVENTION_TAG, G2_DEGREE, G2_WEIGHT, G3_DEGREE, G3_WEIGHT, H_DEGREE};
use crate::elimination::{discriminant_binary, resultant};
use crate::error::{AlgebraError, Result};
use crate::modp::Fp;
use crate::multipoly::PolyRing;
use crate::scalar::{Domain, Scalar};
use crate::unipoly::UniPoly;
use crate::weierstrass::{assemble, SurfaceParams};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantName {
    R96,
    K552,
    Delta264,
}

impl InvariantName {
    pub fn weight(self) -> u32 {
        let c = grading_constants();
        match self {
            InvariantName::R96 => c.resultant_weight,
            InvariantName::K552 => c.discriminant_weight,
            InvariantName::Delta264 => c.relation_weight,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "r96" => Some(InvariantName::R96),
            "k552" => Some(InvariantName::K552),
            "delta264" => Some(InvariantName::Delta264),
            _ => None,
        }
    }
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantName::R96 => write!(f, "r96"),
            InvariantName::K552 => write!(f, "k552"),
            InvariantName::Delta264 => write!(f, "delta264"),
        }
    }
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvariantValue {
    pub name: InvariantName,
    #[serde(serialize_with = "serialize_display")]
    pub value: Scalar,
    pub declared_weight: u32,
    pub convention_tag: &'static str,
}

impl InvariantValue {
    fn new(name: InvariantName, value: Scalar) -> Self {
        InvariantValue { name, value, declared_weight: name.weight(), convention_tag: CONVENTION_TAG }
    }
}

fn check_same_domain(a: Domain, b: Domain) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::DomainMismatch(a, b))
    }
}

/// `u -> (g2(a x + b w, c x + d w), g3(a x + b w, c x + d w))` for `det = 1`.
pub fn sl2_act(gamma: &Mat2<Scalar>, u: &SurfaceParams) -> Result<SurfaceParams> {
    for c in gamma.iter().flatten() {
        check_same_domain(u.domain(), c.domain())?;
    }
    let det = gamma[0][0].try_mul(&gamma[1][1])?.try_sub(&gamma[0][1].try_mul(&gamma[1][0])?)?;
    if !det.is_one() {
        return Err(AlgebraError::NotUnimodular);
    }
    SurfaceParams::from_forms(&u.g2_form().substitute(gamma), &u.g3_form().substitute(gamma))
}

/// Scales `g2` coefficients by `lambda^4` and `g3` coefficients by `lambda^6`.
pub fn gm_act(lambda: &Scalar, u: &SurfaceParams) -> Result<SurfaceParams> {
    check_same_domain(u.domain(), lambda.domain())?;
    if lambda.is_zero() {
        return Err(AlgebraError::ZeroScale);
    }
    let l2 = lambda.pow(G2_WEIGHT);
    let l3 = lambda.pow(G3_WEIGHT);
    let g2 = u.g2_coeffs().iter().map(|c| c.clone() * &l2).collect();
    let g3 = u.g3_coeffs().iter().map(|c| c.clone() * &l3).collect();
    SurfaceParams::new(g2, g3)
}

/// A uniformly chosen matrix with entries in `[-bound, bound]` and determinant 1.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R, bound: i64, domain: Domain) -> Mat2<Scalar> {
    loop {
        let [a, b, c, d]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
        if a * d - b * c == 1 {
            let s = |v| Scalar::from_i64(v, domain);
            return [[s(a), s(b)], [s(c), s(d)]];
        }
    }
}

/// Inverse of a unimodular matrix.
pub fn sl2_inverse(gamma: &Mat2<Scalar>) -> Mat2<Scalar> {
    let [[a, b], [c, d]] = gamma.clone();
    [[d, -b], [-c, a]]
}

/// Matrix product `g h`.
pub fn mat2_mul(g: &Mat2<Scalar>, h: &Mat2<Scalar>) -> Mat2<Scalar> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| g[i][0].clone() * &h[0][j] + &(g[i][1].clone() * &h[1][j]))
    })
}

pub(crate) fn r96_value(u: &SurfaceParams) -> Scalar {
    resultant(&u.g2_form(), &u.g3_form()).expect("degrees 8 and 12")
}

/// `disc(h)`, which is 0 when `h` vanishes identically.
pub(crate) fn k552_value(u: &SurfaceParams) -> Scalar {
    discriminant_binary(&assemble(u).h).expect("degree 24")
}

/// `Res(g2, g3)` from the 20 x 20 Sylvester determinant.
pub fn r96(u: &SurfaceParams) -> Result<InvariantValue> {
    Ok(InvariantValue::new(InvariantName::R96, r96_value(u)))
}

/// `Res(h_x, h_w)` from the 46 x 46 Sylvester determinant.
pub fn k552(u: &SurfaceParams) -> Result<InvariantValue> {
    if assemble(u).h.is_zero() {
        return Err(AlgebraError::DegenerateFamily);
    }
    Ok(InvariantValue::new(InvariantName::K552, k552_value(u)))
}

/// `k552 / r96^3`. Over the integers the quotient must be an integer; an
/// inexact division is reported as [`AlgebraError::InexactDivision`].
pub fn delta264(u: &SurfaceParams) -> Result<InvariantValue> {
    Ok(factorization(u)?.2)
}

/// `(r96, k552, delta264)` at one point, each determinant computed once.
pub fn factorization(u: &SurfaceParams) -> Result<(InvariantValue, InvariantValue, InvariantValue)> {
    let r = r96(u)?;
    if r.value.is_zero() {
        return Err(AlgebraError::ResultantVanishes);
    }
    let k = k552(u)?;
    let q = k.value.try_div(&r.value.pow(3))?;
    Ok((r, k, InvariantValue::new(InvariantName::Delta264, q)))
}

/// Outcome of an exact division `k552(u(s)) / r96(u(s))^3` on a line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SliceProof {
    pub modulus: Option<u64>,
    pub r96_degree: usize,
    /// `None` when `k552` vanishes identically on the line.
    pub k552_degree: Option<usize>,
    pub quotient_degree: Option<usize>,
    pub exact: bool,
    #[serde(skip)]
    pub quotient: UniPoly<Scalar>,
    #[serde(skip)]
    pub r96_slice: UniPoly<Scalar>,
    #[serde(skip)]
    pub k552_slice: UniPoly<Scalar>,
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
fn nodes(count: usize) -> Vec<i64> {
    (0..count as i64).map(|k| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) }).collect()
}

/// Restriction `s -> f(u0 + s u1)` of a polynomial function of degree at most
/// `degree` along the line.
fn restrict(
    u0: &SurfaceParams,
    u1: &SurfaceParams,
    degree: usize,
    f: impl Fn(&SurfaceParams) -> Scalar + Sync,
) -> Result<UniPoly<Scalar>> {
    let domain = u0.domain();
    let xs = nodes(degree + 1);
    let ys = xs
        .par_iter()
        .map(|&s| u0.along(u1, &Scalar::from_i64(s, domain)).map(|u| f(&u)))
        .collect::<Result<Vec<_>>>()?;
    let poly = interpolate(&xs, &ys, domain)?;
    // one extra node guards against an understated degree bound
    let extra = xs.len() as i64;
    let s = Scalar::from_i64(extra, domain);
    if poly.eval(&s) != f(&u0.along(u1, &s)?) {
        return Err(AlgebraError::InexactDivision);
    }
    Ok(poly)
}

fn interpolate(xs: &[i64], ys: &[Scalar], domain: Domain) -> Result<UniPoly<Scalar>> {
    match domain {
        Domain::ModP(p) => {
            let fx: Vec<Fp> = xs.iter().map(|&x| Fp::from_i64(x, p)).collect();
            let fy: Vec<Fp> = ys
                .iter()
                .map(|y| match y {
                    Scalar::Mod(v) => Ok(*v),
                    other => Err(AlgebraError::DomainMismatch(domain, other.domain())),
                })
                .collect::<Result<_>>()?;
            Ok(UniPoly::interpolate(&fx, &fy).map(|c| Scalar::Mod(*c)))
        }
        Domain::Integer | Domain::Rational => {
            let qx: Vec<BigRational> = xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            let qy: Vec<BigRational> = ys.iter().map(|y| y.to_rational().expect("rational value")).collect();
            let poly = UniPoly::interpolate(&qx, &qy);
            if domain == Domain::Rational {
                return Ok(poly.map(|c| Scalar::Rat(c.clone())));
            }
            if poly.coeffs().iter().any(|c| !c.is_integer()) {
                return Err(AlgebraError::InexactDivision);
            }
            Ok(poly.map(|c| Scalar::Int(c.to_integer())))
        }
    }
}

/// Restricts `k552` and `r96^3` to the line `u(s) = u0 + s u1` (reduced mod
/// `modulus` when given) and divides exactly as univariate polynomials.
///
/// Each Sylvester entry of `r96` is linear in `s`, so `r96(u(s))` has degree
/// at most 20; `h` is cubic in `s` and `k552(u(s))` has degree at most 138.
pub fn slice_divisibility(u0: &SurfaceParams, u1: &SurfaceParams, modulus: Option<u64>) -> Result<SliceProof> {
    slice_divisibility_with(u0, u1, modulus, &r96_value, &k552_value)
}

type PointFn<'a> = &'a (dyn Fn(&SurfaceParams) -> Scalar + Sync);

/// [`slice_divisibility`] with caller-supplied point evaluations of `r96`
/// and `k552`.
pub fn slice_divisibility_with(
    u0: &SurfaceParams,
    u1: &SurfaceParams,
    modulus: Option<u64>,
    r96_at: PointFn<'_>,
    k552_at: PointFn<'_>,
) -> Result<SliceProof> {
    check_same_domain(u0.domain(), u1.domain())?;
    let (u0, u1) = match modulus {
        Some(p) => {
            crate::modp::check_modulus(p)?;
            (u0.reduce_mod(p)?, u1.reduce_mod(p)?)
        }
        None => (u0.clone(), u1.clone()),
    };
    let r_slice = restrict(&u0, &u1, G2_DEGREE + G3_DEGREE, r96_at)?;
    if r_slice.is_zero() {
        return Err(AlgebraError::ResultantVanishesOnLine);
    }
    let k_slice = restrict(&u0, &u1, 3 * 2 * (H_DEGREE - 1), k552_at)?;
    let cube = r_slice.pow(3);
    let (quotient, exact) = match k_slice.div_exact(&cube) {
        Ok(q) => (q, true),
        Err(AlgebraError::InexactDivision) => (UniPoly::zero(&cube.template()), false),
        Err(e) => return Err(e),
    };
    Ok(SliceProof {
        modulus,
        r96_degree: r_slice.degree().unwrap_or(0),
        k552_degree: k_slice.degree().filter(|_| !k_slice.is_zero()),
        quotient_degree: quotient.degree().filter(|_| exact && !quotient.is_zero()),
        exact,
        quotient,
        r96_slice: r_slice,
        k552_slice: k_slice,
    })
}

/// `s -> r96(u0 + s u1)`, a polynomial of degree at most 20.
pub fn r96_on_line(u0: &SurfaceParams, u1: &SurfaceParams) -> Result<UniPoly<Scalar>> {
    check_same_domain(u0.domain(), u1.domain())?;
    restrict(u0, u1, G2_DEGREE + G3_DEGREE, r96_value)
}

/// Numerical constants of the graded structure, all derived from the
/// weight table of the 22 coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradingConstants {
    /// Weight of `h = 4 g2^3 + 27 g3^2`.
    pub h_weight: u32,
    /// Weight of `Res(g2, g3)`: `12 * 4 + 8 * 6`.
    pub resultant_weight: u32,
    /// Weight of `disc(h)`: `2 * 23 * 12`.
    pub discriminant_weight: u32,
    /// Weight of `k552 / r96^3`.
    pub relation_weight: u32,
    /// Half the relation weight: the weight of the square root `s132`.
    pub borcherds_weight: u32,
    /// `-(sum of all coordinate weights)`.
    pub canonical_weight: i64,
    /// `canonical_weight + borcherds_weight`.
    pub modular_dim: i64,
    pub ambient_variable_count: usize,
    pub variable_weights: Vec<u32>,
}

pub fn grading_constants() -> GradingConstants {
    let ring = surface_ring(Domain::Integer);
    let weights = ring.weights().to_vec();
    let g2_count = G2_DEGREE + 1;
    let w2 = weights[0];
    let w3 = weights[g2_count];
    let h_weight = 3 * w2;
    debug_assert_eq!(h_weight, 2 * w3);
    let resultant_weight = G3_DEGREE as u32 * w2 + G2_DEGREE as u32 * w3;
    let discriminant_weight = 2 * (H_DEGREE as u32 - 1) * h_weight;
    let relation_weight = discriminant_weight - 3 * resultant_weight;
    let borcherds_weight = relation_weight / 2;
    let canonical_weight = -weights.iter().map(|&w| i64::from(w)).sum::<i64>();
    GradingConstants {
        h_weight,
        resultant_weight,
        discriminant_weight,
        relation_weight,
        borcherds_weight,
        canonical_weight,
        modular_dim: canonical_weight + i64::from(borcherds_weight),
        ambient_variable_count: weights.len(),
        variable_weights: weights,
    }
}

/// The invariant ring extended by a square root of `delta264` that
/// transforms by the determinant character.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradedRingPresentation {
    pub base: &'static str,
    pub extension_generator: &'static str,
    pub extension_generator_weight: u32,
    pub relation: &'static str,
    pub relation_weight: u32,
    pub extension_character: &'static str,
}

pub fn graded_ring_presentation() -> GradedRingPresentation {
    let c = grading_constants();
    GradedRingPresentation {
        base: "C[S]^SL2",
        extension_generator: "s132",
        extension_generator_weight: c.borcherds_weight,
        relation: "s132^2 - delta264",
        relation_weight: c.relation_weight,
        extension_character: "det",
    }
}

/// Names `u_{8,0}, ..., u_{0,8}, u_{12,0}, ..., u_{0,12}` with weights 4 and 6.
pub fn surface_ring(domain: Domain) -> Arc<PolyRing> {
    let mut vars = Vec::new();
    let mut weights = Vec::new();
    for (deg, w) in [(G2_DEGREE, G2_WEIGHT), (G3_DEGREE, G3_WEIGHT)] {
        for i in 0..=deg {
            vars.push(format!("u_{{{},{}}}", deg - i, i));
            weights.push(w);
        }
    }
    PolyRing::new(vars, weights, domain).expect("distinct names")
}

/// The point of the 22-dimensional parameter space as a coordinate vector.
pub fn coordinates(u: &SurfaceParams) -> Vec<Scalar> {
    u.entries().cloned().collect()
}

pub fn from_coordinates(v: &[Scalar]) -> Result<SurfaceParams> {
    if v.len() != G2_DEGREE + G3_DEGREE + 2 {
        return Err(AlgebraError::LengthMismatch { expected: G2_DEGREE + G3_DEGREE + 2, got: v.len() });
    }
    SurfaceParams::new(v[..=G2_DEGREE].to_vec(), v[G2_DEGREE + 1..].to_vec())
}

/// `true` when `lambda^w * a == b`.
pub fn scales_with(a: &Scalar, b: &Scalar, lambda: &Scalar, w: u32) -> bool {
    a.clone() * &lambda.pow(w) == *b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::DEFAULT_PRIME;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn int(v: i64) -> Scalar {
        Scalar::from_i64(v, Domain::Integer)
    }

    #[test]
    fn constants() {
        let c = grading_constants();
        assert_eq!(c.canonical_weight, -(9 * 4 + 13 * 6));
        assert_eq!(c.canonical_weight, -114);
        assert_eq!(c.modular_dim, 18);
        assert_eq!(c.borcherds_weight, 132);
        assert_eq!(c.relation_weight, 264);
        assert_eq!(c.resultant_weight, 96);
        assert_eq!(c.discriminant_weight, 552);
        assert_eq!(c.ambient_variable_count, 22);
        let p = graded_ring_presentation();
        assert_eq!(p.relation_weight, 2 * p.extension_generator_weight);
    }

    #[test]
    fn monomial_and_shared_root_resultants() {
        let u = SurfaceParams::from_monomials(&[(0, 1)], &[(12, 1)]).unwrap();
        assert_eq!(r96(&u).unwrap().value, int(1));
        let u = SurfaceParams::from_monomials(&[(7, 1)], &[(11, 1)]).unwrap();
        assert!(r96(&u).unwrap().value.is_zero());
        assert_eq!(delta264(&u), Err(AlgebraError::ResultantVanishes));
    }

    #[test]
    fn group_actions() {
        let u = SurfaceParams::from_monomials(&[(0, 1)], &[(12, 1)]).unwrap();
        let v = gm_act(&int(2), &u).unwrap();
        assert_eq!(v.g2_coeffs()[0], int(16));
        assert_eq!(v.g3_coeffs()[12], int(64));
        assert_eq!(gm_act(&int(0), &u), Err(AlgebraError::ZeroScale));
        let shear = [[int(1), int(1)], [int(0), int(1)]];
        let w = sl2_act(&shear, &SurfaceParams::from_monomials(&[(0, 1)], &[]).unwrap()).unwrap();
        let binom: Vec<Scalar> = [1, 8, 28, 56, 70, 56, 28, 8, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(w.g2_coeffs(), &binom[..]);
        assert_eq!(sl2_act(&[[int(2), int(0)], [int(0), int(1)]], &u), Err(AlgebraError::NotUnimodular));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_sl2(&mut rng, 3, Domain::Integer);
        let r = SurfaceParams::random(&mut rng, 9);
        assert_eq!(sl2_act(&sl2_inverse(&g), &sl2_act(&g, &r).unwrap()).unwrap(), r);
    }

    #[test]
    fn random_point_factorization_and_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = SurfaceParams::random(&mut rng, 9);
        let (r, k, d) = factorization(&u).unwrap();
        assert_eq!(r.value.pow(3) * &d.value, k.value);
        assert!(!k.value.is_zero());
        let g = random_sl2(&mut rng, 3, Domain::Integer);
        let v = sl2_act(&g, &u).unwrap();
        assert_eq!(r96(&v).unwrap().value, r.value);
        assert_eq!(k552(&v).unwrap().value, k.value);
        let up = u.reduce_mod(DEFAULT_PRIME).unwrap();
        let lam = Scalar::from_i64(3, Domain::ModP(DEFAULT_PRIME));
        let scaled = gm_act(&lam, &up).unwrap();
        assert!(scales_with(&k552(&up).unwrap().value, &k552(&scaled).unwrap().value, &lam, 552));
        assert!(scales_with(&r96(&up).unwrap().value, &r96(&scaled).unwrap().value, &lam, 96));
    }

    #[test]
    fn slice_over_integers_and_mod_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u0 = SurfaceParams::random(&mut rng, 3);
        let u1 = SurfaceParams::random(&mut rng, 3);
        let proof = slice_divisibility(&u0, &u1, None).unwrap();
        assert!(proof.exact);
        assert_eq!(proof.r96_degree, 20);
        // h is not homogeneous in u, so the bound 138 - 3 * 20 need not be attained
        let q = proof.quotient_degree.unwrap();
        assert!(q > 0 && q <= 138 - 60);
        assert_eq!(proof.k552_degree, Some(q + 60));
        let modp = slice_divisibility(&u0, &u1, Some(DEFAULT_PRIME)).unwrap();
        assert!(modp.exact);
        let reduced: Vec<Scalar> =
            proof.quotient.coeffs().iter().map(|c| c.reduce_mod(DEFAULT_PRIME).unwrap()).collect();
        assert_eq!(modp.quotient.coeffs(), &reduced[..]);
    }

    #[test]
    fn constant_line_is_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u0 = SurfaceParams::random(&mut rng, 9);
        let zero = SurfaceParams::zero(Domain::Integer);
        let proof = slice_divisibility(&u0, &zero, None).unwrap();
        assert!(proof.exact);
        assert_eq!(proof.quotient_degree, Some(0));
        assert_eq!(proof.quotient.coeff(0), delta264(&u0).unwrap().value);
    }
}
