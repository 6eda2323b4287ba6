//! Weierstrass data `z^2 = y^3 + g2 y + g3` over P^1: parameters, the forms
//! `g2`, `g3`, `h = 4 g2^3 + 27 g3^2`, and Kodaira classification of the
//! singular fibers place by place over Q.

use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::binary_form::BinaryForm;
use crate::conventions::{G2_DEGREE, G3_DEGREE};
use crate::elimination::{gcd_and_squarefree, to_rational_form, Place};
use crate::error::{AlgebraError, Result};
use crate::invariants::k552;
use crate::ring::Ring;
use crate::scalar::{Domain, Scalar};

/// The 22 coefficients `(u_{8,0}, ..., u_{0,8}; u_{12,0}, ..., u_{0,12})`,
/// all in one coefficient domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SurfaceParams {
    g2: Vec<Scalar>,
    g3: Vec<Scalar>,
}

impl SurfaceParams {
    pub fn new(g2: Vec<Scalar>, g3: Vec<Scalar>) -> Result<Self> {
        if g2.len() != G2_DEGREE + 1 {
            return Err(AlgebraError::LengthMismatch { expected: G2_DEGREE + 1, got: g2.len() });
        }
        if g3.len() != G3_DEGREE + 1 {
            return Err(AlgebraError::LengthMismatch { expected: G3_DEGREE + 1, got: g3.len() });
        }
        let domain = g2[0].domain();
        if let Some(bad) = g2.iter().chain(&g3).find(|c| c.domain() != domain) {
            return Err(AlgebraError::DomainMismatch(domain, bad.domain()));
        }
        Ok(SurfaceParams { g2, g3 })
    }

    pub fn from_i64(g2: &[i64], g3: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&c| Scalar::from_i64(c, Domain::Integer)).collect();
        SurfaceParams::new(conv(g2), conv(g3))
    }

    /// Builds parameters from sparse monomial lists `(power of w, coefficient)`.
    pub fn from_monomials(g2: &[(usize, i64)], g3: &[(usize, i64)]) -> Result<Self> {
        let mut a = [0i64; G2_DEGREE + 1];
        let mut b = [0i64; G3_DEGREE + 1];
        for &(i, c) in g2 {
            *a.get_mut(i).ok_or(AlgebraError::LengthMismatch { expected: G2_DEGREE + 1, got: i + 1 })? += c;
        }
        for &(i, c) in g3 {
            *b.get_mut(i).ok_or(AlgebraError::LengthMismatch { expected: G3_DEGREE + 1, got: i + 1 })? += c;
        }
        SurfaceParams::from_i64(&a, &b)
    }

    /// Entries drawn uniformly from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let mut draw = |n: usize| -> Vec<Scalar> {
            (0..n).map(|_| Scalar::from_i64(rng.gen_range(-bound..=bound), Domain::Integer)).collect()
        };
        let g2 = draw(G2_DEGREE + 1);
        let g3 = draw(G3_DEGREE + 1);
        SurfaceParams { g2, g3 }
    }

    pub fn zero(domain: Domain) -> Self {
        SurfaceParams {
            g2: vec![Scalar::zero(domain); G2_DEGREE + 1],
            g3: vec![Scalar::zero(domain); G3_DEGREE + 1],
        }
    }

    pub fn domain(&self) -> Domain {
        self.g2[0].domain()
    }

    pub fn g2_coeffs(&self) -> &[Scalar] {
        &self.g2
    }

    pub fn g3_coeffs(&self) -> &[Scalar] {
        &self.g3
    }

    /// All 22 entries, `g2` first.
    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.g2.iter().chain(&self.g3)
    }

    pub fn g2_form(&self) -> BinaryForm<Scalar> {
        BinaryForm::new(self.g2.clone()).expect("nine coefficients")
    }

    pub fn g3_form(&self) -> BinaryForm<Scalar> {
        BinaryForm::new(self.g3.clone()).expect("thirteen coefficients")
    }

    pub fn from_forms(g2: &BinaryForm<Scalar>, g3: &BinaryForm<Scalar>) -> Result<Self> {
        SurfaceParams::new(g2.coeffs().to_vec(), g3.coeffs().to_vec())
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let g2 = self.g2.iter().map(&f).collect::<Result<Vec<_>>>()?;
        let g3 = self.g3.iter().map(&f).collect::<Result<Vec<_>>>()?;
        SurfaceParams::new(g2, g3)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        self.map(|c| c.reduce_mod(p))
    }

    /// `self + s * other`, entrywise.
    pub fn along(&self, other: &SurfaceParams, s: &Scalar) -> Result<Self> {
        let comb = |a: &[Scalar], b: &[Scalar]| -> Result<Vec<Scalar>> {
            a.iter().zip(b).map(|(x, y)| x.try_add(&y.try_mul(s)?)).collect()
        };
        SurfaceParams::new(comb(&self.g2, &other.g2)?, comb(&self.g3, &other.g3)?)
    }
}

/// `(g2, g3, h)` with `h = 4 g2^3 + 27 g3^2` of degree 24.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assembled {
    pub g2: BinaryForm<Scalar>,
    pub g3: BinaryForm<Scalar>,
    pub h: BinaryForm<Scalar>,
}

pub fn assemble(u: &SurfaceParams) -> Assembled {
    let g2 = u.g2_form();
    let g3 = u.g3_form();
    let t = g2.template();
    let h = g2
        .pow(3)
        .scale(&t.from_i64_like(4))
        .add(&g3.pow(2).scale(&t.from_i64_like(27)))
        .expect("both summands have degree 24");
    Assembled { g2, g3, h }
}

/// Kodaira fiber types, plus the non-minimal case `ord g2 >= 4, ord g3 >= 6`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fiber.
    I(u32),
    II,
    III,
    IV,
    /// `I_n^*`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
    NonMinimal,
}

impl KodairaType {
    /// Whether the surface has at worst rational double points over this place.
    pub fn is_minimal(self) -> bool {
        self != KodairaType::NonMinimal
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::NonMinimal => write!(f, "non-minimal"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Stand-in order for an identically vanishing form.
pub const INFINITE_ORDER: u32 = u32::MAX;

/// Classifies a fiber from `(ord g2, ord g3, ord h)` using the minimal
/// Weierstrass table. Pass [`INFINITE_ORDER`] for an identically zero `g2` or
/// `g3`.
///
/// The triple must be realizable: `d = min(3 m2, 2 m3)` when `3 m2 != 2 m3`,
/// and `d >= 3 m2` otherwise. Anything else is reported as
/// [`AlgebraError::InconsistentTriple`].
pub fn kodaira_type(m2: u32, m3: u32, d: u32) -> Result<KodairaType> {
    let inconsistent = AlgebraError::InconsistentTriple { m2, m3, d };
    let (a, b) = (3 * u64::from(m2), 2 * u64::from(m3));
    let consistent = match a.cmp(&b) {
        std::cmp::Ordering::Equal => u64::from(d) >= a,
        _ => u64::from(d) == a.min(b),
    };
    if !consistent {
        return Err(inconsistent);
    }
    use KodairaType::*;
    let t = match (m2, m3, d) {
        (_, _, 0) => I(0),
        (0, 0, n) => I(n),
        (m2, m3, _) if m2 >= 4 && m3 >= 6 => NonMinimal,
        (_, 1, 2) => II,
        (1, _, 3) => III,
        (_, 2, 4) => IV,
        (2, 3, d) => IStar(d - 6),
        (_, _, 6) => IStar(0),
        (_, 4, 8) => IVStar,
        (3, _, 9) => IIIStar,
        (_, 5, 10) => IIStar,
        _ => return Err(inconsistent),
    };
    Ok(t)
}

/// One place of P^1 where `h` vanishes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PlaceRecord {
    #[serde(serialize_with = "serialize_display")]
    pub place: Place,
    pub residue_degree: usize,
    /// `None` when `g2` vanishes identically.
    pub m2: Option<u32>,
    /// `None` when `g3` vanishes identically.
    pub m3: Option<u32>,
    pub d: u32,
    pub kodaira: KodairaType,
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Singular-fiber summary of one Weierstrass model.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiberReport {
    pub places: Vec<PlaceRecord>,
    #[serde(rename = "in_U")]
    pub in_u: bool,
    pub h_is_zero: bool,
    /// `sum d * residue_degree`; 24 whenever `h != 0`.
    pub euler_sum: u64,
}

impl FiberReport {
    /// Number of geometric points of each Kodaira type.
    pub fn type_counts(&self) -> Vec<(KodairaType, usize)> {
        let mut out: Vec<(KodairaType, usize)> = Vec::new();
        for p in &self.places {
            match out.iter_mut().find(|(k, _)| *k == p.kodaira) {
                Some((_, n)) => *n += p.residue_degree,
                None => out.push((p.kodaira, p.residue_degree)),
            }
        }
        out
    }

    /// Sorted multiset of `(m2, m3, d, residue degree)`.
    pub fn signature(&self) -> Vec<(Option<u32>, Option<u32>, u32, usize)> {
        let mut v: Vec<_> = self.places.iter().map(|p| (p.m2, p.m3, p.d, p.residue_degree)).collect();
        v.sort();
        v
    }
}

fn rational_forms(u: &SurfaceParams) -> Result<(BinaryForm<BigRational>, BinaryForm<BigRational>, BinaryForm<BigRational>)> {
    let a = assemble(u);
    Ok((to_rational_form(&a.g2)?, to_rational_form(&a.g3)?, to_rational_form(&a.h)?))
}

/// Classifies every place of P^1 over Q where `h` vanishes. Parameters must
/// be integers or rationals.
pub fn fiber_profile(u: &SurfaceParams) -> Result<FiberReport> {
    let (g2, g3, h) = rational_forms(u)?;
    if h.is_zero() {
        return Ok(FiberReport { places: Vec::new(), in_u: false, h_is_zero: true, euler_sum: 0 });
    }
    let mut places = Vec::new();
    let mut euler_sum = 0u64;
    for (place, d) in gcd_and_squarefree(&h)? {
        let m2 = place.order_of(&g2);
        let m3 = place.order_of(&g3);
        let kodaira = kodaira_type(m2.unwrap_or(INFINITE_ORDER), m3.unwrap_or(INFINITE_ORDER), d)?;
        let residue_degree = place.residue_degree();
        euler_sum += u64::from(d) * residue_degree as u64;
        places.push(PlaceRecord { place, residue_degree, m2, m3, d, kodaira });
    }
    let in_u = places.iter().all(|p| p.kodaira.is_minimal());
    Ok(FiberReport { places, in_u, h_is_zero: false, euler_sum })
}

/// The two generic components of the divisor `k552 = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerationComponent {
    /// Two `I1` fibers merge into an `I_n` fiber with `n >= 2`.
    A1,
    /// `g2` and `g3` share a root, producing a type `II` fiber.
    II,
    /// Neither or both of the generic patterns.
    Deeper,
}

impl fmt::Display for DegenerationComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationComponent::A1 => write!(f, "A1-component"),
            DegenerationComponent::II => write!(f, "II-component"),
            DegenerationComponent::Deeper => write!(f, "deeper"),
        }
    }
}

/// Decides which component of `{k552 = 0}` a point lies on.
///
/// The `A1` pattern is a place of type `I_n` with `n >= 2`; the `II` pattern
/// is a place of type exactly `II`. A point showing exactly one pattern lies
/// on that component, otherwise it is `Deeper`.
pub fn degeneration_component(u: &SurfaceParams) -> Result<DegenerationComponent> {
    if !k552(u)?.value.is_zero() {
        return Err(AlgebraError::NotOnDivisor);
    }
    let report = fiber_profile(u)?;
    let a1 = report.places.iter().any(|p| matches!(p.kodaira, KodairaType::I(n) if n >= 2));
    let two = report.places.iter().any(|p| p.kodaira == KodairaType::II);
    Ok(match (a1, two) {
        (true, false) => DegenerationComponent::A1,
        (false, true) => DegenerationComponent::II,
        _ => DegenerationComponent::Deeper,
    })
}
