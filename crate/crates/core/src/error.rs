use thiserror::Error;

use crate::scalar::Domain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("coefficient domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("polynomial rings differ (variable list, weights or domain)")]
    RingMismatch,
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("{op} needs degree at least {min}, got {got}")]
    DegreeTooSmall { op: &'static str, min: usize, got: usize },
    #[error("{0} is not an odd prime below 2^62")]
    BadModulus(u64),
    #[error("{0} has no residue modulo {1}")]
    NotReducible(String, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("substitution matrix does not have determinant 1")]
    NotUnimodular,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("h = 4 g2^3 + 27 g3^2 vanishes identically")]
    DegenerateFamily,
    #[error("r96 vanishes at this point")]
    ResultantVanishes,
    #[error("r96 vanishes identically on the line")]
    ResultantVanishesOnLine,
    #[error("inconsistent vanishing orders (m2={m2}, m3={m3}, d={d})")]
    InconsistentTriple { m2: u32, m3: u32, d: u32 },
    #[error("point is not on the divisor k552 = 0")]
    NotOnDivisor,
    #[error("t-degree {degree} exceeds the oracle bound {bound}")]
    OracleBound { degree: usize, bound: usize },
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),
    #[error("reciprocal of the zero series")]
    ZeroSeries,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
