//! Exact algebra for the moduli of Weierstrass elliptic K3 surfaces.
//!
//! The parameter space is `S = Sym^8 V x Sym^12 V`, a pair of binary forms
//! `(g2, g3)` of degrees 8 and 12 with coefficients `u_{i,j}` of weights 4
//! and 6. The crate provides
//!
//! - exact scalar, sparse multivariate and binary-form arithmetic
//!   ([`scalar`], [`multipoly`], [`binary_form`], [`unipoly`]);
//! - Sylvester resultants, discriminants and factorization over Q
//!   ([`elimination`], [`factor`]);
//! - Kodaira classification of the singular fibers of `z^2 = y^3 + g2 y + g3`
//!   ([`weierstrass`]);
//! - the invariants `r96 = Res(g2, g3)`, `k552 = disc(4 g2^3 + 27 g3^2)` and
//!   `delta264 = k552 / r96^3`, with point and slice checks ([`invariants`]);
//! - the Molien-Weyl Hilbert series of the SL2-invariants with a kernel
//!   oracle ([`hilbert`]);
//! - Eisenstein series and the weight -2 input `1728 E4 / (E4^3 - E6^2)`
//!   ([`qseries`]);
//! - a seeded verification harness ([`verify`]).

pub mod binary_form;
pub mod conventions;
pub mod elimination;
pub mod error;
pub mod factor;
pub mod hilbert;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod modp;
pub mod multipoly;
pub mod qseries;
pub mod ring;
pub mod scalar;
pub mod text;
pub mod unipoly;
pub mod verify;
pub mod weierstrass;

pub use binary_form::{BinaryForm, Mat2};
pub use error::{AlgebraError, Result};
pub use modp::Fp;
pub use multipoly::{MultiPoly, PolyRing};
pub use scalar::{Domain, Scalar};
pub use unipoly::UniPoly;
