//! Fixed conventions and default run parameters shared by the library, the
//! harness and the CLI.

use num_bigint::BigInt;

/// Recorded next to every reported invariant value so that results from
/// implementations with other normalizations can be reconciled.
pub const CONVENTION_TAG: &str =
    "res=det(sylvester: deg(g)-many f-rows then deg(f)-many g-rows); disc(f)=Res(f_x,f_w); \
     r96=Res(g2,g3); k552=disc(4g2^3+27g3^2); delta264=k552/r96^3";

pub const G2_DEGREE: usize = 8;
pub const G3_DEGREE: usize = 12;
pub const H_DEGREE: usize = 24;
/// Grading weight of each `g2` coefficient.
pub const G2_WEIGHT: u32 = 4;
/// Grading weight of each `g3` coefficient.
pub const G3_WEIGHT: u32 = 6;

/// `Res(x^8, w^12)` under the Sylvester row order: the matrix is the identity.
pub const MONOMIAL_RESULTANT: i64 = 1;

/// For the depressed cubic `x^3 + p x w^2 + q w^3`,
/// `Res(f_x, f_w) = DEPRESSED_CUBIC_DISC_SCALE * (4 p^3 + 27 q^2)`.
pub const DEPRESSED_CUBIC_DISC_SCALE: i64 = 3;

/// The ratio `Res(f_x, f_w) / Disc(f)` for a degree-`n` form, where `Disc` is
/// the classical root discriminant `a0^(2n-2) prod_{i<j} (r_i - r_j)^2`.
/// It equals `(-1)^(n(n-1)/2) * n^(n-2)`.
pub fn discriminant_scale(n: u32) -> BigInt {
    assert!(n >= 2, "discriminants need degree at least 2");
    let mag = BigInt::from(n).pow(n - 2);
    if (n * (n - 1) / 2) % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// Default seed of the verification harness.
pub const DEFAULT_SEED: u64 = 20_240_552;

/// Default trial counts and sampling bounds of the verification harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialDefaults {
    pub pointwise: usize,
    pub homogeneity: usize,
    pub sl2: usize,
    pub slices: usize,
    pub fiber: usize,
    /// Entries of random parameters are drawn from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    /// Entries of random unimodular matrices lie in `[-sl2_entry_bound, sl2_entry_bound]`.
    pub sl2_entry_bound: i64,
}

pub const TRIALS: TrialDefaults = TrialDefaults {
    pointwise: 200,
    homogeneity: 50,
    sl2: 50,
    slices: 5,
    fiber: 100,
    entry_bound: 9,
    sl2_entry_bound: 3,
};

/// Scaling factors used by the homogeneity checks.
pub const HOMOGENEITY_LAMBDAS: [i64; 3] = [2, 3, 5];

/// Largest t-degree accepted by the raising-operator kernel oracle.
pub const ORACLE_BOUND: usize = 24;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_scales() {
        assert_eq!(discriminant_scale(2), BigInt::from(-1));
        assert_eq!(discriminant_scale(3), BigInt::from(-3));
        assert_eq!(discriminant_scale(4), BigInt::from(16));
        assert_eq!(discriminant_scale(24), BigInt::from(24).pow(22));
    }
}
