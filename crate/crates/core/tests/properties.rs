//! Property tests for the algebraic layer: ring laws, the substitution
//! action, resultants and discriminants against root-product formulas,
//! Bareiss against cofactor expansion, and the fiber classification's
//! behavior under the group actions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use k3mod::conventions::discriminant_scale;
use k3mod::elimination::{discriminant_binary, is_squarefree, resultant, share_root};
use k3mod::invariants::{gm_act, k552, r96, sl2_act};
use k3mod::matrix::Matrix;
use k3mod::weierstrass::{fiber_profile, KodairaType, SurfaceParams};
use k3mod::{BinaryForm, Fp, Mat2, Scalar, UniPoly};

const P: u64 = 1_000_003;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn form(c: &[i64]) -> BinaryForm<BigInt> {
    BinaryForm::new(c.iter().map(|&v| big(v)).collect()).unwrap()
}

fn rational(f: &BinaryForm<BigInt>) -> BinaryForm<BigRational> {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// `prod (x - r w)` over the given roots.
fn from_roots(roots: &[i64]) -> BinaryForm<BigInt> {
    roots.iter().fold(form(&[1]), |acc, &r| acc.mul(&form(&[1, -r])))
}

fn mat(m: [i64; 4]) -> Mat2<BigInt> {
    [[big(m[0]), big(m[1])], [big(m[2]), big(m[3])]]
}

fn mat_mul(g: &Mat2<BigInt>, h: &Mat2<BigInt>) -> Mat2<BigInt> {
    let e = |i: usize, j: usize| &g[i][0] * &h[0][j] + &g[i][1] * &h[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let n = m.len();
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn coeffs(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, len)
}

fn unimodular() -> impl Strategy<Value = Mat2<BigInt>> {
    (-3i64..=3, -3i64..=3, -3i64..=3, any::<bool>()).prop_map(|(a, b, c, flip)| {
        // [[1, a], [0, 1]] [[1, 0], [b, 1]] [[1, c], [0, 1]], optionally with a swap
        let m = mat_mul(&mat_mul(&mat([1, a, 0, 1]), &mat([1, 0, b, 1])), &mat([1, c, 0, 1]));
        if flip {
            mat_mul(&m, &mat([0, -1, 1, 0]))
        } else {
            m
        }
    })
}

fn surface() -> impl Strategy<Value = SurfaceParams> {
    (prop::collection::vec(-9i64..=9, 9), prop::collection::vec(-9i64..=9, 13))
        .prop_map(|(a, b)| SurfaceParams::from_i64(&a, &b).unwrap())
}

fn to_scalar(m: &Mat2<BigInt>) -> Mat2<Scalar> {
    let s = |v: &BigInt| Scalar::Int(v.clone());
    [[s(&m[0][0]), s(&m[0][1])], [s(&m[1][0]), s(&m[1][1])]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in coeffs(1..=6), b in coeffs(1..=6), c in coeffs(1..=6)) {
        let (a, b, c) = (UniPoly::from_i64s(&a), UniPoly::from_i64s(&b), UniPoly::from_i64s(&c));
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert!((a.clone() - &a).is_zero());
    }

    #[test]
    fn fp_field_axioms(a in 0u64..P, b in 0u64..P, c in 0u64..P) {
        let (a, b, c) = (Fp::new(a, P), Fp::new(b, P), Fp::new(c, P));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        if !a.is_zero() {
            prop_assert_eq!(a * a.inverse().unwrap(), Fp::one(P));
        }
    }

    #[test]
    fn substitution_is_a_right_action(f in coeffs(1..=9), g in unimodular(), h in unimodular()) {
        let f = form(&f);
        prop_assert_eq!(f.substitute(&mat_mul(&g, &h)), f.substitute(&g).substitute(&h));
    }

    #[test]
    fn euler_identity(f in coeffs(2..=25)) {
        let f = form(&f);
        let n = f.degree() as i64;
        let (fx, fw) = f.partials().unwrap();
        let lhs = fx.times_x().add(&fw.times_w()).unwrap();
        prop_assert_eq!(lhs, f.scale(&big(n)));
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(f in coeffs(2..=6), g in coeffs(2..=6)) {
        let (f, g) = (form(&f), form(&g));
        let red = |x: &BinaryForm<BigInt>| x.map(|c| Fp::from_bigint(c, P));
        let exact = resultant(&f, &g).unwrap();
        prop_assert_eq!(Fp::from_bigint(&exact, P), resultant(&red(&f), &red(&g)).unwrap());
        prop_assert_eq!(red(&f.mul(&g)), red(&f).mul(&red(&g)));
    }

    #[test]
    fn resultant_swap_sign(f in coeffs(2..=7), g in coeffs(2..=7)) {
        let (f, g) = (form(&f), form(&g));
        let mn = f.degree() * g.degree();
        let fg = resultant(&f, &g).unwrap();
        let gf = resultant(&g, &f).unwrap();
        prop_assert_eq!(gf, if mn % 2 == 0 { fg } else { -fg });
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in coeffs(2..=6), g in coeffs(2..=6), r in -5i64..=5, share in any::<bool>()) {
        let (mut f, mut g) = (form(&f), form(&g));
        if share {
            let l = form(&[1, -r]);
            f = f.mul(&l);
            g = g.mul(&l);
        }
        prop_assume!(!f.coeff(0).is_zero() || !g.coeff(0).is_zero());
        let res = resultant(&f, &g).unwrap();
        prop_assert_eq!(res.is_zero(), share_root(&rational(&f), &rational(&g)));
        if share {
            prop_assert!(res.is_zero());
        }
    }

    #[test]
    fn resultant_root_product(rs in prop::collection::vec(-6i64..=6, 1..=5), ss in prop::collection::vec(-6i64..=6, 1..=5)) {
        let expected: BigInt = rs.iter().flat_map(|r| ss.iter().map(move |s| big(r - s))).product();
        prop_assert_eq!(resultant(&from_roots(&rs), &from_roots(&ss)).unwrap(), expected);
    }

    #[test]
    fn discriminant_root_product(rs in prop::collection::vec(-6i64..=6, 2..=6)) {
        let n = rs.len() as u32;
        let mut classical = BigInt::one();
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let d = big(rs[i] - rs[j]);
                classical *= &d * &d;
            }
        }
        prop_assert_eq!(discriminant_binary(&from_roots(&rs)).unwrap(), discriminant_scale(n) * classical);
    }

    #[test]
    fn discriminant_detects_repeated_factors(f in coeffs(3..=7)) {
        let f = form(&f);
        prop_assume!(!f.is_zero());
        let disc = discriminant_binary(&f).unwrap();
        prop_assert_eq!(!disc.is_zero(), is_squarefree(&rational(&f)));
    }

    #[test]
    fn discriminant_homogeneity(f in coeffs(3..=7), lambda in -4i64..=4) {
        let f = form(&f);
        let n = f.degree() as u32;
        let scaled = discriminant_binary(&f.scale(&big(lambda))).unwrap();
        prop_assert_eq!(scaled, big(lambda).pow(2 * n - 2) * discriminant_binary(&f).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(n in 1usize..=6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| big(seed[i * 6 + j])).collect()).collect();
        prop_assert_eq!(Matrix::from_rows(rows.clone()).determinant(), cofactor_det(&rows));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fiber_profile_is_sl2_equivariant(u in surface(), g in unimodular()) {
        let a = fiber_profile(&u).unwrap();
        let b = fiber_profile(&sl2_act(&to_scalar(&g), &u).unwrap()).unwrap();
        prop_assert_eq!(a.signature(), b.signature());
        prop_assert_eq!(a.in_u, b.in_u);
    }

    #[test]
    fn membership_is_gm_invariant(u in surface(), lambda in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let v = gm_act(&Scalar::Int(big(lambda)), &u).unwrap();
        prop_assert_eq!(fiber_profile(&u).unwrap().in_u, fiber_profile(&v).unwrap().in_u);
    }

    #[test]
    fn generic_points_have_only_nodal_fibers(u in surface()) {
        let nonzero = matches!((r96(&u), k552(&u)), (Ok(r), Ok(k)) if !r.value.is_zero() && !k.value.is_zero());
        prop_assume!(nonzero);
        let report = fiber_profile(&u).unwrap();
        prop_assert_eq!(report.euler_sum, 24);
        prop_assert!(report.places.iter().all(|p| matches!(p.kodaira, KodairaType::I(0) | KodairaType::I(1))));
    }
}
