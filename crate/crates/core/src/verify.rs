//! Seeded bulk verification of the identities relating `r96`, `k552` and
//! `delta264`: pointwise factorization over Z, weighted homogeneity mod a
//! prime, SL2-invariance over Z, and exact division on random lines.
//!
//! Every trial draws from its own ChaCha stream, so the report depends only
//! on the configuration and not on how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conventions::{CONVENTION_TAG, DEFAULT_SEED, HOMOGENEITY_LAMBDAS, TRIALS};
use crate::invariants::{random_sl2, sl2_act, gm_act, slice_divisibility_with, k552_value, r96_value};
use crate::io::SurfaceParamsJson;
use crate::modp::{check_modulus, DEFAULT_PRIME};
use crate::error::Result;
use crate::scalar::{Domain, Scalar};
use crate::weierstrass::SurfaceParams;

/// Point evaluations of the two determinantal invariants. The harness is
/// written against this trait so that a deliberately wrong implementation can
/// be substituted to confirm that failures are detected.
pub trait InvariantEngine: Sync {
    fn r96(&self, u: &SurfaceParams) -> Scalar;
    /// `disc(h)`; zero when `h` vanishes identically.
    fn k552(&self, u: &SurfaceParams) -> Scalar;
}

/// The library's own Sylvester-determinant evaluations.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardEngine;

impl InvariantEngine for StandardEngine {
    fn r96(&self, u: &SurfaceParams) -> Scalar {
        r96_value(u)
    }

    fn k552(&self, u: &SurfaceParams) -> Scalar {
        k552_value(u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub pointwise: usize,
    pub homogeneity: usize,
    pub sl2: usize,
    pub slices: usize,
    /// Prime for the homogeneity checks.
    pub modulus: u64,
    pub entry_bound: i64,
    pub sl2_entry_bound: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            pointwise: TRIALS.pointwise,
            homogeneity: TRIALS.homogeneity,
            sl2: TRIALS.sl2,
            slices: 1,
            modulus: DEFAULT_PRIME,
            entry_bound: TRIALS.entry_bound,
            sl2_entry_bound: TRIALS.sl2_entry_bound,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        check_modulus(self.modulus).map(|_| ())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Pointwise,
    Homogeneity,
    Sl2Invariance,
    Slice,
}

impl CheckKind {
    fn stream(self) -> u64 {
        match self {
            CheckKind::Pointwise => 1,
            CheckKind::Homogeneity => 2,
            CheckKind::Sl2Invariance => 3,
            CheckKind::Slice => 4,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckSummary {
    pub check: CheckKind,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub check: CheckKind,
    pub trial: usize,
    pub u: SurfaceParamsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<SurfaceParamsJson>,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: String,
    pub trials: usize,
    pub modulus: String,
    pub convention_tag: &'static str,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn rng_for(seed: u64, kind: CheckKind, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((kind.stream() << 32) | trial as u64);
    rng
}

/// A random integer point with `r96 != 0`.
fn nondegenerate_point(rng: &mut ChaCha8Rng, bound: i64, engine: &dyn InvariantEngine) -> (SurfaceParams, Scalar) {
    loop {
        let u = SurfaceParams::random(rng, bound);
        let r = engine.r96(&u);
        if !r.is_zero() {
            return (u, r);
        }
    }
}

fn failure(check: CheckKind, trial: usize, u: &SurfaceParams, detail: impl Into<String>) -> Failure {
    Failure { check, trial, u: u.into(), direction: None, detail: detail.into() }
}

/// `k552(u) = r96(u)^3 * delta264(u)` with an integral quotient.
pub fn pointwise_trial(cfg: &VerifyConfig, trial: usize, engine: &dyn InvariantEngine) -> Option<Failure> {
    let mut rng = rng_for(cfg.seed, CheckKind::Pointwise, trial);
    let (u, r) = nondegenerate_point(&mut rng, cfg.entry_bound, engine);
    let k = engine.k552(&u);
    match k.try_div(&r.pow(3)) {
        Ok(delta) if delta.clone() * &r.pow(3) == k => None,
        _ => Some(failure(CheckKind::Pointwise, trial, &u, "k552 is not divisible by r96^3")),
    }
}

/// Weights 96, 552 and 264 under `u -> lambda . u`, modulo `cfg.modulus`.
pub fn homogeneity_trial(cfg: &VerifyConfig, trial: usize, engine: &dyn InvariantEngine) -> Option<Failure> {
    let mut rng = rng_for(cfg.seed, CheckKind::Homogeneity, trial);
    let p = cfg.modulus;
    let (u, _) = nondegenerate_point(&mut rng, cfg.entry_bound, engine);
    let lambda = HOMOGENEITY_LAMBDAS[rng.gen_range(0..HOMOGENEITY_LAMBDAS.len())];
    let up = u.reduce_mod(p).expect("integer point reduces");
    let lam = Scalar::from_i64(lambda, Domain::ModP(p));
    let scaled = gm_act(&lam, &up).expect("nonzero lambda");
    let (r0, r1) = (engine.r96(&up), engine.r96(&scaled));
    let (k0, k1) = (engine.k552(&up), engine.k552(&scaled));
    let mut bad = Vec::new();
    if r0.clone() * &lam.pow(96) != r1 {
        bad.push("r96");
    }
    if k0.clone() * &lam.pow(552) != k1 {
        bad.push("k552");
    }
    if !r0.is_zero() {
        let d0 = k0.try_div(&r0.pow(3)).expect("field division");
        let d1 = k1.try_div(&r1.pow(3)).expect("field division");
        if d0 * &lam.pow(264) != d1 {
            bad.push("delta264");
        }
    }
    (!bad.is_empty()).then(|| failure(CheckKind::Homogeneity, trial, &u, format!("lambda={lambda}: {} not homogeneous", bad.join(", "))))
}

/// `r96` and `k552` unchanged by a random unimodular substitution, over Z.
pub fn sl2_trial(cfg: &VerifyConfig, trial: usize, engine: &dyn InvariantEngine) -> Option<Failure> {
    let mut rng = rng_for(cfg.seed, CheckKind::Sl2Invariance, trial);
    let (u, r0) = nondegenerate_point(&mut rng, cfg.entry_bound, engine);
    let gamma = random_sl2(&mut rng, cfg.sl2_entry_bound, Domain::Integer);
    let v = sl2_act(&gamma, &u).expect("unimodular");
    let mut bad = Vec::new();
    if engine.r96(&v) != r0 {
        bad.push("r96");
    }
    if engine.k552(&v) != engine.k552(&u) {
        bad.push("k552");
    }
    (!bad.is_empty()).then(|| {
        let g: Vec<String> = gamma.iter().flatten().map(ToString::to_string).collect();
        failure(CheckKind::Sl2Invariance, trial, &u, format!("gamma=[{}]: {} changed", g.join(","), bad.join(", ")))
    })
}

/// Exact division of `k552` by `r96^3` on the line `u0 + s u1`.
pub fn slice_trial(cfg: &VerifyConfig, trial: usize, engine: &dyn InvariantEngine) -> Option<Failure> {
    let mut rng = rng_for(cfg.seed, CheckKind::Slice, trial);
    let u0 = SurfaceParams::random(&mut rng, cfg.entry_bound);
    let u1 = SurfaceParams::random(&mut rng, cfg.entry_bound);
    let r_at = |u: &SurfaceParams| engine.r96(u);
    let k_at = |u: &SurfaceParams| engine.k552(u);
    let detail = match slice_divisibility_with(&u0, &u1, None, &r_at, &k_at) {
        Ok(proof) if proof.exact => return None,
        Ok(_) => "nonzero remainder".to_string(),
        Err(e) => e.to_string(),
    };
    let mut f = failure(CheckKind::Slice, trial, &u0, detail);
    f.direction = Some((&u1).into());
    Some(f)
}

type TrialFn = fn(&VerifyConfig, usize, &dyn InvariantEngine) -> Option<Failure>;

fn run_check(cfg: &VerifyConfig, engine: &dyn InvariantEngine, kind: CheckKind, count: usize, f: TrialFn) -> (CheckSummary, Vec<Failure>) {
    let failures: Vec<Failure> = (0..count).into_par_iter().filter_map(|t| f(cfg, t, engine)).collect();
    (CheckSummary { check: kind, trials: count, failures: failures.len() }, failures)
}

/// Runs every check and aggregates the results in trial order.
pub fn run_verification(cfg: &VerifyConfig, engine: &dyn InvariantEngine) -> Result<VerifyReport> {
    cfg.validate()?;
    let plan: [(CheckKind, usize, TrialFn); 4] = [
        (CheckKind::Pointwise, cfg.pointwise, pointwise_trial),
        (CheckKind::Homogeneity, cfg.homogeneity, homogeneity_trial),
        (CheckKind::Sl2Invariance, cfg.sl2, sl2_trial),
        (CheckKind::Slice, cfg.slices, slice_trial),
    ];
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for (kind, count, f) in plan {
        let (summary, mut fails) = run_check(cfg, engine, kind, count, f);
        checks.push(summary);
        failures.append(&mut fails);
    }
    Ok(VerifyReport {
        seed: cfg.seed.to_string(),
        trials: cfg.pointwise,
        modulus: cfg.modulus.to_string(),
        convention_tag: CONVENTION_TAG,
        checks,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct OffByOne;

    impl InvariantEngine for OffByOne {
        fn r96(&self, u: &SurfaceParams) -> Scalar {
            r96_value(u)
        }
        fn k552(&self, u: &SurfaceParams) -> Scalar {
            let k = k552_value(u);
            k.clone() + &Scalar::one(k.domain())
        }
    }

    fn small() -> VerifyConfig {
        VerifyConfig { pointwise: 4, homogeneity: 3, sl2: 3, slices: 0, ..VerifyConfig::default() }
    }

    #[test]
    fn standard_engine_passes() {
        let rep = run_verification(&small(), &StandardEngine).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.checks.len(), 4);
    }

    #[test]
    fn corrupted_engine_is_caught() {
        let rep = run_verification(&small(), &OffByOne).unwrap();
        assert!(rep.checks.iter().find(|c| c.check == CheckKind::Pointwise).unwrap().failures > 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_verification(&small(), &StandardEngine).unwrap().to_json();
        let b = run_verification(&small(), &StandardEngine).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_modulus_is_rejected() {
        let cfg = VerifyConfig { modulus: 15, ..small() };
        assert!(run_verification(&cfg, &StandardEngine).is_err());
    }
}
