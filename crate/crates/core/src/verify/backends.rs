//! Float backend cross-check: relation and RLL identities drawn at random and
//! evaluated at random complex `q`.

use super::appendix_a::{identities, qdiag_inverses};
use super::report::VerificationReport;
use super::ybe::ybe_identities;
use crate::fock::{FockSpace, Semantics};
use crate::grading::{enumerate_gradings, GradingProfile};
use crate::lax::{frt_from_family, ps_r};
use crate::realizations::build_verma;
use crate::scalar::{FloatPoint, ScalarCtx};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct AgreementConfig {
    pub seed: u64,
    pub identities: usize,
    pub points: usize,
    pub cutoff: u32,
}

impl Default for AgreementConfig {
    fn default() -> Self {
        AgreementConfig { seed: 7, identities: 50, points: 5, cutoff: 3 }
    }
}

/// `|q| ∈ [0.3, 0.9]` with a uniform phase.
pub fn random_q(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.3..=0.9), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn relation_profiles() -> Vec<GradingProfile> {
    enumerate_gradings(2).into_iter().chain(enumerate_gradings(3)).collect()
}

fn rll_profiles() -> Vec<GradingProfile> {
    ["00", "01", "10", "001", "010", "100"].iter().map(|s| GradingProfile::parse(s).unwrap()).collect()
}

pub fn backend_agreement(cfg: &AgreementConfig) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rep = VerificationReport::new("backend-agreement", &format!("seed={} identities={} points={}", cfg.seed, cfg.identities, cfg.points));
    let start = Instant::now();
    let points = cfg.points.max(1);
    for n in 0..points {
        let quota = cfg.identities / points + usize::from(n < cfg.identities % points);
        let q = random_q(&mut rng);
        let ctx = ScalarCtx::float(FloatPoint::new(q, 1.0));
        let rll_share = quota / 2;
        let rel_share = quota - rll_share;

        let g = relation_profiles().choose(&mut rng).unwrap().clone();
        let lam: Vec<i64> = (0..g.k()).map(|_| rng.gen_range(-3..=3)).collect();
        let tag = format!("q={q:.4} grading={} λ={lam:?}", g.bit_string());
        match draw_relations(&g, &lam, cfg.cutoff, &ctx, rel_share, &mut rng) {
            Ok(outcomes) => outcomes.into_iter().for_each(|mut o| {
                o.label = format!("{} [{tag}]", o.label);
                rep.record(o);
            }),
            Err(e) => rep.error(format!("{tag}: {e}")),
        }

        let g = rll_profiles().choose(&mut rng).unwrap().clone();
        let lam: Vec<i64> = (0..g.k()).map(|_| rng.gen_range(-3..=3)).collect();
        let tag = format!("q={q:.4} grading={} λ={lam:?}", g.bit_string());
        match draw_rll(&g, &lam, cfg.cutoff, &ctx, rll_share, &mut rng) {
            Ok(outcomes) => outcomes.into_iter().for_each(|mut o| {
                o.label = format!("{} [{tag}]", o.label);
                rep.record(o);
            }),
            Err(e) => rep.error(format!("{tag}: {e}")),
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

fn draw_relations(g: &GradingProfile, lam: &[i64], d: u32, ctx: &ScalarCtx, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<super::CheckOutcome>, String> {
    let sp = FockSpace::verma(g, d, Semantics::Trig, ctx.clone()).map_err(|e| e.to_string())?;
    let fam = build_verma(g, lam, &sp).map_err(|e| e.to_string())?;
    let qinv = qdiag_inverses(&fam)?;
    let ids = identities(&fam, &qinv)?;
    Ok(ids.choose_multiple(rng, n).map(|id| id.check(&sp)).collect())
}

fn draw_rll(g: &GradingProfile, lam: &[i64], d: u32, ctx: &ScalarCtx, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<super::CheckOutcome>, String> {
    let sp = FockSpace::verma(g, d, Semantics::Trig, ctx.clone()).map_err(|e| e.to_string())?;
    let fam = build_verma(g, lam, &sp).map_err(|e| e.to_string())?;
    let lax = frt_from_family(&fam).map_err(|e| e.to_string())?;
    let ids = ybe_identities(&lax, &ps_r(g, ctx))?;
    Ok(ids.choose_multiple(rng, n).map(|id| id.check(&sp)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::identity::{Expr, Identity};

    #[test]
    fn drawn_identities_agree_in_float() {
        let rep = backend_agreement(&AgreementConfig::default());
        assert!(rep.pass(), "{}", rep.summary());
        assert_eq!(rep.checks, 50);
    }

    #[test]
    fn q_stays_in_the_annulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let r = random_q(&mut rng).norm();
            assert!((0.3..=0.9 + 1e-12).contains(&r));
        }
    }

    #[test]
    fn float_check_detects_a_wrong_identity() {
        let g = GradingProfile::parse("01").unwrap();
        let ctx = ScalarCtx::float(FloatPoint::new(Complex64::from_polar(0.5, 1.0), 1.0));
        let sp = FockSpace::verma(&g, 3, Semantics::Trig, ctx.clone()).unwrap();
        let fam = build_verma(&g, &[1, 0], &sp).unwrap();
        let id = Identity::new("e_12 = 1.000001 e_12", Expr::op(&ctx, fam.e(1, 2)), Expr::op(&ctx, fam.e(1, 2)).scale(&ctx.rat(crate::scalar::Rat::new(1_000_001, 1_000_000))));
        assert!(!id.check(&sp).pass);
    }

    #[test]
    fn same_seed_same_outcome() {
        let cfg = AgreementConfig { seed: 11, identities: 12, points: 3, cutoff: 2 };
        let (a, b) = (backend_agreement(&cfg), backend_agreement(&cfg));
        assert_eq!(a.summary(), b.summary());
        assert_eq!(a.checks, b.checks);
        let labels = |r: &VerificationReport| r.failures.iter().map(|f| f.label.clone()).collect::<Vec<_>>();
        assert_eq!(labels(&a), labels(&b));
    }
}
