//! Acceptance run: one PASS/FAIL line per criterion, each with its sweep,
//! cutoff, tolerance and time budget pinned here.

use qosc::fock::{FockSpace, Semantics};
use qosc::grading::{enumerate_gradings, GradingProfile, SubsetI};
use qosc::realizations::contracted::contracted_family;
use qosc::realizations::osc::Osc;
use qosc::realizations::{build_contracted_mu, build_reduced_a1, closed_form_a1_limit, closed_form_last_limit, rectangular_space, verma_family};
use qosc::scalar::{ScalarCtx, Weight};
use qosc::verify::suites::{Instance, Suite};
use qosc::verify::{backend_agreement, compare_families, compare_families_on, limit_q, renormalized_verma, AgreementConfig, VerificationReport, FLOAT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const SEED: u64 = 2024;
const WEIGHT_RANGE: std::ops::RangeInclusive<i64> = -3..=3;
const DEFAULT_CUTOFF: u32 = 3;
const RATIONAL_CUTOFF: u32 = 4;
const CHAIN_CUTOFF: u32 = 4;
const TOLERANCE: f64 = 1e-9;

/// All gradings with `m` even and `n` odd indices.
fn gradings_mn(m: usize, n: usize) -> Vec<GradingProfile> {
    enumerate_gradings(m + n).into_iter().filter(|g| g.m() == m).collect()
}

fn gradings_of(pairs: &[(usize, usize)]) -> Vec<GradingProfile> {
    pairs.iter().flat_map(|&(m, n)| gradings_mn(m, n)).collect()
}

fn draw(rng: &mut ChaCha8Rng, k: usize) -> Vec<i64> {
    (0..k).map(|_| rng.gen_range(WEIGHT_RANGE)).collect()
}

#[derive(Default)]
struct Tally {
    instances: usize,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, rep: &VerificationReport) {
        self.instances += 1;
        self.checks += rep.checks;
        if !rep.pass() {
            self.failures.push(rep.summary());
        }
    }

    fn run(&mut self, s: Suite, inst: &Instance) {
        let rep = s.run(inst);
        if rep.max_headroom > inst.cutoff {
            self.failures.push(format!("cutoff {} below needed {}: {}", inst.cutoff, rep.max_headroom, rep.summary()));
        }
        self.add(&rep);
    }
}

struct Outcome {
    number: usize,
    title: &'static str,
    budget: Duration,
    elapsed: Duration,
    tally: Tally,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.tally.failures.is_empty() && self.tally.checks > 0 && self.elapsed <= self.budget
    }

    fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2}: {status} {} ({} instances, {} checks, {:.1}s of {}s)",
            self.number,
            self.title,
            self.tally.instances,
            self.tally.checks,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        if let Some(f) = self.tally.failures.first() {
            s.push_str(&format!("\n    first failure: {f}"));
        }
        if self.elapsed > self.budget {
            s.push_str("\n    over the time budget");
        }
        s
    }
}

fn criterion(number: usize, title: &'static str, budget_s: u64, body: impl FnOnce(&mut Tally)) -> Outcome {
    let start = Instant::now();
    let mut tally = Tally::default();
    body(&mut tally);
    Outcome { number, title, budget: Duration::from_secs(budget_s), elapsed: start.elapsed(), tally }
}

fn splits(k: usize) -> impl Iterator<Item = usize> {
    1..k
}

fn appendix_a_sweep(t: &mut Tally) {
    let profiles: Vec<GradingProfile> = enumerate_gradings(2).into_iter().chain(enumerate_gradings(3)).collect();
    assert_eq!(profiles.len(), 12);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for g in &profiles {
        for _ in 0..3 {
            let inst = Instance::new(g.clone(), draw(&mut rng, g.k()), DEFAULT_CUTOFF);
            t.run(Suite::AppendixA, &inst);
        }
    }
}

fn ybe_sweep(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for g in gradings_of(&[(2, 0), (1, 1), (2, 1)]) {
        let inst = Instance::new(g.clone(), draw(&mut rng, g.k()), DEFAULT_CUTOFF);
        t.run(Suite::Ybe, &inst);
    }
}

const CONTRACTION_SIZES: [(usize, usize); 3] = [(2, 1), (3, 0), (1, 2)];

fn contracted_coincidence(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for g in gradings_of(&CONTRACTION_SIZES) {
        let k = g.k();
        for a in splits(k) {
            let sub = SubsetI::tail(a, k).unwrap();
            let sp = FockSpace::verma(&g, DEFAULT_CUTOFF, Semantics::Trig, ScalarCtx::exact()).unwrap();
            let osc = Osc::standard(&sp);
            let lam = draw(&mut rng, k - a);
            let lim = match renormalized_verma(&g, sub, &lam, &osc).map_err(|e| e.to_string()).and_then(|r| limit_q(&r).map_err(|e| e.to_string())) {
                Ok(x) => x,
                Err(e) => {
                    t.instances += 1;
                    t.failures.push(format!("{} a={a}: {e}", g.bit_string()));
                    continue;
                }
            };
            let mut w = vec![Weight::ZERO; k];
            for (i, l) in sub.i_set().iter().zip(&lam) {
                w[i - 1] = Weight::int(*l);
            }
            let reduced = osc.restrict(|i, b| sub.in_i(i) || sub.in_i(b));
            let con = contracted_family(&g, sub, &w, &reduced, "contracted").unwrap();
            let removed: Vec<usize> = sp.modes().iter().enumerate().filter(|(_, m)| sub.in_ibar(m.i) && sub.in_ibar(m.a)).map(|(n, _)| n).collect();
            let keep = |s: usize| removed.iter().all(|n| sp.occupation(s, *n) == 0);
            t.add(&compare_families_on(&lim, &con, &keep));
        }
    }
}

fn contracted_algebra(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for g in gradings_of(&CONTRACTION_SIZES) {
        let w = draw(&mut rng, g.k());
        for a in splits(g.k()) {
            let inst = Instance::new(g.clone(), w.clone(), DEFAULT_CUTOFF).with_split(Some(a));
            t.run(Suite::AppendixA, &inst);
            t.run(Suite::Chevalley, &inst);
        }
    }
}

fn closed_forms(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for g in gradings_of(&CONTRACTION_SIZES) {
        let k = g.k();
        let mu = rng.gen_range(WEIGHT_RANGE);
        let ctx = ScalarCtx::exact();
        let sub = SubsetI::tail(1, k).unwrap();
        let sp = rectangular_space(&g, &sub, DEFAULT_CUTOFF, Semantics::Trig, ctx.clone()).unwrap();
        t.add(&compare_families(&build_contracted_mu(&g, sub, mu, &sp).unwrap(), &closed_form_a1_limit(&g, mu, &sp).unwrap()));
        let sub = SubsetI::tail(k - 1, k).unwrap();
        let sp = rectangular_space(&g, &sub, DEFAULT_CUTOFF, Semantics::Trig, ctx.clone()).unwrap();
        t.add(&compare_families(&build_contracted_mu(&g, sub, mu, &sp).unwrap(), &closed_form_last_limit(&g, mu, &sp).unwrap()));

        let l1 = rng.gen_range(WEIGHT_RANGE);
        let modes: Vec<(usize, usize)> = (2..=k).map(|j| (1, j)).collect();
        let sp = FockSpace::new(&g, &modes, DEFAULT_CUTOFF, Semantics::Trig, ctx).unwrap();
        let osc = Osc::standard(&sp).restrict(|i, _| i == 1);
        let mut lambda = vec![Weight::int(l1)];
        lambda.extend((2..=k).map(|i| Weight::int(mu * g.s(i))));
        let general = verma_family(&g, &lambda, &osc, "verma-reduced").unwrap();
        t.add(&compare_families(&general, &build_reduced_a1(&g, l1, mu, &sp).unwrap()));
    }
}

fn rational_sector(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    for g in gradings_of(&[(2, 0), (1, 1), (2, 1)]) {
        let w = draw(&mut rng, g.k());
        t.run(Suite::Factorization, &Instance::new(g.clone(), w.clone(), RATIONAL_CUTOFF));
        t.run(Suite::Rational, &Instance::new(g.clone(), w.clone(), RATIONAL_CUTOFF));
        for a in splits(g.k()) {
            t.run(Suite::Rational, &Instance::new(g.clone(), w.clone(), RATIONAL_CUTOFF).with_split(Some(a)));
        }
    }
}

fn holstein_primakoff(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    for g in gradings_mn(2, 1) {
        t.run(Suite::AppendixD, &Instance::new(g.clone(), draw(&mut rng, 3), DEFAULT_CUTOFF));
    }
}

fn chains(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    for g in gradings_of(&[(2, 0), (1, 1)]) {
        t.run(Suite::AppendixBChains, &Instance::new(g.clone(), draw(&mut rng, 2), CHAIN_CUTOFF));
    }
}

fn highest_weight(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let profiles: Vec<GradingProfile> = enumerate_gradings(2).into_iter().chain(enumerate_gradings(3)).collect();
    for g in profiles {
        let w = draw(&mut rng, g.k());
        t.run(Suite::HighestWeight, &Instance::new(g.clone(), w.clone(), DEFAULT_CUTOFF));
        for a in splits(g.k()) {
            t.run(Suite::HighestWeight, &Instance::new(g.clone(), w.clone(), DEFAULT_CUTOFF).with_split(Some(a)));
        }
    }
}

fn backends(t: &mut Tally) {
    let cfg = AgreementConfig::default();
    assert_eq!((cfg.identities, cfg.points), (50, 5));
    let rep = backend_agreement(&cfg);
    if rep.checks != 50 {
        t.failures.push(format!("expected 50 drawn identities, got {}", rep.checks));
    }
    t.add(&rep);
}

#[test]
fn acceptance() {
    assert_eq!(FLOAT_TOL, TOLERANCE);
    let outcomes = vec![
        criterion(1, "relation sweep on Verma families, 12 profiles x 3 weight draws, D=3", 60, appendix_a_sweep),
        criterion(2, "trigonometric RLL for the FRT image at (2,0), (1,1), (2,1), D=3", 120, ybe_sweep),
        criterion(3, "renormalized q^m -> 0 limit equals the contracted family, all splits", 120, contracted_coincidence),
        criterion(4, "contracted relations and contracted Chevalley relations, all splits", 60, contracted_algebra),
        criterion(5, "closed forms at a=1 and a=K-1, reduced a=1 Verma family", 30, closed_forms),
        criterion(6, "rational sector: factorization, brackets, large-m limit, degenerate RLL, D=4", 120, rational_sector),
        criterion(7, "Holstein-Primakoff family, its L-operator and both limits, (2,1), all rows", 120, holstein_primakoff),
        criterion(8, "automorphism chains between the four realizations, (2,0), (1,1), D=4", 60, chains),
        criterion(9, "vacuum is a highest-weight vector for the families above", 60, highest_weight),
        criterion(10, "float backend agrees on 50 drawn identities at 5 points, tolerance 1e-9", 30, backends),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.number).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
