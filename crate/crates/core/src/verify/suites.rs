//! Named verification suites run on a single configured instance. Each suite
//! builds its families from the instance data and merges everything it checks
//! into one report.

use super::{
    check_appendix_a, check_chevalley, check_factorization, check_gl_relations, check_highest_weight, check_highest_weight_lax, check_vacuum, check_ybe,
    compare_families, compare_families_on, compare_lax, limit_lax, limit_q, limit_rational, limit_rational_lax, renormalized_verma, Direction,
    VerificationReport,
};
use crate::fock::{FockSpace, Semantics};
use crate::grading::{GradingProfile, SubsetI};
use crate::lax::hp::{dress_infinity, infinity_oscillators, renormalize_to_infinity, renormalize_to_zero};
use crate::lax::{
    contracted_l_entries, factorize, frt_from_family, hp_l_entries, hp_l_with, ps_r, rational_degenerate_l, rational_factorized, rational_lax, rational_r,
    ContractedL, HpVariant,
};
use crate::realizations::automorphisms::{real1_to_real3, real3_to_real2, row_dressing, swap_oscillators, verma_to_real1};
use crate::realizations::contracted::contracted_family;
use crate::realizations::osc::Osc;
use crate::realizations::{
    build_chevalley_contracted, build_contracted, build_contracted_mu, build_holstein_primakoff, build_reduced_a1, build_verma, closed_form_a1_limit,
    closed_form_last_limit, contracted_rational_family, contracted_space, hp_space, large_m_family, large_m_weights, rational_family, rectangular_space,
    variant_family, verma_family, GeneratorFamily, Variant,
};
use crate::scalar::{var, FloatPoint, Scalar, ScalarCtx, Weight};
use num_complex::Complex64;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Backend {
    Exact,
    Float(Complex64),
}

impl Backend {
    pub fn ctx(self) -> ScalarCtx {
        match self {
            Backend::Exact => ScalarCtx::exact(),
            Backend::Float(q) => ScalarCtx::float(FloatPoint::new(q, 1.0)),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float(q) => write!(f, "float(q={}{:+}i)", q.re, q.im),
        }
    }
}

/// One point of a sweep. `weights` always has one entry per index; the
/// contracted families read their `λ_I` from the tail and `μ` from the last
/// entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub grading: GradingProfile,
    pub split: Option<usize>,
    pub weights: Vec<i64>,
    pub cutoff: u32,
    pub backend: Backend,
}

impl Instance {
    pub fn new(grading: GradingProfile, weights: Vec<i64>, cutoff: u32) -> Self {
        Instance { grading, split: None, weights, cutoff, backend: Backend::Exact }
    }

    pub fn with_split(mut self, a: Option<usize>) -> Self {
        self.split = a;
        self
    }

    pub fn descriptor(&self) -> String {
        let split = self.split.map(|a| format!(" a={a}")).unwrap_or_default();
        format!("grading={}{split} weights={:?} D={} {}", self.grading.bit_string(), self.weights, self.cutoff, self.backend)
    }

    fn sub(&self) -> Option<SubsetI> {
        self.split.and_then(|a| SubsetI::tail(a, self.grading.k()).ok())
    }

    fn lambda_i(&self, a: usize) -> Vec<i64> {
        self.weights[a..].to_vec()
    }

    fn mu(&self) -> i64 {
        *self.weights.last().unwrap_or(&0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    AppendixA,
    Chevalley,
    Ybe,
    Limits,
    Rational,
    Factorization,
    HighestWeight,
    AppendixBChains,
    AppendixD,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::AppendixA,
        Suite::Chevalley,
        Suite::Ybe,
        Suite::Limits,
        Suite::Rational,
        Suite::Factorization,
        Suite::HighestWeight,
        Suite::AppendixBChains,
        Suite::AppendixD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AppendixA => "appendix-a",
            Suite::Chevalley => "chevalley",
            Suite::Ybe => "ybe",
            Suite::Limits => "limits",
            Suite::Rational => "rational",
            Suite::Factorization => "factorization",
            Suite::HighestWeight => "highest-weight",
            Suite::AppendixBChains => "appendix-b-chains",
            Suite::AppendixD => "appendix-d",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }

    /// What the suite checks.
    pub fn covers(self) -> &'static [&'static str] {
        match self {
            Suite::AppendixA => &[
                "all quadratic relations among the e_ij (17 families), swept over every index pattern",
                "contracted variant: q^{p_c ē}q^{p_c e} = θ(c∈I), ē_ii = 0 and e_ij = 0 (i > j) on Ī",
            ],
            Suite::Chevalley => &["[k_i, k_j] = 0", "[e_i, e_j] = 0 for a_ij = 0", "contracted [e_i, f_i] with θ-weighted q^{±h_i}"],
            Suite::Ybe => &[
                "graded RLL relation for the FRT image of the Verma family",
                "printed contracted L-operators against their FRT image, and their RLL relation",
            ],
            Suite::Limits => &[
                "renormalized Verma family at q^m → 0 equals the contracted family after dropping Ī×Ī oscillators",
                "closed forms of the contracted family at a = 1 and a = K−1, and the reduced a = 1 Verma family",
                "divergence of the unrenormalized family",
            ],
            Suite::Rational => &[
                "gl(M|N) brackets of the rational family",
                "large-m limit against the printed degenerate family and the contracted rational relations",
                "dropping the Ī×Ī annihilators gives the reduced contracted family",
                "degenerate rational L-operator: limit, and RLL relation with R(v−u)",
            ],
            Suite::Factorization => &[
                "z y = 1 with signs, chain sum for y against forward substitution",
                "the three branches of D y, D–D and z–D brackets",
                "e_ij = (z D z^{-1})_ji against the rational family, and RLL for z(u+D)z^{-1}",
            ],
            Suite::HighestWeight => &[
                "e_ii|0> = λ_i|0>, e_{j,j+1}|0> = 0",
                "L_ii|0>, L̄_ii|0> eigenvalues and L_ij(x)|0> = 0 for i > j",
                "contracted: L_ii(x)|0> = |0> on Ī",
            ],
            Suite::AppendixBChains => &["automorphism chains Verma → difference type → mirror type → exchanged type, as family equalities"],
            Suite::AppendixD => &[
                "q-Holstein–Primakoff family: all quadratic relations",
                "printed L-operator against its FRT image, RLL relation",
                "q^m → 0 and q^m → ∞ renormalized limits against the printed operators",
            ],
        }
    }

    /// Cutoff used when none is given. Identities whose words climb higher
    /// than the cutoff are reported through `max_headroom`.
    pub fn default_cutoff(self) -> u32 {
        match self {
            Suite::AppendixBChains | Suite::Rational | Suite::Factorization => 4,
            _ => 3,
        }
    }

    pub fn needs_exact(self) -> bool {
        !matches!(self, Suite::AppendixA | Suite::Ybe | Suite::HighestWeight | Suite::AppendixBChains)
    }

    /// Whether the suite is run once per contiguous split.
    pub fn uses_split(self) -> bool {
        matches!(self, Suite::AppendixA | Suite::Chevalley | Suite::Ybe | Suite::Limits | Suite::Rational | Suite::HighestWeight)
    }

    /// Whether the suite also has an instance without a split.
    pub fn runs_unsplit(self) -> bool {
        !matches!(self, Suite::Chevalley | Suite::Limits)
    }

    pub fn run(self, inst: &Instance) -> VerificationReport {
        let start = Instant::now();
        let mut rep = VerificationReport::new(self.name(), &inst.descriptor());
        let k = inst.grading.k();
        if inst.weights.len() != k {
            rep.error(format!("expected {k} weights, got {}", inst.weights.len()));
            return rep;
        }
        if inst.split.is_some() && inst.sub().is_none() {
            rep.error(format!("split a must lie in 1..{}", k.saturating_sub(1)));
            return rep;
        }
        let out = match self {
            Suite::AppendixA => appendix_a(inst, &mut rep),
            Suite::Chevalley => chevalley(inst, &mut rep),
            Suite::Ybe => ybe(inst, &mut rep),
            Suite::Limits => limits(inst, &mut rep),
            Suite::Rational => rational(inst, &mut rep),
            Suite::Factorization => factorization(inst, &mut rep),
            Suite::HighestWeight => highest_weight(inst, &mut rep),
            Suite::AppendixBChains => chains(inst, &mut rep),
            Suite::AppendixD => appendix_d(inst, &mut rep),
        };
        if let Err(e) = out {
            rep.error(e);
        }
        rep.millis = start.elapsed().as_millis();
        rep
    }
}

type Step = Result<(), String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

/// Merges a sub-report, prefixing its failure labels.
fn add(rep: &mut VerificationReport, what: &str, sub: VerificationReport) {
    let mut sub = sub;
    for f in &mut sub.failures {
        f.label = format!("{what}: {}", f.label);
    }
    sub.errors.iter_mut().for_each(|e| *e = format!("{what}: {e}"));
    rep.merge(sub);
}

fn split_of(inst: &Instance) -> Result<(SubsetI, usize), String> {
    let sub = inst.sub().ok_or("this suite needs a split a")?;
    Ok((sub, inst.split.unwrap()))
}

fn verma_space(inst: &Instance, semantics: Semantics) -> Result<std::sync::Arc<FockSpace>, String> {
    FockSpace::verma(&inst.grading, inst.cutoff, semantics, inst.backend.ctx()).map_err(err)
}

fn appendix_a(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let ctx = inst.backend.ctx();
    match inst.sub() {
        None => {
            let sp = verma_space(inst, Semantics::Trig)?;
            add(rep, "verma", check_appendix_a(&build_verma(g, &inst.weights, &sp).map_err(err)?));
        }
        Some(sub) => {
            let a = inst.split.unwrap();
            let sp = contracted_space(g, &sub, inst.cutoff, Semantics::Trig, ctx.clone()).map_err(err)?;
            add(rep, "contracted λ", check_appendix_a(&build_contracted(g, sub, &inst.lambda_i(a), &sp).map_err(err)?));
            let sp = rectangular_space(g, &sub, inst.cutoff, Semantics::Trig, ctx).map_err(err)?;
            add(rep, "contracted μ", check_appendix_a(&build_contracted_mu(g, sub, inst.mu(), &sp).map_err(err)?));
        }
    }
    Ok(())
}

fn chevalley(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let (sub, _) = split_of(inst)?;
    let sp = rectangular_space(g, &sub, inst.cutoff, Semantics::Trig, inst.backend.ctx()).map_err(err)?;
    let x = sp.ctx().var_pow(var::X, 1);
    let ch = build_chevalley_contracted(g, sub, inst.mu(), &x, &sp).map_err(err)?;
    add(rep, "contracted chevalley", check_chevalley(&ch));
    Ok(())
}

fn ybe(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let ctx = inst.backend.ctx();
    let r = ps_r(g, &ctx);
    match inst.sub() {
        None => {
            let sp = verma_space(inst, Semantics::Trig)?;
            let lax = frt_from_family(&build_verma(g, &inst.weights, &sp).map_err(err)?).map_err(err)?;
            add(rep, "verma", check_ybe(&lax, &r));
        }
        Some(sub) => {
            let a = inst.split.unwrap();
            let sp = rectangular_space(g, &sub, inst.cutoff, Semantics::Trig, ctx.clone()).map_err(err)?;
            let printed = contracted_l_entries(g, sub, &ContractedL::Mu(inst.mu()), &sp).map_err(err)?;
            let frt = frt_from_family(&build_contracted_mu(g, sub, inst.mu(), &sp).map_err(err)?).map_err(err)?;
            add(rep, "contracted μ entries", compare_lax(&printed, &frt));
            add(rep, "contracted μ", check_ybe(&printed, &r));
            let sp = contracted_space(g, &sub, inst.cutoff, Semantics::Trig, ctx).map_err(err)?;
            let lam = inst.lambda_i(a);
            let printed = contracted_l_entries(g, sub, &ContractedL::Lambda(lam.clone()), &sp).map_err(err)?;
            let frt = frt_from_family(&build_contracted(g, sub, &lam, &sp).map_err(err)?).map_err(err)?;
            add(rep, "contracted λ entries", compare_lax(&printed, &frt));
            add(rep, "contracted λ", check_ybe(&printed, &r));
        }
    }
    Ok(())
}

fn limits(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let k = g.k();
    let (sub, a) = split_of(inst)?;
    let sp = verma_space(inst, Semantics::Trig)?;
    let osc = Osc::standard(&sp);
    let lam = inst.lambda_i(a);
    let lim = limit_q(&renormalized_verma(g, sub, &lam, &osc).map_err(err)?).map_err(err)?;
    let mut w = vec![Weight::ZERO; k];
    for (i, l) in sub.i_set().iter().zip(&lam) {
        w[i - 1] = Weight::int(*l);
    }
    let reduced = osc.restrict(|i, b| sub.in_i(i) || sub.in_i(b));
    let con = contracted_family(g, sub, &w, &reduced, "contracted").map_err(err)?;
    let removed: Vec<usize> = sp.modes().iter().enumerate().filter(|(_, m)| sub.in_ibar(m.i) && sub.in_ibar(m.a)).map(|(n, _)| n).collect();
    let keep = |s: usize| removed.iter().all(|n| sp.occupation(s, *n) == 0);
    add(rep, "q^m → 0", compare_families_on(&lim, &con, &keep));

    let mut sym = vec![Weight::ZERO; k];
    for i in sub.ibar_set() {
        sym[i - 1] = Weight::sym(g.s(i));
    }
    let plain = verma_family(g, &sym, &osc, "verma").map_err(err)?;
    if limit_q(&plain).is_ok() {
        rep.fail("unrenormalized limit", "the plain family has a finite limit, expected a divergence");
    } else {
        rep.record(super::CheckOutcome::pass("unrenormalized limit diverges", 0, 0));
    }

    let ctx = inst.backend.ctx();
    let mu = inst.mu();
    if a == 1 || a == k - 1 {
        let sp = rectangular_space(g, &sub, inst.cutoff, Semantics::Trig, ctx.clone()).map_err(err)?;
        let general = build_contracted_mu(g, sub, mu, &sp).map_err(err)?;
        if a == 1 {
            add(rep, "closed form a=1", compare_families(&general, &closed_form_a1_limit(g, mu, &sp).map_err(err)?));
        }
        if a == k - 1 {
            add(rep, "closed form a=K-1", compare_families(&general, &closed_form_last_limit(g, mu, &sp).map_err(err)?));
        }
    }
    if a == 1 {
        let modes: Vec<(usize, usize)> = (2..=k).map(|j| (1, j)).collect();
        let sp = FockSpace::new(g, &modes, inst.cutoff, Semantics::Trig, ctx).map_err(err)?;
        let osc = Osc::standard(&sp).restrict(|i, _| i == 1);
        let l1 = inst.weights[0];
        let mut lambda = vec![Weight::int(l1)];
        lambda.extend((2..=k).map(|i| Weight::int(mu * g.s(i))));
        let v = verma_family(g, &lambda, &osc, "verma-reduced").map_err(err)?;
        add(rep, "reduced a=1", compare_families(&v, &build_reduced_a1(g, l1, mu, &sp).map_err(err)?));
    }
    Ok(())
}

fn rational(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let k = g.k();
    let sp = verma_space(inst, Semantics::Rational)?;
    let o = Osc::standard(&sp);
    let r = rational_r(g, sp.ctx());
    match inst.sub() {
        None => {
            let lam: Vec<Weight> = inst.weights.iter().map(|x| Weight::int(*x)).collect();
            let fam = rational_family(g, &lam, &o, "rational").map_err(err)?;
            add(rep, "gl brackets", check_gl_relations(&fam));
            add(rep, "rational RLL", check_ybe(&rational_lax(&fam), &r));
        }
        Some(sub) => {
            let a = inst.split.unwrap();
            let li = inst.lambda_i(a);
            let w = large_m_weights(g, sub, &li).map_err(err)?;
            let fam = rational_family(g, &w, &o, "rational").map_err(err)?;
            let lim = limit_rational(&fam, sub).map_err(err)?;
            let fact = factorize(g, &w, &o).map_err(err)?;
            add(rep, "large-m limit", compare_families(&lim, &large_m_family(g, sub, &li, &o, &fact).map_err(err)?));
            add(rep, "contracted brackets", check_gl_relations(&lim));

            let dropped = o.without_annihilators(|i, j| sub.in_ibar(i) && sub.in_ibar(j));
            let reduced_fam = rational_family(g, &w, &dropped, "rational").map_err(err)?;
            let lim = limit_rational(&reduced_fam, sub).map_err(err)?;
            let printed = contracted_rational_family(g, sub, &li, &o).map_err(err)?;
            add(rep, "reduced limit", compare_families(&lim, &printed));
            add(rep, "reduced brackets", check_gl_relations(&printed));

            let lim = limit_rational_lax(&rational_lax(&reduced_fam), sub).map_err(err)?;
            let degenerate = rational_degenerate_l(&printed, sub);
            add(rep, "degenerate operator", compare_lax(&lim, &degenerate));
            add(rep, "degenerate RLL", check_ybe(&degenerate, &r));
            let _ = k;
        }
    }
    Ok(())
}

fn factorization(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let sp = verma_space(inst, Semantics::Rational)?;
    let o = Osc::standard(&sp);
    let lam: Vec<Weight> = inst.weights.iter().map(|x| Weight::int(*x)).collect();
    let (f, lax) = rational_factorized(g, &lam, &o).map_err(err)?;
    let fam = rational_family(g, &lam, &o, "rational").map_err(err)?;
    add(rep, "factorization", check_factorization(&f, &fam));
    add(rep, "factorized RLL", check_ybe(&lax, &rational_r(g, sp.ctx())));
    Ok(())
}

fn trig_diag(g: &GradingProfile, ctx: &ScalarCtx, on: impl Fn(usize) -> Option<i64>) -> Vec<(Scalar, Scalar)> {
    (1..=g.k())
        .map(|i| match on(i) {
            Some(l) => (ctx.qpow(g.s(i) * l), ctx.qpow(-g.s(i) * l)),
            None => (ctx.one(), ctx.zero()),
        })
        .collect()
}

fn family_weights(ctx: &ScalarCtx, w: &[i64]) -> Vec<Option<Scalar>> {
    w.iter().map(|l| Some(ctx.int(*l))).collect()
}

fn highest_weight(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let k = g.k();
    let ctx = inst.backend.ctx();
    match inst.sub() {
        None => {
            let sp = verma_space(inst, Semantics::Trig)?;
            let fam = build_verma(g, &inst.weights, &sp).map_err(err)?;
            add(rep, "verma", check_highest_weight(&fam, &family_weights(&ctx, &inst.weights)));
            let lax = frt_from_family(&fam).map_err(err)?;
            add(rep, "verma L", check_highest_weight_lax(&lax, &trig_diag(g, &ctx, |i| Some(inst.weights[i - 1]))));
            if inst.backend == Backend::Exact {
                let sp = verma_space(inst, Semantics::Rational)?;
                let lam: Vec<Weight> = inst.weights.iter().map(|x| Weight::int(*x)).collect();
                let fam = rational_family(g, &lam, &Osc::standard(&sp), "rational").map_err(err)?;
                add(rep, "rational", check_highest_weight(&fam, &family_weights(&ctx, &inst.weights)));
            }
        }
        Some(sub) => {
            let a = inst.split.unwrap();
            let lam = inst.lambda_i(a);
            let at_i = |i: usize| if sub.in_i(i) { Some(lam[i - a - 1]) } else { None };
            let sp = contracted_space(g, &sub, inst.cutoff, Semantics::Trig, ctx.clone()).map_err(err)?;
            let fam = build_contracted(g, sub, &lam, &sp).map_err(err)?;
            let lax = frt_from_family(&fam).map_err(err)?;
            add(rep, "contracted λ L", check_highest_weight_lax(&lax, &trig_diag(g, &ctx, at_i)));
            let sp = rectangular_space(g, &sub, inst.cutoff, Semantics::Trig, ctx.clone()).map_err(err)?;
            let fam = build_contracted_mu(g, sub, inst.mu(), &sp).map_err(err)?;
            let lax = frt_from_family(&fam).map_err(err)?;
            let mu = inst.mu();
            add(rep, "contracted μ L", check_highest_weight_lax(&lax, &trig_diag(g, &ctx, |i| sub.in_i(i).then_some(g.s(i) * mu))));
            let _ = k;
        }
    }
    Ok(())
}

fn chains(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let sp = verma_space(inst, Semantics::Trig)?;
    let o = Osc::standard(&sp);
    let lam: Vec<Weight> = inst.weights.iter().map(|x| Weight::int(*x)).collect();
    let cases = [
        (verma_to_real1(g, &lam, &o).map_err(err)?, Variant::Real1),
        (real1_to_real3(g, &lam, &o).map_err(err)?, Variant::Real3),
        (real3_to_real2(g, &lam, &o).map_err(err)?, Variant::Real2),
    ];
    for (chained, which) in cases {
        let target = variant_family(which, g, &lam, &o).map_err(err)?;
        add(rep, which.name(), compare_families(&chained, &target));
        add(rep, &format!("{} relations", which.name()), check_appendix_a(&target));
        add(rep, &format!("{} vacuum", which.name()), check_highest_weight(&target, &family_weights(sp.ctx(), &inst.weights)));
    }
    Ok(())
}

/// Generators that kill the Holstein–Primakoff vacuum of row `i0`:
/// `e_ab` for `a < b < i0`, `i0 <= a < b`, and `b < i0 <= a`. For `i0 = 1`
/// these are all raising generators.
pub fn hp_vacuum_killers(k: usize, i0: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            if (a < b && b < i0) || (i0 <= a && a < b) || (b < i0 && i0 <= a) {
                out.push((a, b));
            }
        }
    }
    out
}

fn appendix_d(inst: &Instance, rep: &mut VerificationReport) -> Step {
    let g = &inst.grading;
    let k = g.k();
    if k < 2 {
        return Err("the Holstein–Primakoff suite needs at least two indices".into());
    }
    let r = ps_r(g, &inst.backend.ctx());
    for i0 in 1..=k {
        let sp = hp_space(g, i0, inst.cutoff, Semantics::Trig, inst.backend.ctx()).map_err(err)?;
        let tag = |s: &str| format!("i0={i0} {s}");
        let m0 = inst.weights[i0 - 1];
        for m in [Weight::int(m0), Weight::sym(1)] {
            let fam: GeneratorFamily = build_holstein_primakoff(g, i0, m, &sp).map_err(err)?;
            add(rep, &tag(&format!("relations m={m}")), check_appendix_a(&fam));
            if m == Weight::int(m0) {
                let ctx = sp.ctx();
                let w: Vec<Option<Scalar>> = (1..=k).map(|a| Some(ctx.int(if a == i0 { g.s(a) * m0 } else { 0 }))).collect();
                add(rep, &tag("vacuum"), check_vacuum(&fam, &w, &hp_vacuum_killers(k, i0)));
            }
            let frt = frt_from_family(&fam).map_err(err)?;
            let printed = hp_l_entries(g, i0, HpVariant::Full { m }, &sp).map_err(err)?;
            add(rep, &tag(&format!("printed L m={m}")), compare_lax(&frt, &printed));
        }
        let full = hp_l_entries(g, i0, HpVariant::Full { m: Weight::sym(1) }, &sp).map_err(err)?;
        add(rep, &tag("RLL"), check_ybe(&full, &r));
        for mu in [0, m0] {
            let shifted = Weight { c: g.s(i0) * mu, m: 1 };
            let full = hp_l_entries(g, i0, HpVariant::Full { m: shifted }, &sp).map_err(err)?;
            let lim = limit_lax(&renormalize_to_zero(&full, i0).map_err(err)?, var::T, Direction::Infinity).map_err(err)?;
            let printed = hp_l_entries(g, i0, HpVariant::Limit0 { mu }, &sp).map_err(err)?;
            add(rep, &tag(&format!("q^m → 0 limit μ={mu}")), compare_lax(&lim, &printed));
            add(rep, &tag(&format!("q^m → 0 RLL μ={mu}")), check_ybe(&printed, &r));
        }
        let o = infinity_oscillators(&Osc::standard(&sp), i0);
        let full = hp_l_with(g, i0, HpVariant::Full { m: Weight::sym(1) }, &o).map_err(err)?;
        let lim = limit_lax(&renormalize_to_infinity(&full, i0).map_err(err)?, var::T, Direction::Zero).map_err(err)?;
        let printed = hp_l_entries(g, i0, HpVariant::LimitInf, &sp).map_err(err)?;
        add(rep, &tag("q^m → ∞ limit"), compare_lax(&lim, &printed));
        let o = swap_oscillators(&row_dressing(&Osc::standard(&sp), g, i0), g, |_, _| true);
        let dressed = dress_infinity(&hp_l_with(g, i0, HpVariant::LimitInf, &o).map_err(err)?, i0).map_err(err)?;
        add(rep, &tag("dressed q^m → ∞ RLL"), check_ybe(&dressed, &r));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(gs: &str, w: &[i64], d: u32) -> Instance {
        Instance::new(GradingProfile::parse(gs).unwrap(), w.to_vec(), d)
    }

    #[test]
    fn every_suite_passes_on_a_small_instance() {
        for s in Suite::ALL {
            let mut splits: Vec<Option<usize>> = if s.runs_unsplit() { vec![None] } else { vec![] };
            if s.uses_split() {
                splits.extend([Some(1), Some(2)]);
            }
            for a in splits {
                let i = inst("010", &[1, -1, 2], s.default_cutoff()).with_split(a);
                let rep = s.run(&i);
                assert!(rep.pass(), "{}", rep.summary());
            }
        }
    }

    #[test]
    fn first_row_vacuum_is_killed_by_every_raising_generator() {
        let k = 4;
        let raising: Vec<(usize, usize)> = (1..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect();
        assert_eq!(hp_vacuum_killers(k, 1), raising);
        assert!(hp_vacuum_killers(3, 2).contains(&(2, 1)));
        assert!(!hp_vacuum_killers(3, 2).contains(&(1, 2)));
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
            assert!(!s.covers().is_empty());
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn short_cutoff_shows_in_the_headroom() {
        let rep = Suite::Ybe.run(&inst("00", &[1, 0], 0));
        assert!(!rep.pass());
        assert!(rep.max_headroom > 0);
    }

    #[test]
    fn bad_split_is_an_error() {
        let rep = Suite::Limits.run(&inst("01", &[0, 1], 3).with_split(Some(2)));
        assert!(!rep.pass());
        assert!(!rep.errors.is_empty());
    }

    #[test]
    fn float_backend_runs_the_relation_suites() {
        let mut i = inst("01", &[2, -1], 3);
        i.backend = Backend::Float(Complex64::from_polar(0.6, 0.4));
        for s in [Suite::AppendixA, Suite::Ybe, Suite::HighestWeight] {
            let rep = s.run(&i);
            assert!(rep.pass(), "{}", rep.summary());
        }
    }
}
