//! L-operators of the q-Holstein–Primakoff realization and of its two
//! asymptotic limits, written out entry by entry, plus the renormalizations
//! that lead from one to the other.

use super::{rescale_spectral, transform_diagonal, zero_entry, LaxError, LaxOperator};
use crate::fock::{FockOperator, FockSpace};
use crate::grading::GradingProfile;
use crate::realizations::osc::{prod, Osc};
use crate::scalar::{var, Weight};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpVariant {
    /// The image of the realization with parameter `m`.
    Full { m: Weight },
    /// The `q^m → 0` limit, with the shift `m → m + p_i μ`.
    Limit0 { mu: i64 },
    /// The `q^m → ∞` limit.
    LimitInf,
}

pub fn hp_l_entries(g: &GradingProfile, i0: usize, which: HpVariant, space: &Arc<FockSpace>) -> Result<LaxOperator, LaxError> {
    hp_l_with(g, i0, which, &Osc::standard(space))
}

pub fn hp_l_with(g: &GradingProfile, i0: usize, which: HpVariant, o: &Osc) -> Result<LaxOperator, LaxError> {
    let k = g.k();
    if i0 == 0 || i0 > k {
        return Err(LaxError::Other(format!("row {i0} outside 1..{k}")));
    }
    let i = i0;
    let p = |x: usize| g.s(x);
    let pi = p(i);
    let sp = o.space();
    let ctx = o.ctx();
    let dl = ctx.delta();
    let ibar: Vec<usize> = (1..=k).filter(|a| *a != i).collect();
    let nib = o.nr_set(i, &ibar);
    let nr = |lo: usize, hi: usize| o.nr(i, lo, hi);
    let pair = |b: usize, a: usize| o.cd(i, b) * o.c(i, a);
    let same_side = |a: usize, b: usize| (a < i) == (b < i);
    let zero = |a: usize, b: usize| zero_entry(g, sp, a, b);
    let mut l = Vec::with_capacity(k * k);
    let mut lb = Vec::with_capacity(k * k);
    match which {
        HpVariant::Full { m } => {
            let fm = o.form(m);
            let bracket = o.qb(&fm.sub(&nib.scale(pi)));
            for a in 1..=k {
                for b in 1..=k {
                    l.push(if a < b {
                        zero(a, b)
                    } else if a == i && b == i {
                        o.q(&fm.sub(&nib.scale(pi)))
                    } else if a == b {
                        o.q(&o.n(i, a).scale(p(a)))
                    } else if b == i {
                        &o.c(i, a).scale_int(p(a)) * &o.q(&fm.add(&nr(i + 1, a - 1).scale(pi)))
                    } else if a == i {
                        let ex = fm.sub(&nr(1, b - 1).add(&nr(i + 1, k)).scale(pi));
                        prod(&[o.cd(i, b), &bracket, &o.q(&ex)]).scale(&(&dl * &dl).scale_int(-1))
                    } else if same_side(a, b) {
                        (&pair(b, a) * &o.q(&nr(b, a - 1).scale(pi))).scale(&dl.scale_int(p(a)))
                    } else {
                        let ex = fm.scale(2).add(&o.int(1).sub(&nr(1, b - 1)).sub(&nr(a, k)).scale(pi));
                        (&pair(b, a) * &o.q(&ex)).scale(&dl.scale_int(-p(a)))
                    });
                    lb.push(if a > b {
                        zero(a, b)
                    } else if a == i && b == i {
                        o.q(&nib.scale(pi).sub(&fm))
                    } else if a == b {
                        o.q(&o.n(i, a).scale(-p(a)))
                    } else if b == i {
                        let ex = nr(1, a - 1).add(&nr(i + 1, k)).scale(pi).sub(&fm);
                        &o.c(i, a).scale_int(p(a)) * &o.q(&ex)
                    } else if a == i {
                        let ex = fm.scale(-1).sub(&nr(i + 1, b - 1).scale(pi));
                        prod(&[o.cd(i, b), &bracket, &o.q(&ex)]).scale(&(&dl * &dl).scale_int(-1))
                    } else if same_side(a, b) {
                        (&pair(b, a) * &o.q(&o.int(1).sub(&nr(a, b - 1)).scale(pi))).scale(&dl.scale_int(-p(a)))
                    } else {
                        let ex = fm.scale(-2).add(&nr(1, a - 1).add(&nr(b, k)).scale(pi));
                        (&pair(b, a) * &o.q(&ex)).scale(&dl.scale_int(p(a)))
                    });
                }
            }
        }
        HpVariant::Limit0 { mu } => {
            let fmu = o.int(pi * mu);
            for a in 1..=k {
                for b in 1..=k {
                    l.push(if a < b || (b < i && i < a) {
                        zero(a, b)
                    } else if a == i && b == i {
                        o.q(&fmu.sub(&nib.scale(pi)))
                    } else if a == b {
                        o.q(&o.n(i, a).scale(p(a)))
                    } else if b == i {
                        &o.c(i, a).scale_int(p(a)) * &o.q(&fmu.add(&nr(i + 1, a - 1).scale(pi)))
                    } else if a == i {
                        (o.cd(i, b) * &o.q(&nr(b, i - 1).scale(pi))).scale(&dl)
                    } else {
                        (&pair(b, a) * &o.q(&nr(b, a - 1).scale(pi))).scale(&dl.scale_int(p(a)))
                    });
                    lb.push(if a > b || (a != i && b != i && same_side(a, b)) {
                        zero(a, b)
                    } else if a == i && b == i {
                        o.q(&nib.scale(pi).sub(&fmu))
                    } else if b == i {
                        let ex = nr(1, a - 1).add(&nr(i + 1, k)).scale(pi).sub(&fmu);
                        &o.c(i, a).scale_int(p(a)) * &o.q(&ex)
                    } else if a == i {
                        let ex = nr(1, i - 1).add(&nr(b, k)).scale(pi).sub(&fmu.scale(2));
                        (o.cd(i, b) * &o.q(&ex)).scale(&dl)
                    } else {
                        let ex = nr(1, a - 1).add(&nr(b, k)).scale(pi).sub(&fmu.scale(2));
                        (&pair(b, a) * &o.q(&ex)).scale(&dl.scale_int(p(a)))
                    });
                }
            }
        }
        HpVariant::LimitInf => {
            for a in 1..=k {
                for b in 1..=k {
                    l.push(if a < b {
                        zero(a, b)
                    } else if a == i && b == i {
                        o.q(&nib.scale(-pi))
                    } else if a == b {
                        o.q(&o.n(i, a).scale(p(a)))
                    } else if b == i {
                        &o.c(i, a).scale_int(p(a)) * &o.q(&nr(i + 1, a - 1).scale(pi))
                    } else if a == i {
                        let ex = nib.add(&nr(1, b - 1)).add(&nr(i + 1, k)).scale(-pi);
                        (o.cd(i, b) * &o.q(&ex)).scale(&dl.scale_int(-1))
                    } else if same_side(a, b) {
                        (&pair(b, a) * &o.q(&nr(b, a - 1).scale(pi))).scale(&dl.scale_int(p(a)))
                    } else {
                        let ex = o.int(1).sub(&nr(1, b - 1)).sub(&nr(a, k)).scale(pi);
                        (&pair(b, a) * &o.q(&ex)).scale(&dl.scale_int(-p(a)))
                    });
                    lb.push(if a > b || (a == i && b == i) {
                        zero(a, b)
                    } else if a == b {
                        o.q(&o.n(i, a).scale(-p(a)))
                    } else if b == i {
                        &o.c(i, a).scale_int(p(a)) * &o.q(&nr(1, a - 1).add(&nr(i + 1, k)).scale(pi))
                    } else if a == i {
                        let ex = nib.add(&nr(i + 1, b - 1)).scale(-pi);
                        (o.cd(i, b) * &o.q(&ex)).scale(&dl.scale_int(-1))
                    } else if same_side(a, b) {
                        (&pair(b, a) * &o.q(&o.int(1).sub(&nr(a, b - 1)).scale(pi))).scale(&dl.scale_int(-p(a)))
                    } else {
                        let ex = nr(1, a - 1).add(&nr(b, k)).scale(pi);
                        (&pair(b, a) * &o.q(&ex)).scale(&dl.scale_int(p(a)))
                    });
                }
            }
        }
    }
    let tag = match which {
        HpVariant::Full { m } => format!("hp-L i={i} m={m}"),
        HpVariant::Limit0 { mu } => format!("hp-L q^m->0 i={i} mu={mu}"),
        HpVariant::LimitInf => format!("hp-L q^m->inf i={i}"),
    };
    Ok(LaxOperator::trig(g, sp, l, lb, &tag))
}

/// Column `i0` multiplied by `t = q^{-m}`.
fn scale_column(lax: &LaxOperator, i0: usize) -> Result<LaxOperator, LaxError> {
    let ctx = lax.space.ctx();
    let hl = vec![ctx.one(); lax.k()];
    let hr: Vec<_> = (1..=lax.k()).map(|j| if j == i0 { ctx.var_pow(var::T, 1) } else { ctx.one() }).collect();
    transform_diagonal(lax, &hl, &hr)
}

/// `L(x q^{-2m}) (1 ⊗ q^{-m E_{i0 i0}})`, finite as `q^m → 0`.
pub fn renormalize_to_zero(lax: &LaxOperator, i0: usize) -> Result<LaxOperator, LaxError> {
    let t2 = lax.space.ctx().var_pow(var::T, 2);
    scale_column(&rescale_spectral(lax, &t2)?, i0)
}

/// Oscillators `c_{i0,a} ↦ q^{2m} c_{i0,a}` for `a < i0`; feed the result to
/// [`hp_l_with`] before [`renormalize_to_infinity`].
pub fn infinity_oscillators(o: &Osc, i0: usize) -> Osc {
    let t = o.ctx().var_pow(var::T, -2);
    o.rescale(|i, a| (i == i0 && a < i0).then(|| t.clone()))
}

/// `L(x) (1 ⊗ q^{-m E_{i0 i0}})`, finite as `q^m → ∞`.
pub fn renormalize_to_infinity(lax: &LaxOperator, i0: usize) -> Result<LaxOperator, LaxError> {
    scale_column(lax, i0)
}

/// `c_{i0,a} ↦ q^{-p_i μ} c_{i0,a}` for `a > i0`; feed the result to
/// [`hp_l_with`] with [`HpVariant::Limit0`] before [`mu_degenerate`].
pub fn mu_oscillators(o: &Osc, g: &GradingProfile, i0: usize, mu: i64) -> Osc {
    let s = o.ctx().qpow(-g.s(i0) * mu);
    o.rescale(|i, a| (i == i0 && a > i0).then(|| s.clone()))
}

/// `L(x q^{-p_i μ})`.
pub fn mu_degenerate(lax: &LaxOperator, i0: usize, mu: i64) -> Result<LaxOperator, LaxError> {
    let c = lax.space.ctx().qpow(-lax.grading.s(i0) * mu);
    rescale_spectral(lax, &c)
}

/// `(1 ⊗ H) L(x q^{2 p_i})` with `H = q^{p_i}` on `Ī` and `q^{-p_Ī}` at `i0`.
pub fn dress_infinity(lax: &LaxOperator, i0: usize) -> Result<LaxOperator, LaxError> {
    let g = &lax.grading;
    let ctx = lax.space.ctx();
    let pi = g.s(i0);
    let pibar: i64 = (1..=g.k()).filter(|b| *b != i0).map(|b| g.s(b)).sum();
    let hl: Vec<_> = (1..=g.k()).map(|b| if b == i0 { ctx.qpow(-pibar) } else { ctx.qpow(pi) }).collect();
    let hr = vec![ctx.one(); g.k()];
    transform_diagonal(&rescale_spectral(lax, &ctx.qpow(2 * pi))?, &hl, &hr)
}

/// `L_ii L̄_ii`.
pub fn diagonal_product(lax: &LaxOperator, i: usize) -> FockOperator {
    lax.l(i, i) * lax.lbar(i, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lax::{frt_from_family, ps_r};
    use crate::realizations::automorphisms::{row_dressing, swap_oscillators};
    use crate::realizations::{build_holstein_primakoff, hp_space};
    use crate::fock::Semantics;
    use crate::scalar::ScalarCtx;
    use crate::verify::{check_ybe, compare_lax, limit_lax, Direction};

    const GRADINGS: [&str; 3] = ["001", "010", "100"];

    fn space(g: &GradingProfile, i0: usize, d: u32) -> Arc<FockSpace> {
        hp_space(g, i0, d, Semantics::Trig, ScalarCtx::exact()).unwrap()
    }

    #[test]
    fn printed_entries_match_frt_image() {
        for gs in GRADINGS.iter().chain(&["01", "011"]) {
            let g = GradingProfile::parse(gs).unwrap();
            for i0 in 1..=g.k() {
                let sp = space(&g, i0, 3);
                for m in [Weight::int(3), Weight::sym(1)] {
                    let fam = build_holstein_primakoff(&g, i0, m, &sp).unwrap();
                    let frt = frt_from_family(&fam).unwrap();
                    let printed = hp_l_entries(&g, i0, HpVariant::Full { m }, &sp).unwrap();
                    let rep = compare_lax(&frt, &printed);
                    assert!(rep.pass(), "{gs} i0={i0} m={m}: {}", rep.summary());
                }
            }
        }
    }

    #[test]
    fn all_variants_satisfy_rll() {
        for gs in GRADINGS.iter().chain(&["01", "11"]) {
            let g = GradingProfile::parse(gs).unwrap();
            let r = ps_r(&g, &ScalarCtx::exact());
            for i0 in 1..=g.k() {
                let sp = space(&g, i0, 3);
                for which in [HpVariant::Full { m: Weight::sym(1) }, HpVariant::Limit0 { mu: 0 }, HpVariant::Limit0 { mu: 2 }, HpVariant::LimitInf] {
                    let lax = hp_l_entries(&g, i0, which, &sp).unwrap();
                    let rep = check_ybe(&lax, &r);
                    assert!(rep.pass(), "{gs} i0={i0} {which:?}: {}", rep.summary());
                }
            }
        }
    }

    #[test]
    fn zero_limit_reproduces_printed_entries() {
        for gs in GRADINGS {
            let g = GradingProfile::parse(gs).unwrap();
            for i0 in 1..=3 {
                let sp = space(&g, i0, 3);
                for mu in [0, 1, -2] {
                    let shifted = Weight { c: g.s(i0) * mu, m: 1 };
                    let full = hp_l_entries(&g, i0, HpVariant::Full { m: shifted }, &sp).unwrap();
                    let lim = limit_lax(&renormalize_to_zero(&full, i0).unwrap(), var::T, Direction::Infinity).unwrap();
                    let printed = hp_l_entries(&g, i0, HpVariant::Limit0 { mu }, &sp).unwrap();
                    let rep = compare_lax(&lim, &printed);
                    assert!(rep.pass(), "{gs} i0={i0} mu={mu}: {}", rep.summary());
                }
            }
        }
    }

    #[test]
    fn infinity_limit_reproduces_printed_entries() {
        for gs in GRADINGS {
            let g = GradingProfile::parse(gs).unwrap();
            for i0 in 1..=3 {
                let sp = space(&g, i0, 3);
                let o = infinity_oscillators(&Osc::standard(&sp), i0);
                let full = hp_l_with(&g, i0, HpVariant::Full { m: Weight::sym(1) }, &o).unwrap();
                let lim = limit_lax(&renormalize_to_infinity(&full, i0).unwrap(), var::T, Direction::Zero).unwrap();
                let printed = hp_l_entries(&g, i0, HpVariant::LimitInf, &sp).unwrap();
                let rep = compare_lax(&lim, &printed);
                assert!(rep.pass(), "{gs} i0={i0}: {}", rep.summary());
                assert!(printed.lbar(i0, i0).is_zero());
            }
        }
    }

    #[test]
    fn unrenormalized_limit_diverges() {
        let g = GradingProfile::parse("001").unwrap();
        let sp = space(&g, 2, 3);
        let full = hp_l_entries(&g, 2, HpVariant::Full { m: Weight::sym(1) }, &sp).unwrap();
        assert!(limit_lax(&full, var::T, Direction::Infinity).is_err());
        assert!(limit_lax(&full, var::T, Direction::Zero).is_err());
    }

    #[test]
    fn mu_dependence_sits_in_one_entry() {
        for gs in GRADINGS {
            let g = GradingProfile::parse(gs).unwrap();
            for i0 in 1..=3 {
                let sp = space(&g, i0, 3);
                let ctx = sp.ctx();
                let base = Osc::standard(&sp);
                let at = |mu: i64| {
                    let lax = hp_l_with(&g, i0, HpVariant::Limit0 { mu }, &mu_oscillators(&base, &g, i0, mu)).unwrap();
                    mu_degenerate(&lax, i0, mu).unwrap()
                };
                let ref0 = at(0);
                for mu in [1, 3, -1] {
                    let lax = at(mu);
                    let expect = FockOperator::scalar(&sp, &ctx.qpow(g.s(i0) * mu));
                    let cols = sp.admissible_block(0).unwrap();
                    assert!(diagonal_product(&lax, i0).equal_on(&expect, &cols).is_none());
                    assert!((lax.lbar(i0, i0) * lax.l(i0, i0)).equal_on(&expect, &cols).is_none());
                    let patched = lax.clone().with_entry(0, i0, i0, ref0.l(i0, i0).clone());
                    let rep = compare_lax(&patched, &ref0);
                    assert!(rep.pass(), "{gs} i0={i0} mu={mu}: {}", rep.summary());
                    assert!(!compare_lax(&lax, &ref0).pass());
                }
            }
        }
    }

    #[test]
    fn dressed_infinity_operator_satisfies_rll() {
        for gs in GRADINGS.iter().chain(&["01", "10"]) {
            let g = GradingProfile::parse(gs).unwrap();
            let r = ps_r(&g, &ScalarCtx::exact());
            for i0 in 1..=g.k() {
                let sp = space(&g, i0, 3);
                let o = swap_oscillators(&row_dressing(&Osc::standard(&sp), &g, i0), &g, |_, _| true);
                let lax = dress_infinity(&hp_l_with(&g, i0, HpVariant::LimitInf, &o).unwrap(), i0).unwrap();
                let rep = check_ybe(&lax, &r);
                assert!(rep.pass(), "{gs} i0={i0}: {}", rep.summary());
                assert!(lax.lbar(i0, i0).is_zero());
            }
        }
    }
}
