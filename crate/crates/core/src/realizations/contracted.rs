//! Contracted realizations, obtained after the asymptotic limit and the
//! removal of the oscillators with both indices outside `I`, together with
//! their closed forms and the affine Chevalley generators.

use super::osc::{prod, sum, Osc};
use super::verma::{lower_neighbour, raise_neighbour};
use super::{check_len, BarRule, ChevalleyFamily, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockError, FockOperator, FockSpace, Semantics};
use crate::grading::{GradingProfile, SubsetI};
use crate::scalar::{Scalar, ScalarCtx, Weight};
use std::sync::Arc;

fn check_subset(g: &GradingProfile, sub: &SubsetI) -> Result<(), RealizationError> {
    if sub.head || sub.k != g.k() {
        return Err(RealizationError::BadSubset("expected I = {a+1..M+N}".into()));
    }
    if sub.a == 0 || sub.a >= g.k() {
        return Err(RealizationError::BadSubset(format!("a={} leaves I or its complement empty", sub.a)));
    }
    Ok(())
}

/// Fock space on the modes with at least one index in `I`.
pub fn contracted_space(g: &GradingProfile, sub: &SubsetI, cutoff: u32, semantics: Semantics, ctx: ScalarCtx) -> Result<Arc<FockSpace>, FockError> {
    let modes = crate::fock::upper_modes(g.k(), |i, a| sub.in_i(i) || sub.in_i(a));
    FockSpace::new(g, &modes, cutoff, semantics, ctx)
}

/// Fock space on the rectangular modes `Ī×I`.
pub fn rectangular_space(g: &GradingProfile, sub: &SubsetI, cutoff: u32, semantics: Semantics, ctx: ScalarCtx) -> Result<Arc<FockSpace>, FockError> {
    let modes = crate::fock::upper_modes(g.k(), |i, a| sub.in_ibar(i) && sub.in_i(a));
    FockSpace::new(g, &modes, cutoff, semantics, ctx)
}

/// Contracted family with weights `λ_i`, `i ∈ I`.
pub fn build_contracted(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64], space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    check_subset(g, &sub)?;
    let iset = sub.i_set();
    check_len(iset.len(), lambda_i.len())?;
    let mut lambda = vec![Weight::ZERO; g.k()];
    for (i, l) in iset.iter().zip(lambda_i) {
        lambda[i - 1] = Weight::int(*l);
    }
    let osc = Osc::standard(space).restrict(|i, a| sub.in_i(i) || sub.in_i(a));
    contracted_family(g, sub, &lambda, &osc, "contracted")
}

/// Contracted family for a full weight vector (entries on `Ī` are ignored).
pub fn contracted_family(g: &GradingProfile, sub: SubsetI, lambda: &[Weight], o: &Osc, tag: &str) -> Result<GeneratorFamily, RealizationError> {
    check_subset(g, &sub)?;
    check_len(g.k(), lambda.len())?;
    let k = g.k();
    let a = sub.a;
    let ctx = o.ctx().clone();
    let iset = sub.i_set();
    let mut d = Draft::new(g, o);
    for i in 1..=k {
        if sub.in_ibar(i) {
            d.set_cartan(i, o.nr_set(i, &iset).scale(-1));
        } else {
            d.set_cartan(i, o.form(lambda[i - 1]).add(&o.nc(1, i - 1, i)).sub(&o.nr(i, i + 1, k)));
        }
    }
    for i in 1..k {
        let (pi, pj) = (g.s(i), g.s(i + 1));
        if i + 1 <= a {
            d.set(i, i + 1, ibar_raise(g, &sub, o, i));
            d.set_zero(i + 1, i);
        } else if i == a {
            let lj = lambda[i].scale(pj);
            let ex = o.form(-lj).sub(&o.nr(i, i + 1, k).scale(pi)).add(&o.nr(i + 1, i + 2, k).scale(pj)).plus_int(pi);
            let t1 = (o.c(i, i + 1) * &o.q(&ex)).scale(&ctx.delta_inv().scale_int(pi));
            let t2 = sum(
                &o.zero_op(),
                (i + 2..=k).map(|kk| {
                    let ex = o.form(-lj).sub(&o.nr(i, kk, k).scale(pi)).add(&o.nr(i + 1, kk, k).scale(pj)).plus_int(pi + pj);
                    prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
                }),
            );
            d.set(i, i + 1, &t1 + &t2);
            d.set(i + 1, i, o.cd(i, i + 1) * &o.q(&o.nc(1, i - 1, i + 1).scale(-pj)));
        } else {
            d.set(i, i + 1, raise_neighbour(g, lambda, o, i));
            d.set(i + 1, i, lower_neighbour(g, o, i));
        }
    }
    set_first_column(&mut d, g, &sub, o);
    finish_contracted(d, g, sub, tag, (1..=k).map(|i| if sub.in_i(i) { lambda[i - 1] } else { Weight::ZERO }).collect())
}

/// `e_{i,i+1}` for `i, i+1 ∈ Ī`.
fn ibar_raise(g: &GradingProfile, sub: &SubsetI, o: &Osc, i: usize) -> FockOperator {
    let k = g.k();
    let (pi, pj) = (g.s(i), g.s(i + 1));
    sum(
        &o.zero_op(),
        sub.i_set().into_iter().map(|kk| {
            let ex = o.nr(i, kk, k).scale(-pi).add(&o.nr(i + 1, kk, k).scale(pj)).plus_int(pi + pj);
            prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
        }),
    )
}

/// `e_{i1} = c†_{1i} q^{-p_1 n_{1,[a+1,i-1]}}` for `i ∈ I`, `i > 2`.
fn set_first_column(d: &mut Draft, g: &GradingProfile, sub: &SubsetI, o: &Osc) {
    for i in 3..=g.k() {
        if sub.in_i(i) && !d.is_set(i, 1) {
            d.set(i, 1, o.cd(1, i) * &o.q(&o.nr(1, sub.a + 1, i - 1).scale(-g.s(1))));
        }
    }
}

fn finish_contracted(mut d: Draft, g: &GradingProfile, sub: SubsetI, tag: &str, weights: Vec<Weight>) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    d.complete_upper()?;
    d.complete_lower(|i| sub.in_i(i))?;
    for i in 1..=k {
        for j in 1..i {
            if !d.is_set(i, j) {
                d.set_zero(i, j);
            }
        }
    }
    Ok(d.finish(tag, BarRule::Contracted(sub), Some(sub), weights))
}

/// Contracted family with `λ_i = p_i μ` on `I`, on the modes `Ī×I`.
pub fn build_contracted_mu(g: &GradingProfile, sub: SubsetI, mu: i64, space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    check_subset(g, &sub)?;
    let osc = Osc::standard(space).restrict(|i, a| sub.in_ibar(i) && sub.in_i(a));
    contracted_mu_family(g, sub, Weight::int(mu), &osc)
}

pub fn contracted_mu_family(g: &GradingProfile, sub: SubsetI, mu: Weight, o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    check_subset(g, &sub)?;
    let k = g.k();
    let a = sub.a;
    let ctx = o.ctx().clone();
    let (iset, ibar) = (sub.i_set(), sub.ibar_set());
    let mut d = Draft::new(g, o);
    for i in 1..=k {
        if sub.in_ibar(i) {
            d.set_cartan(i, o.nr_set(i, &iset).scale(-1));
        } else {
            d.set_cartan(i, o.form(mu.scale(g.s(i))).add(&o.nc_set(&ibar, i)));
        }
    }
    for i in 1..k {
        d.set(i, i + 1, mu_raise(g, &sub, mu, o, &ctx, i));
        if i + 1 <= a {
            d.set_zero(i + 1, i);
        } else if i == a {
            d.set(i + 1, i, o.cd(i, i + 1) * &o.q(&o.nc(1, i - 1, i + 1).scale(-g.s(i + 1))));
        } else {
            d.set(i + 1, i, mu_lower(g, &sub, o, i));
        }
    }
    set_first_column(&mut d, g, &sub, o);
    finish_contracted(d, g, sub, "contracted-mu", (1..=k).map(|i| if sub.in_i(i) { mu.scale(g.s(i)) } else { Weight::ZERO }).collect())
}

/// `e_{i,i+1}` of the `μ` family, also the Chevalley `e_i`, `i < M+N`.
fn mu_raise(g: &GradingProfile, sub: &SubsetI, mu: Weight, o: &Osc, ctx: &ScalarCtx, i: usize) -> FockOperator {
    let a = sub.a;
    let (pi, pj) = (g.s(i), g.s(i + 1));
    if i + 1 <= a {
        ibar_raise(g, sub, o, i)
    } else if i == a {
        let ex = o.form(-mu).sub(&o.nr_set(i, &sub.i_set()).scale(pi)).plus_int(pi);
        (o.c(i, i + 1) * &o.q(&ex)).scale(&ctx.delta_inv().scale_int(pi))
    } else {
        sum(
            &o.zero_op(),
            sub.ibar_set().into_iter().map(|kk| {
                let ex = o.nc(kk + 1, a, i).scale(-pi).add(&o.nc(kk + 1, a, i + 1).scale(pj));
                prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&ex)])
            }),
        )
    }
}

/// `e_{i+1,i}` of the `μ` family for `i, i+1 ∈ I`.
fn mu_lower(g: &GradingProfile, sub: &SubsetI, o: &Osc, i: usize) -> FockOperator {
    let (pi, pj) = (g.s(i), g.s(i + 1));
    sum(
        &o.zero_op(),
        sub.ibar_set().into_iter().map(|kk| {
            let ex = o.nc(1, kk - 1, i).scale(pi).sub(&o.nc(1, kk - 1, i + 1).scale(pj));
            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
        }),
    )
}

/// Closed form of the `μ` family for `a = 1`, on the modes `(1,j)`.
pub fn closed_form_a1_limit(g: &GradingProfile, mu: i64, space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    let sub = SubsetI::tail(1, k).map_err(|e| RealizationError::BadSubset(e.to_string()))?;
    check_subset(g, &sub)?;
    let o = Osc::standard(space).restrict(|i, _| i == 1);
    let ctx = o.ctx().clone();
    let mu = Weight::int(mu);
    let p1 = g.s(1);
    let iset = sub.i_set();
    let mut d = Draft::new(g, &o);
    d.set_cartan(1, o.nr_set(1, &iset).scale(-1));
    for i in 2..=k {
        d.set_cartan(i, o.form(mu.scale(g.s(i))).add(o.n(1, i)));
    }
    for j in 2..=k {
        let ex = o.form(-mu).sub(&o.nr(1, j, k).scale(p1)).plus_int(p1);
        d.set(1, j, (o.c(1, j) * &o.q(&ex)).scale(&ctx.delta_inv().scale_int(p1)));
        d.set(j, 1, o.cd(1, j) * &o.q(&o.nr(1, 2, j - 1).scale(-p1)));
    }
    for i in 2..=k {
        for j in 2..=k {
            if i < j {
                d.set(i, j, prod(&[o.cd(1, i), o.c(1, j), &o.q(&o.nr(1, i + 1, j - 1).scale(p1))]));
            } else if j < i {
                d.set(i, j, prod(&[o.cd(1, i), o.c(1, j), &o.q(&o.nr(1, j + 1, i - 1).scale(-p1))]));
            }
        }
    }
    let w = (1..=k).map(|i| if i == 1 { Weight::ZERO } else { mu.scale(g.s(i)) }).collect();
    Ok(d.finish("contracted-mu-a1", BarRule::Contracted(sub), Some(sub), w))
}

/// Closed form of the `μ` family for `a = M+N-1`, on the modes `(j,M+N)`.
pub fn closed_form_last_limit(g: &GradingProfile, mu: i64, space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    let sub = SubsetI::tail(k - 1, k).map_err(|e| RealizationError::BadSubset(e.to_string()))?;
    check_subset(g, &sub)?;
    let o = Osc::standard(space).restrict(|_, a| a == k);
    let ctx = o.ctx().clone();
    let mu = Weight::int(mu);
    let pk = g.s(k);
    let ibar = sub.ibar_set();
    let mut d = Draft::new(g, &o);
    for i in 1..k {
        d.set_cartan(i, o.n(i, k).scale(-1));
    }
    d.set_cartan(k, o.form(mu.scale(pk)).add(&o.nc_set(&ibar, k)));
    for i in 1..k {
        for j in i + 1..k {
            let (pi, pj) = (g.s(i), g.s(j));
            let ex = o.n(i, k).scale(-pi).add(&o.n(j, k).scale(pj)).sub(&o.nc(i + 1, j - 1, k).scale(pk)).plus_int(pi + pj);
            d.set(i, j, prod(&[o.c(i, k), o.cd(j, k), &o.q(&ex)]).scale_int(-pi * pk));
            d.set_zero(j, i);
        }
        let pi = g.s(i);
        let ex = o.form(-mu).sub(&o.n(i, k).scale(pi)).sub(&o.nc(i + 1, k - 1, k).scale(pk)).plus_int(pi);
        d.set(i, k, (o.c(i, k) * &o.q(&ex)).scale(&ctx.delta_inv().scale_int(pi)));
        d.set(k, i, o.cd(i, k) * &o.q(&o.nc(1, i - 1, k).scale(-pk)));
    }
    let w = (1..=k).map(|i| if i == k { mu.scale(pk) } else { Weight::ZERO }).collect();
    Ok(d.finish("contracted-mu-last", BarRule::Contracted(sub), Some(sub), w))
}

/// Affine Chevalley generators of the contracted algebra, on the modes `Ī×I`.
pub fn build_chevalley_contracted(g: &GradingProfile, sub: SubsetI, mu: i64, x: &Scalar, space: &Arc<FockSpace>) -> Result<ChevalleyFamily, RealizationError> {
    check_subset(g, &sub)?;
    let k = g.k();
    if !(sub.in_ibar(1) && sub.in_i(k)) {
        return Err(RealizationError::Precondition("requires 1 outside I and M+N in I".into()));
    }
    let o = Osc::standard(space).restrict(|i, a| sub.in_ibar(i) && sub.in_i(a));
    let ctx = o.ctx().clone();
    let a = sub.a;
    let mu_w = Weight::int(mu);
    let (iset, ibar) = (sub.i_set(), sub.ibar_set());
    let k_forms: Vec<_> = (1..=k)
        .map(|i| if sub.in_ibar(i) { o.nr_set(i, &iset).scale(-1) } else { o.form(mu_w.scale(g.s(i))).add(&o.nc_set(&ibar, i)) })
        .collect();
    let mut e: Vec<FockOperator> = (1..k).map(|i| mu_raise(g, &sub, mu_w, &o, &ctx, i)).collect();
    let (p1, pk) = (g.s(1), g.s(k));
    let ex = o.form(-mu_w).add(&o.n(1, k).scale(p1)).sub(&o.nc_set(&ibar, k).scale(pk)).plus_int(p1);
    e.push((o.cd(1, k) * &o.q(&ex)).scale(x));
    let mut f: Vec<FockOperator> = Vec::with_capacity(k);
    for i in 1..k {
        let pi = g.s(i);
        let op = if sub.in_ibar(i + 1) {
            FockOperator::zero_with_parity(space, crate::fock::Parity::of_bit(g.pair_parity(i, i + 1)))
        } else if i == a {
            (o.cd(i, i + 1) * &o.q(&o.nc(1, i - 1, i + 1).scale(-g.s(i + 1)))).scale_int(pi)
        } else {
            mu_lower(g, &sub, &o, i).scale_int(pi)
        };
        f.push(op);
    }
    // [e_1,[e_2,...,[e_{K-2},e_{K-1}]_{q^{-p_{K-1}}}...]_{q^{-p_3}}]_{q^{-p_2}}
    let mut nested = e[k - 2].clone();
    for j in (1..k - 1).rev() {
        nested = e[j - 1].graded_commutator(&nested, &ctx.qpow(-g.s(j + 1)))?;
    }
    let xinv = x.inverse_monomial().map_err(|e| RealizationError::Precondition(e.to_string()))?;
    let fk = prod(&[&o.q(&k_forms[k - 1].scale(pk)), &nested, &o.q(&k_forms[0].scale(p1))]).scale(&xinv.scale_int(pk));
    f.push(fk);
    Ok(ChevalleyFamily { grading: g.clone(), space: space.clone(), subset: Some(sub), e, f, k_forms })
}

/// Evaluation map from a family to Chevalley generators.
pub fn evaluate_chevalley(fam: &GeneratorFamily, x: &Scalar) -> Result<ChevalleyFamily, RealizationError> {
    let g = &fam.grading;
    let k = g.k();
    let forms: Vec<_> = (1..=k)
        .map(|i| fam.cartan(i).cloned().ok_or_else(|| RealizationError::Precondition("family has no Cartan forms".into())))
        .collect::<Result<_, _>>()?;
    let sp = &fam.space;
    let q = |f: &crate::fock::LinearForm| FockOperator::qpow(sp, f);
    let (p1, pk) = (g.s(1), g.s(k));
    let mut e: Vec<FockOperator> = (1..k).map(|i| fam.e(i, i + 1).clone()).collect();
    e.push(prod(&[&q(&forms[0].scale(-p1)), fam.e(k, 1), &q(&forms[k - 1].scale(-pk))]).scale(x));
    let mut f: Vec<FockOperator> = (1..k).map(|i| fam.e(i + 1, i).scale_int(g.s(i))).collect();
    let xinv = x.inverse_monomial().map_err(|e| RealizationError::Precondition(e.to_string()))?;
    f.push(prod(&[&q(&forms[k - 1].scale(pk)), fam.e(1, k), &q(&forms[0].scale(p1))]).scale(&xinv.scale_int(pk)));
    Ok(ChevalleyFamily { grading: g.clone(), space: sp.clone(), subset: fam.contracted, e, f, k_forms: forms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::var;

    fn exact() -> ScalarCtx {
        ScalarCtx::exact()
    }

    #[test]
    fn subset_checks() {
        let g = GradingProfile::parse("001").unwrap();
        let sp = FockSpace::verma(&g, 2, Semantics::Trig, exact()).unwrap();
        assert!(build_contracted_mu(&g, SubsetI::tail(0, 3).unwrap(), 0, &sp).is_err());
        assert!(build_contracted_mu(&g, SubsetI::tail(3, 3).unwrap(), 0, &sp).is_err());
        assert!(build_contracted_mu(&g, SubsetI::head(1, 3).unwrap(), 0, &sp).is_err());
    }

    #[test]
    fn barred_diagonals_vanish_outside_i() {
        let g = GradingProfile::parse("010").unwrap();
        let sub = SubsetI::tail(2, 3).unwrap();
        let sp = contracted_space(&g, &sub, 2, Semantics::Trig, exact()).unwrap();
        let fam = build_contracted(&g, sub, &[1], &sp).unwrap();
        assert!(fam.qbar(1).unwrap().is_zero());
        assert!(fam.qbar(2).unwrap().is_zero());
        assert!(!fam.qbar(3).unwrap().is_zero());
        assert!(fam.e(2, 1).is_zero());
    }

    #[test]
    fn last_split_lower_block_vanishes() {
        let g = GradingProfile::parse("0011").unwrap();
        let sub = SubsetI::tail(3, 4).unwrap();
        let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, exact()).unwrap();
        let fam = build_contracted_mu(&g, sub, 1, &sp).unwrap();
        for i in 1..4 {
            for j in 1..i {
                assert!(fam.e(i, j).is_zero(), "e_{i}{j}");
            }
        }
    }

    #[test]
    fn chevalley_needs_endpoints() {
        let g = GradingProfile::parse("001").unwrap();
        let sp = FockSpace::verma(&g, 2, Semantics::Trig, exact()).unwrap();
        let x = exact().var_pow(var::X, 1);
        assert!(build_chevalley_contracted(&g, SubsetI::tail(1, 3).unwrap(), 0, &x, &sp).is_ok());
    }

    #[test]
    fn evaluation_map_gives_chevalley_generators() {
        for (gs, a) in [("001", 1), ("010", 2), ("0110", 2)] {
            let g = GradingProfile::parse(gs).unwrap();
            let sub = SubsetI::tail(a, g.k()).unwrap();
            let sp = rectangular_space(&g, &sub, 3, Semantics::Trig, exact()).unwrap();
            let x = exact().var_pow(var::X, 1);
            let ch = build_chevalley_contracted(&g, sub, 2, &x, &sp).unwrap();
            let ev = evaluate_chevalley(&build_contracted_mu(&g, sub, 2, &sp).unwrap(), &x).unwrap();
            let cols = sp.admissible_block(1).unwrap();
            for i in 1..=g.k() {
                assert!(ch.e(i).equal_on(ev.e(i), &cols).is_none(), "{gs} e_{i}");
                assert!(ch.f(i).equal_on(ev.f(i), &cols).is_none(), "{gs} f_{i}");
            }
        }
    }
}
