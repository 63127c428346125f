//! The highest-weight (Verma-type) realization on all modes `(i,a)`, `i<a`,
//! and its closed-form reduction to the modes `(1,j)`.

use super::osc::{prod, sum, Osc};
use super::{check_len, BarRule, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockOperator, FockSpace};
use crate::grading::GradingProfile;
use crate::scalar::Weight;
use std::sync::Arc;

/// Verma family with integer weights on the standard oscillators.
pub fn build_verma(g: &GradingProfile, lambda: &[i64], space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    let w: Vec<Weight> = lambda.iter().map(|l| Weight::int(*l)).collect();
    verma_family(g, &w, &Osc::standard(space), "verma")
}

/// Verma family for arbitrary weights and oscillator provider.
pub fn verma_family(g: &GradingProfile, lambda: &[Weight], osc: &Osc, tag: &str) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    check_len(k, lambda.len())?;
    let mut d = Draft::new(g, osc);
    let o = osc;
    for i in 1..=k {
        d.set_cartan(i, o.form(lambda[i - 1]).add(&o.nc(1, i - 1, i)).sub(&o.nr(i, i + 1, k)));
    }
    for i in 1..k {
        d.set(i, i + 1, raise_neighbour(g, lambda, o, i));
        d.set(i + 1, i, lower_neighbour(g, o, i));
    }
    for i in 3..=k {
        d.set(i, 1, o.cd(1, i) * &o.q(&o.nr(1, 2, i - 1).scale(-g.s(1))));
    }
    d.complete_upper()?;
    d.complete_lower(|_| true)?;
    Ok(d.finish(tag, BarRule::Inverse, None, lambda.to_vec()))
}

/// `e_{i,i+1}` of the Verma realization.
pub(crate) fn raise_neighbour(g: &GradingProfile, lambda: &[Weight], o: &Osc, i: usize) -> FockOperator {
    let k = g.k();
    let (pi, pj) = (g.s(i), g.s(i + 1));
    let (li, lj) = (lambda[i - 1], lambda[i]);
    let head = o.form(lj.scale(pj) - li.scale(pi));
    let t1 = sum(
        &o.zero_op(),
        (1..i).map(|kk| {
            let ex = head
                .sub(&o.nc(kk + 1, i - 1, i).scale(pi))
                .add(&o.nc(kk + 1, i, i + 1).scale(pj))
                .add(&o.nr(i, i + 1, k).scale(pi))
                .sub(&o.nr(i + 1, i + 2, k).scale(pj));
            prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&ex)])
        }),
    );
    let br = o
        .form(li.scale(pi) - lj.scale(pj))
        .sub(&o.nr(i, i + 1, k).scale(pi))
        .add(&o.nr(i + 1, i + 2, k).scale(pj))
        .plus_int(pi);
    let t2 = (o.c(i, i + 1) * &o.qb(&br)).scale_int(pi);
    let t3 = sum(
        &o.zero_op(),
        (i + 2..=k).map(|kk| {
            let ex = o
                .form(li.scale(pi) - lj.scale(pj))
                .sub(&o.nr(i, kk, k).scale(pi))
                .add(&o.nr(i + 1, kk, k).scale(pj))
                .plus_int(pi + pj);
            prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
        }),
    );
    &(&t1 + &t2) + &t3
}

/// `e_{i+1,i}` of the Verma realization.
pub(crate) fn lower_neighbour(g: &GradingProfile, o: &Osc, i: usize) -> FockOperator {
    let (pi, pj) = (g.s(i), g.s(i + 1));
    let low0 = o.cd(i, i + 1) * &o.q(&o.nc(1, i - 1, i).scale(pi).sub(&o.nc(1, i - 1, i + 1).scale(pj)));
    sum(
        &low0,
        (1..i).map(|kk| {
            let ex = o.nc(1, kk - 1, i).scale(pi).sub(&o.nc(1, kk - 1, i + 1).scale(pj));
            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
        }),
    )
}

/// `e_{i1} = c†_{1i} q^{-p_1 n_{1,[2,i-1]}}` for a single `i`.
pub fn verma_e_i1(g: &GradingProfile, osc: &Osc, i: usize) -> FockOperator {
    osc.cd(1, i) * &osc.q(&osc.nr(1, 2, i - 1).scale(-g.s(1)))
}

/// Closed-form family on the modes `(1,j)` with `λ_i = p_i μ` for `i >= 2`.
pub fn build_reduced_a1(g: &GradingProfile, lambda1: i64, mu: i64, space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    reduced_a1_family(g, Weight::int(lambda1), Weight::int(mu), &Osc::standard(space))
}

pub fn reduced_a1_family(g: &GradingProfile, lambda1: Weight, mu: Weight, osc: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    let o = osc;
    let p1 = g.s(1);
    let mut d = Draft::new(g, osc);
    let iset: Vec<usize> = (2..=k).collect();
    d.set_cartan(1, o.form(lambda1).sub(&o.nr_set(1, &iset)));
    for i in 2..=k {
        d.set_cartan(i, o.form(mu.scale(g.s(i))).add(o.n(1, i)));
    }
    for j in 2..=k {
        let br = o.form(lambda1.scale(p1) - mu).sub(&o.nr(1, 2, k).scale(p1)).plus_int(p1);
        let op = prod(&[o.c(1, j), &o.qb(&br), &o.q(&o.nr(1, 2, j - 1).scale(p1))]).scale_int(p1);
        d.set(1, j, op);
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
    let mut weights = vec![lambda1];
    weights.extend((2..=k).map(|i| mu.scale(g.s(i))));
    Ok(d.finish("reduced-a1", BarRule::Inverse, None, weights))
}
