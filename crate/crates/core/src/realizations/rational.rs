//! Rational (`q → 1`) realizations of `gl(M|N)` on rational oscillators, and
//! the families that survive the large-`m` limit.

use super::osc::{sum, Osc};
use super::{check_len, BarRule, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockOperator, FockSpace, Semantics};
use crate::grading::{GradingProfile, SubsetI};
use crate::lax::rational::RationalFactorization;
use crate::scalar::Weight;
use std::sync::Arc;

fn need_rational(o: &Osc) -> Result<(), RealizationError> {
    if o.space().semantics() != Semantics::Rational {
        return Err(RealizationError::Precondition("rational families need rational oscillators".into()));
    }
    Ok(())
}

/// Rational family with integer weights on the standard oscillators.
pub fn build_rational(g: &GradingProfile, lambda: &[i64], space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    let w: Vec<Weight> = lambda.iter().map(|l| Weight::int(*l)).collect();
    rational_family(g, &w, &Osc::standard(space), "rational")
}

pub fn rational_family(g: &GradingProfile, lambda: &[Weight], o: &Osc, tag: &str) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    check_len(k, lambda.len())?;
    need_rational(o)?;
    let s = |x: usize| g.s(x);
    let mut d = Draft::new(g, o).rational();
    for i in 1..=k {
        d.set_cartan(i, o.form(lambda[i - 1]).add(&o.nc(1, i - 1, i)).sub(&o.nr(i, i + 1, k)));
    }
    let zero = o.zero_op();
    for i in 1..k {
        let hop = sum(&zero, (1..i).map(|kk| o.cd(kk, i) * o.c(kk, i + 1)));
        let br = o
            .form(lambda[i - 1].scale(s(i)) - lambda[i].scale(s(i + 1)))
            .sub(&o.nr(i, i + 1, k).scale(s(i)))
            .add(&o.nr(i + 1, i + 2, k).scale(s(i + 1)))
            .plus_int(s(i));
        let mid = (o.c(i, i + 1) * &o.val(&br)).scale_int(s(i));
        let tail = sum(&zero, (i + 2..=k).map(|kk| (o.c(i, kk) * o.cd(i + 1, kk)).scale_int(s(kk)))).scale_int(-s(i));
        d.set(i, i + 1, &(&hop + &mid) + &tail);
    }
    for i in 1..=k {
        for j in i + 1..=k {
            let hop = sum(&zero, (1..i).map(|kk| o.cd(kk, j) * o.c(kk, i)));
            d.set(j, i, o.cd(i, j) + &hop);
        }
    }
    d.complete_upper()?;
    Ok(d.finish(tag, BarRule::None, None, lambda.to_vec()))
}

/// `λ_i = p_i m` on `Ī`, the given integers on `I`.
pub fn large_m_weights(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64]) -> Result<Vec<Weight>, RealizationError> {
    let iset = sub.i_set();
    check_len(iset.len(), lambda_i.len())?;
    Ok((1..=g.k())
        .map(|i| match iset.iter().position(|x| *x == i) {
            Some(n) => Weight::int(lambda_i[n]),
            None => Weight::sym(g.s(i)),
        })
        .collect())
}

fn check_tail(sub: SubsetI) -> Result<(), RealizationError> {
    if sub.head || sub.a == 0 || sub.a >= sub.k {
        return Err(RealizationError::BadSubset(format!("need I = {{a+1..K}} with 1 <= a < K, got a={} of {}", sub.a, sub.k)));
    }
    Ok(())
}

/// The `gl(I)` block: the rational family with oscillators restricted to
/// `I×I`, read on the rows and columns in `I`.
fn gl_i_block(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let w: Vec<Weight> = (1..=g.k())
        .map(|i| sub.i_set().iter().position(|x| *x == i).map(|n| Weight::int(lambda_i[n])).unwrap_or(Weight::ZERO))
        .collect();
    rational_family(g, &w, &o.restrict(|i, a| sub.in_i(i) && sub.in_i(a)), "gl(I)")
}

/// Printed limit family: `p_i δ_ij` on `Ī×Ī`, `p_i c_ij + Σ p_k y_ki c_kj`
/// on `Ī×I`, `c†_ji + Σ_{k<j} c†_ki c_kj` on `I×Ī`, and `e^I + Σ_{k∈Ī} c†_ki c_kj`
/// on `I×I`. `y` comes from the factorization on the same oscillators.
pub fn large_m_family(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64], o: &Osc, fact: &RationalFactorization) -> Result<GeneratorFamily, RealizationError> {
    check_tail(sub)?;
    need_rational(o)?;
    let k = g.k();
    let s = |x: usize| g.s(x);
    let gl = gl_i_block(g, sub, lambda_i, o)?;
    let zero = o.zero_op();
    let ctx = o.ctx();
    let mut d = Draft::new(g, o).rational();
    for i in 1..=k {
        for j in 1..=k {
            let (bi, bj) = (sub.in_ibar(i), sub.in_ibar(j));
            let op = match (bi, bj) {
                (true, true) if i == j => FockOperator::scalar(o.space(), &ctx.int(s(i))),
                (true, true) => zero.clone(),
                (true, false) => {
                    let corr = sum(&zero, (i + 1..=k).filter(|kk| sub.in_ibar(*kk)).map(|kk| (fact.y(kk, i) * o.c(kk, j)).scale_int(s(kk))));
                    &o.c(i, j).scale_int(s(i)) + &corr
                }
                (false, true) => {
                    let hop = sum(&zero, (1..j).map(|kk| o.cd(kk, i) * o.c(kk, j)));
                    o.cd(j, i) + &hop
                }
                (false, false) => {
                    let hop = sum(&zero, sub.ibar_set().into_iter().map(|kk| o.cd(kk, i) * o.c(kk, j)));
                    gl.e(i, j) + &hop
                }
            };
            d.set(i, j, op);
        }
    }
    Ok(d.finish("rational large-m limit", BarRule::None, Some(sub), vacuum(g, sub, lambda_i)))
}

fn vacuum(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64]) -> Vec<Weight> {
    let iset = sub.i_set();
    (1..=g.k())
        .map(|i| match iset.iter().position(|x| *x == i) {
            Some(n) => Weight::int(lambda_i[n]),
            None => Weight::int(g.s(i)),
        })
        .collect()
}

/// Printed family after the `Ī×Ī` annihilators are dropped.
pub fn build_rational_contracted(g: &GradingProfile, sub: SubsetI, space: &Arc<FockSpace>, lambda_i: &[i64]) -> Result<GeneratorFamily, RealizationError> {
    contracted_rational_family(g, sub, lambda_i, &Osc::standard(space))
}

pub fn contracted_rational_family(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    check_tail(sub)?;
    need_rational(o)?;
    check_len(sub.i_set().len(), lambda_i.len())?;
    let k = g.k();
    let s = |x: usize| g.s(x);
    let gl = gl_i_block(g, sub, lambda_i, o)?;
    let zero = o.zero_op();
    let ctx = o.ctx();
    let mut d = Draft::new(g, o).rational();
    for i in 1..=k {
        for j in 1..=k {
            let op = match (sub.in_ibar(i), sub.in_ibar(j)) {
                (true, true) if i == j => FockOperator::scalar(o.space(), &ctx.int(s(i))),
                (true, true) => zero.clone(),
                (true, false) => o.c(i, j).scale_int(s(i)),
                (false, true) => o.cd(j, i).clone(),
                (false, false) => {
                    let hop = sum(&zero, sub.ibar_set().into_iter().map(|kk| o.cd(kk, i) * o.c(kk, j)));
                    gl.e(i, j) + &hop
                }
            };
            d.set(i, j, op);
        }
    }
    Ok(d.finish("rational contracted", BarRule::None, Some(sub), vacuum(g, sub, lambda_i)))
}
