//! q-Holstein–Primakoff realization: a single row of oscillators `(i0, a)`,
//! `a ≠ i0`, and a free parameter `m`.

use super::osc::{prod, Osc};
use super::{BarRule, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockError, FockSpace, Semantics};
use crate::grading::GradingProfile;
use crate::scalar::{ScalarCtx, Weight};
use std::sync::Arc;

/// Fock space on the modes `(i0, a)`, `a ≠ i0`.
pub fn hp_space(g: &GradingProfile, i0: usize, cutoff: u32, semantics: Semantics, ctx: ScalarCtx) -> Result<Arc<FockSpace>, FockError> {
    let modes: Vec<(usize, usize)> = (1..=g.k()).filter(|a| *a != i0).map(|a| (i0, a)).collect();
    FockSpace::new(g, &modes, cutoff, semantics, ctx)
}

pub fn build_holstein_primakoff(g: &GradingProfile, i0: usize, m: Weight, space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    hp_family(g, i0, m, &Osc::standard(space))
}

pub fn hp_family(g: &GradingProfile, i0: usize, m: Weight, o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    if i0 == 0 || i0 > k {
        return Err(RealizationError::BadSubset(format!("row {i0} outside 1..{k}")));
    }
    let i = i0;
    let p = |x: usize| g.s(x);
    let pi = p(i);
    let ctx = o.ctx();
    let (dl, dinv) = (ctx.delta(), ctx.delta_inv());
    let ibar: Vec<usize> = (1..=k).filter(|a| *a != i).collect();
    let nib = o.nr_set(i, &ibar);
    let nr = |lo: usize, hi: usize| o.nr(i, lo, hi);
    let bracket = o.qb(&o.form(m).sub(&nib.scale(pi)));
    let mut d = Draft::new(g, o);
    for a in 1..=k {
        if a == i {
            d.set_cartan(a, o.form(m.scale(pi)).sub(&nib));
        } else {
            d.set_cartan(a, o.n(i, a).clone());
        }
    }
    for a in 1..=k {
        for b in 1..=k {
            if a == b {
                continue;
            }
            let op = if a == i && b > i {
                let ex = nr(i + 1, b - 1).add(&nib).scale(pi);
                (o.c(i, b) * &o.q(&ex)).scale(&dinv)
            } else if a == i {
                let ex = o.form(-m).add(&nr(1, b - 1).add(&nr(i + 1, k)).scale(pi)).add(&o.n(i, b).scale(p(b))).plus_int(-p(b));
                (o.c(i, b) * &o.q(&ex)).scale(&dinv.scale_int(-1))
            } else if b == i && a < i {
                let ex = o.form(m).sub(&nr(1, a - 1).add(&nr(i + 1, k)).scale(pi)).sub(&o.n(i, a).scale(p(a)));
                prod(&[o.cd(i, a), &bracket, &o.q(&ex)]).scale(&dl.scale_int(-pi))
            } else if b == i {
                let ex = nr(i + 1, a - 1).add(&nib).plus_int(1).scale(-pi);
                prod(&[o.cd(i, a), &bracket, &o.q(&ex)]).scale(&dl.scale_int(pi))
            } else {
                // e_ab with a, b ∈ Ī: written below with (row, col) = (b', a') of the printed formulas
                let (row, col) = (a, b);
                let same_side = (row < i) == (col < i);
                let pair = o.cd(i, row) * o.c(i, col);
                if row < col && same_side {
                    let ex = nr(row, col - 1).scale(pi).sub(&o.n(i, row).scale(p(row)));
                    &pair * &o.q(&ex)
                } else if row < col {
                    let ex = o
                        .form(m.scale(2))
                        .add(&o.int(1).sub(&nr(1, row - 1)).sub(&nr(col, k)).scale(pi))
                        .sub(&o.n(i, row).scale(p(row)));
                    (&pair * &o.q(&ex)).scale_int(-1)
                } else if same_side {
                    let ex = o.int(1).sub(&nr(col, row - 1)).scale(pi).sub(&o.int(1).sub(o.n(i, col)).scale(p(col)));
                    &pair * &o.q(&ex)
                } else {
                    let ex = o.form(m.scale(-2)).add(&nr(1, col - 1).add(&nr(row, k)).scale(pi)).sub(&o.int(1).sub(o.n(i, col)).scale(p(col)));
                    (&pair * &o.q(&ex)).scale_int(-1)
                }
            };
            d.set(a, b, op);
        }
    }
    let weights = (1..=k).map(|a| if a == i { m.scale(pi) } else { Weight::ZERO }).collect();
    Ok(d.finish(&format!("holstein-primakoff i={i}"), BarRule::Inverse, None, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_appendix_a;

    #[test]
    fn hp_satisfies_relations() {
        for gs in ["01", "001", "011", "101"] {
            let g = GradingProfile::parse(gs).unwrap();
            for i0 in 1..=g.k() {
                let sp = hp_space(&g, i0, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
                for m in [Weight::int(2), Weight::sym(1)] {
                    let fam = build_holstein_primakoff(&g, i0, m, &sp).unwrap();
                    let rep = check_appendix_a(&fam);
                    assert!(rep.pass(), "{gs} i0={i0} m={m}: {}", rep.summary());
                }
            }
        }
    }
}
