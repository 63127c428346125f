//! Three further highest-weight realizations on the modes `(i,a)`, `i<a`,
//! related to the Verma realization by oscillator and algebra automorphisms.
//! Only the Chevalley part is written out; the other generators follow from
//! the q-commutator recursion.

use super::osc::{prod, sum, Osc};
use super::{check_len, BarRule, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockOperator, FockSpace};
use crate::grading::GradingProfile;
use crate::scalar::Weight;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Difference-operator type: `e_1j = c_1j q^{p_1 n_{1,[2,j-1]}}`.
    Real1,
    /// Mirror image of `Real1`: `e_jK` is a single annihilator.
    Real3,
    /// `Real3` with raising and lowering exchanged.
    Real2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Real1 => "real1",
            Variant::Real3 => "real3",
            Variant::Real2 => "real2",
        }
    }

    /// The reducible block `I`: a tail `{a+1..K}` for `Real1`, a head `{1..a}` otherwise.
    pub fn reduced_block(self, a: usize, k: usize) -> Vec<usize> {
        match self {
            Variant::Real1 => (a + 1..=k).collect(),
            _ => (1..=a).collect(),
        }
    }
}

pub fn build_verma_variant(which: Variant, g: &GradingProfile, lambda: &[i64], space: &Arc<FockSpace>) -> Result<GeneratorFamily, RealizationError> {
    let w: Vec<Weight> = lambda.iter().map(|l| Weight::int(*l)).collect();
    variant_family(which, g, &w, &Osc::standard(space))
}

/// The variant with the oscillators of the block `I` removed and `λ_i = p_i μ` on `I`;
/// `free` lists the weights off the block in increasing index order.
pub fn build_variant_reduced(
    which: Variant,
    g: &GradingProfile,
    a: usize,
    mu: i64,
    free: &[i64],
    space: &Arc<FockSpace>,
) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    if a > k {
        return Err(RealizationError::BadSubset(format!("split {a} outside 0..{k}")));
    }
    let block = which.reduced_block(a, k);
    check_len(k - block.len(), free.len())?;
    let mut it = free.iter();
    let w: Vec<Weight> = (1..=k).map(|i| if block.contains(&i) { Weight::int(g.s(i) * mu) } else { Weight::int(*it.next().unwrap()) }).collect();
    let osc = Osc::standard(space).restrict(|i, b| !(block.contains(&i) && block.contains(&b)));
    let fam = variant_family(which, g, &w, &osc)?;
    Ok(fam.with_tag(format!("{} reduced a={a} mu={mu}", which.name())))
}

pub fn variant_family(which: Variant, g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    check_len(k, lambda.len())?;
    let mut d = Draft::new(g, o);
    for i in 1..=k {
        d.set_cartan(i, o.form(lambda[i - 1]).add(&o.nc(1, i - 1, i)).sub(&o.nr(i, i + 1, k)));
    }
    for i in 1..k {
        let (up, down) = match which {
            Variant::Real1 => real1_pair(g, lambda, o, i),
            Variant::Real3 => real3_pair(g, lambda, o, i),
            Variant::Real2 => real2_pair(g, lambda, o, i),
        };
        d.set(i, i + 1, up);
        d.set(i + 1, i, down);
    }
    d.complete_upper()?;
    d.complete_lower_chain()?;
    Ok(d.finish(which.name(), BarRule::Inverse, None, lambda.to_vec()))
}

fn real1_pair(g: &GradingProfile, lambda: &[Weight], o: &Osc, i: usize) -> (FockOperator, FockOperator) {
    let k = g.k();
    let (pi, pj) = (g.s(i), g.s(i + 1));
    let dl = o.form(lambda[i - 1].scale(pi) - lambda[i].scale(pj));
    let dress = |kk: usize| o.nc(1, kk - 1, i + 1).scale(pj).sub(&o.nc(1, kk - 1, i).scale(pi));
    let up = sum(
        &(o.c(i, i + 1) * &o.q(&dress(i))),
        (1..i).map(|kk| prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&dress(kk))])),
    );
    let tail = o.nr(i + 1, i + 2, k).scale(pj).sub(&o.nr(i, i + 1, k).scale(pi));
    let t1 = sum(
        &o.zero_op(),
        (1..i).map(|kk| {
            let ex = dl.add(&o.nc(kk + 1, i - 1, i).scale(pi)).sub(&o.nc(kk + 1, i, i + 1).scale(pj)).add(&tail);
            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
        }),
    );
    let t2 = (o.cd(i, i + 1) * &o.qb(&dl.add(&tail))).scale_int(pi);
    let t3 = sum(
        &o.zero_op(),
        (i + 2..=k).map(|kk| {
            let ex = dl.scale(-1).add(&o.nr(i, kk, k).scale(pi)).sub(&o.nr(i + 1, kk, k).scale(pj));
            prod(&[o.c(i + 1, kk), o.cd(i, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
        }),
    );
    (up, &(&t1 + &t2) + &t3)
}

fn real3_pair(g: &GradingProfile, lambda: &[Weight], o: &Osc, i: usize) -> (FockOperator, FockOperator) {
    let k = g.k();
    let (pi, pj) = (g.s(i), g.s(i + 1));
    let dl = o.form(lambda[i - 1].scale(pi) - lambda[i].scale(pj));
    let right = |lo: usize| o.nr(i + 1, lo, k).scale(pj).sub(&o.nr(i, lo, k).scale(pi));
    let up = sum(
        &(o.c(i, i + 1) * &o.q(&right(i + 2))),
        (i + 2..=k).map(|kk| prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&right(kk + 1))]).scale_int(-pj * g.s(kk))),
    );
    let head = o.nc(1, i - 1, i).scale(pi).sub(&o.nc(1, i, i + 1).scale(pj));
    let t1 = sum(
        &o.zero_op(),
        (i + 2..=k).map(|kk| {
            let ex = dl.scale(-1).add(&o.nr(i, i + 1, kk - 1).scale(pi)).sub(&o.nr(i + 1, i + 2, kk - 1).scale(pj)).sub(&head);
            prod(&[o.c(i + 1, kk), o.cd(i, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
        }),
    );
    let t2 = (o.cd(i, i + 1) * &o.qb(&dl.add(&head))).scale_int(pi);
    let t3 = sum(
        &o.zero_op(),
        (1..i).map(|kk| {
            let ex = dl.add(&o.nc(1, kk, i).scale(pi)).sub(&o.nc(1, kk, i + 1).scale(pj));
            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
        }),
    );
    (up, &(&t1 + &t2) + &t3)
}

fn real2_pair(g: &GradingProfile, lambda: &[Weight], o: &Osc, i: usize) -> (FockOperator, FockOperator) {
    let k = g.k();
    let (pi, pj) = (g.s(i), g.s(i + 1));
    let dl = o.form(lambda[i - 1].scale(pi) - lambda[i].scale(pj));
    let head = o.nc(1, i - 1, i).scale(pi).sub(&o.nc(1, i, i + 1).scale(pj));
    let t1 = sum(
        &o.zero_op(),
        (i + 2..=k).map(|kk| {
            let ex = dl.sub(&o.nr(i, i + 1, kk - 1).scale(pi)).add(&o.nr(i + 1, i + 2, kk - 1).scale(pj)).add(&head);
            prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(-pi * g.s(kk))
        }),
    );
    let t2 = (o.c(i, i + 1) * &o.qb(&dl.add(&head).plus_int(pj))).scale_int(pi);
    let t3 = sum(
        &o.zero_op(),
        (1..i).map(|kk| {
            let ex = dl.scale(-1).sub(&o.nc(1, kk, i).scale(pi)).add(&o.nc(1, kk, i + 1).scale(pj)).plus_int(-pi - pj);
            prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&ex)])
        }),
    );
    let right = |lo: usize| o.nr(i, lo, k).scale(pi).sub(&o.nr(i + 1, lo, k).scale(pj));
    let down = sum(
        &(o.cd(i, i + 1) * &o.q(&right(i + 2))),
        (i + 2..=k).map(|kk| prod(&[o.c(i + 1, kk), o.cd(i, kk), &o.q(&right(kk + 1))]).scale_int(-pj * g.s(kk))),
    );
    (&(&t1 + &t2) + &t3, down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Semantics;
    use crate::grading::enumerate_gradings;
    use crate::scalar::ScalarCtx;
    use crate::verify::{check_appendix_a, check_highest_weight};

    const ALL: [Variant; 3] = [Variant::Real1, Variant::Real3, Variant::Real2];

    #[test]
    fn variants_satisfy_relations_and_highest_weight() {
        for k in 2..=3 {
            for g in enumerate_gradings(k) {
                let sp = FockSpace::verma(&g, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let lam: Vec<i64> = (0..k as i64).map(|i| 2 - 3 * i + i * i).collect();
                for which in ALL {
                    let fam = build_verma_variant(which, &g, &lam, &sp).unwrap();
                    let rep = check_appendix_a(&fam);
                    assert!(rep.pass(), "{} {}: {}", which.name(), g.bit_string(), rep.summary());
                    let w: Vec<_> = lam.iter().map(|l| Some(sp.ctx().int(*l))).collect();
                    let rep = check_highest_weight(&fam, &w);
                    assert!(rep.pass(), "{} {}: {}", which.name(), g.bit_string(), rep.summary());
                }
            }
        }
    }

    #[test]
    fn corner_generators_are_monomials() {
        for g in enumerate_gradings(3) {
            let sp = FockSpace::verma(&g, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
            let o = Osc::standard(&sp);
            let lam = [1, -2, 0];
            let block = |op: &FockOperator| sp.admissible_block(op.depth()).unwrap();
            let r1 = build_verma_variant(Variant::Real1, &g, &lam, &sp).unwrap();
            for j in 2..=3 {
                let expect = o.c(1, j) * &o.q(&o.nr(1, 2, j - 1).scale(g.s(1)));
                assert!(r1.e(1, j).equal_on(&expect, &block(r1.e(1, j))).is_none(), "e_1{j} {}", g.bit_string());
            }
            let r3 = build_verma_variant(Variant::Real3, &g, &lam, &sp).unwrap();
            let r2 = build_verma_variant(Variant::Real2, &g, &lam, &sp).unwrap();
            for j in 1..3 {
                let ps = g.sign_sum(j + 1, 2);
                let f = o.nc(j + 1, 2, 3).scale(g.s(3));
                let e3 = o.c(j, 3) * &o.q(&f.plus_int(ps).scale(-1));
                assert!(r3.e(j, 3).equal_on(&e3, &block(r3.e(j, 3))).is_none(), "e_{j}3 {}", g.bit_string());
                let e2 = o.cd(j, 3) * &o.q(&f.plus_int(ps));
                assert!(r2.e(3, j).equal_on(&e2, &block(r2.e(3, j))).is_none(), "e_3{j} {}", g.bit_string());
            }
        }
    }

    #[test]
    fn reductions_still_realize_the_algebra() {
        for g in enumerate_gradings(3) {
            let sp = FockSpace::verma(&g, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
            for which in ALL {
                for a in 0..=3 {
                    let nfree = 3 - which.reduced_block(a, 3).len();
                    let free: Vec<i64> = (0..nfree as i64).map(|i| 1 - 2 * i).collect();
                    let fam = build_variant_reduced(which, &g, a, 2, &free, &sp).unwrap();
                    let rep = check_appendix_a(&fam);
                    assert!(rep.pass(), "{} {} a={a}: {}", which.name(), g.bit_string(), rep.summary());
                }
            }
        }
    }

    #[test]
    fn reduced_real1_is_dressed_holstein_primakoff() {
        use super::super::hp::{hp_family, hp_space};
        use super::super::osc::OscTriple;
        use crate::verify::compare_families;
        for k in 2..=3 {
            for g in enumerate_gradings(k) {
                let sp = hp_space(&g, 1, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let std = Osc::standard(&sp);
                let ctx = sp.ctx();
                let p1 = g.s(1);
                let rest: Vec<usize> = (2..=k).collect();
                let nib = std.nr_set(1, &rest);
                let dressed = std.transform(|_, t| OscTriple {
                    c: (&t.c * &std.q(&nib.scale(-p1))).scale(&ctx.delta()),
                    cd: (&std.q(&nib.scale(p1)) * &t.cd).scale(&ctx.delta_inv()),
                    n: t.n.clone(),
                });
                for m in [Weight::int(2), Weight::sym(1)] {
                    let hp = hp_family(&g, 1, m, &dressed).unwrap();
                    let mut w = vec![Weight::ZERO; k];
                    w[0] = m.scale(p1);
                    let r1 = variant_family(Variant::Real1, &g, &w, &std).unwrap();
                    let rep = compare_families(&hp, &r1);
                    assert!(rep.pass(), "{} m={m}: {}", g.bit_string(), rep.summary());
                }
            }
        }
    }
}
