//! L-operators of the contracted algebras written directly in terms of
//! `L_ij`, `L̄_ij`.
//!
//! Only the diagonal, the neighbour entries `L_{i+1,i}`, `L̄_{i,i+1}` and the
//! first row `L̄_{1i}` are given in closed form; the remaining entries are
//! generated from them by the same q-commutators that define the
//! non-simple generators.

use super::{diagonal_inverse, LaxError, LaxOperator};
use crate::fock::{FockOperator, FockSpace, Parity};
use crate::grading::{GradingProfile, SubsetI};
use crate::realizations::osc::{prod, sum, Osc};
use std::sync::Arc;

/// Which closed-form family to build.
#[derive(Clone, Debug, PartialEq)]
pub enum ContractedL {
    /// Highest weights `λ_i` on `I` (in increasing order of `i`), all modes
    /// with at least one index in `I`.
    Lambda(Vec<i64>),
    /// `λ_i = p_i μ` on `I`, modes in `Ī×I` only.
    Mu(i64),
}

struct Entries {
    k: usize,
    l: Vec<Option<FockOperator>>,
    lb: Vec<Option<FockOperator>>,
}

impl Entries {
    fn new(k: usize) -> Self {
        Entries { k, l: vec![None; k * k], lb: vec![None; k * k] }
    }
    fn set_l(&mut self, i: usize, j: usize, op: FockOperator) {
        self.l[(i - 1) * self.k + (j - 1)] = Some(op);
    }
    fn set_lb(&mut self, i: usize, j: usize, op: FockOperator) {
        self.lb[(i - 1) * self.k + (j - 1)] = Some(op);
    }
    fn l(&self, i: usize, j: usize) -> Option<&FockOperator> {
        self.l[(i - 1) * self.k + (j - 1)].as_ref()
    }
    fn lb(&self, i: usize, j: usize) -> Option<&FockOperator> {
        self.lb[(i - 1) * self.k + (j - 1)].as_ref()
    }
}

fn printed(g: &GradingProfile, sub: &SubsetI, which: &ContractedL, o: &Osc) -> Result<Entries, LaxError> {
    let k = g.k();
    let a = sub.a;
    let ctx = o.ctx();
    let (iset, ibar) = (sub.i_set(), sub.ibar_set());
    let p = |i: usize| g.s(i);
    let dl = ctx.delta();
    let mut en = Entries::new(k);
    let lam = |i: usize| -> i64 {
        match which {
            ContractedL::Lambda(v) => v[i - a - 1],
            ContractedL::Mu(mu) => p(i) * mu,
        }
    };
    // e_ii on I for the λ family
    let cartan_i = |i: usize| o.int(lam(i)).add(&o.nc(1, i - 1, i)).sub(&o.nr(i, i + 1, k));
    for i in 1..=k {
        if sub.in_ibar(i) {
            en.set_l(i, i, o.q(&o.nr_set(i, &iset).scale(-p(i))));
            en.set_lb(i, i, o.zero_op());
        } else {
            let f = match which {
                ContractedL::Lambda(_) => cartan_i(i).scale(p(i)),
                ContractedL::Mu(mu) => o.nc_set(&ibar, i).scale(p(i)).plus_int(*mu),
            };
            en.set_l(i, i, o.q(&f));
            en.set_lb(i, i, o.q(&f.scale(-1)));
        }
    }
    for i in 1..k {
        let (pi, pj) = (p(i), p(i + 1));
        if i + 1 <= a {
            let op = sum(
                &o.zero_op(),
                iset.iter().map(|&kk| {
                    let ex = o.nr(i, kk, k).add(&o.nr_set(i, &iset)).scale(-pi).add(&o.nr(i + 1, kk, k).scale(pj)).plus_int(pi + pj);
                    prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(p(kk))
                }),
            );
            en.set_l(i + 1, i, op.scale(&dl.scale_int(-pi * pj)));
            en.set_lb(i, i + 1, o.zero_op());
        } else if i == a {
            let lead = match which {
                ContractedL::Lambda(_) => {
                    o.int(-pj * lam(i + 1)).sub(&o.nr_set(i, &iset).scale(2 * pi)).add(&o.nr(i + 1, i + 2, k).scale(pj)).plus_int(pi)
                }
                ContractedL::Mu(mu) => o.int(-mu).sub(&o.nr_set(i, &iset).scale(2 * pi)).plus_int(pi),
            };
            let mut op = (o.c(i, i + 1) * &o.q(&lead)).scale_int(pi * pj);
            if let ContractedL::Lambda(_) = which {
                let tail = sum(
                    &o.zero_op(),
                    (i + 2..=k).map(|kk| {
                        let ex = o
                            .int(-pj * lam(i + 1))
                            .sub(&o.nr(i, kk, k).add(&o.nr_set(i, &iset)).scale(pi))
                            .add(&o.nr(i + 1, kk, k).scale(pj))
                            .plus_int(pi + pj);
                        prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(p(kk))
                    }),
                );
                op = &op + &tail.scale(&dl.scale_int(-pi * pj));
            }
            en.set_l(i + 1, i, op);
            let ex = o.nr_set(i, &iset).plus_int(1).scale(pi).sub(&o.nc(1, i - 1, i + 1).scale(pj));
            en.set_lb(i, i + 1, (o.cd(i, i + 1) * &o.q(&ex)).scale(&dl.scale_int(-pi)));
        } else {
            match which {
                ContractedL::Lambda(_) => {
                    let (li, lj) = (pi * lam(i), pj * lam(i + 1));
                    let s1 = sum(
                        &o.zero_op(),
                        (1..i).map(|kk| {
                            let ex = o
                                .int(-li + lj)
                                .sub(&o.nc(kk + 1, i - 1, i).scale(pi))
                                .add(&o.nc(kk + 1, i, i + 1).scale(pj))
                                .add(&o.nr(i, i + 1, k).scale(pi))
                                .sub(&o.nr(i + 1, i + 2, k).scale(pj));
                            prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&ex)])
                        }),
                    );
                    let br = o.int(li - lj).sub(&o.nr(i, i + 1, k).scale(pi)).add(&o.nr(i + 1, i + 2, k).scale(pj)).plus_int(pi);
                    let s2 = (o.c(i, i + 1) * &o.qb(&br)).scale_int(pi);
                    let s3 = sum(
                        &o.zero_op(),
                        (i + 2..=k).map(|kk| {
                            let ex = o.int(li - lj).sub(&o.nr(i, kk, k).scale(pi)).add(&o.nr(i + 1, kk, k).scale(pj)).plus_int(pi + pj);
                            prod(&[o.c(i, kk), o.cd(i + 1, kk), &o.q(&ex)]).scale_int(-pi * p(kk))
                        }),
                    );
                    let inner = &(&s1 + &s2) + &s3;
                    en.set_l(i + 1, i, (&inner * &o.q(&cartan_i(i).scale(pi))).scale(&dl.scale_int(pj)));
                    let t1 = o.cd(i, i + 1) * &o.q(&o.nr(i, i + 1, k).scale(pi).sub(&o.nc(1, i - 1, i + 1).scale(pj)));
                    let t2 = sum(
                        &o.zero_op(),
                        (1..i).map(|kk| {
                            let ex = o.nc(kk, i - 1, i).sub(&o.nr(i, i + 1, k)).scale(-pi).sub(&o.nc(1, kk - 1, i + 1).scale(pj));
                            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
                        }),
                    );
                    let tail = o.q(&o.int(pi * (1 - lam(i))));
                    en.set_lb(i, i + 1, (&(&t1 + &t2) * &tail).scale(&dl.scale_int(-pi)));
                }
                ContractedL::Mu(mu) => {
                    let s = sum(
                        &o.zero_op(),
                        ibar.iter().map(|&kk| {
                            let ex = o.nc(1, kk, i).scale(pi).add(&o.nc(kk + 1, a, i + 1).scale(pj)).plus_int(*mu);
                            prod(&[o.cd(kk, i), o.c(kk, i + 1), &o.q(&ex)])
                        }),
                    );
                    en.set_l(i + 1, i, s.scale(&dl.scale_int(pj)));
                    let s = sum(
                        &o.zero_op(),
                        ibar.iter().map(|&kk| {
                            let ex = o.nc(kk, a, i).scale(-pi).plus_int(pi - mu).sub(&o.nc(1, kk - 1, i + 1).scale(pj));
                            prod(&[o.cd(kk, i + 1), o.c(kk, i), &o.q(&ex)])
                        }),
                    );
                    en.set_lb(i, i + 1, s.scale(&dl.scale_int(-pi)));
                }
            }
        }
    }
    for &i in &iset {
        if i > 2 {
            let ex = o.nr(1, i, k).plus_int(1).scale(p(1));
            en.set_lb(1, i, (o.cd(1, i) * &o.q(&ex)).scale(&dl.scale_int(-p(1))));
        }
    }
    Ok(en)
}

/// Contracted L-operator from its closed-form neighbour entries.
pub fn contracted_l_entries(g: &GradingProfile, sub: SubsetI, which: &ContractedL, space: &Arc<FockSpace>) -> Result<LaxOperator, LaxError> {
    let k = g.k();
    if sub.a == 0 || sub.a >= k {
        return Err(LaxError::Other(format!("split a={} outside 1..{}", sub.a, k - 1)));
    }
    let o = match which {
        ContractedL::Lambda(v) => {
            if v.len() != k - sub.a {
                return Err(LaxError::Other(format!("expected {} weights, got {}", k - sub.a, v.len())));
            }
            Osc::standard(space).restrict(|i, a| sub.in_i(i) || sub.in_i(a))
        }
        ContractedL::Mu(_) => Osc::standard(space).restrict(|i, a| sub.in_ibar(i) && sub.in_i(a)),
    };
    let en = printed(g, &sub, which, &o)?;
    let ctx = o.ctx();
    let dinv = ctx.delta_inv();
    let diag: Vec<FockOperator> = (1..=k).map(|i| en.l(i, i).unwrap().clone()).collect();
    let dinvs: Vec<FockOperator> = diag.iter().map(diagonal_inverse).collect::<Result<_, _>>()?;
    // generators recovered from the closed-form entries
    let mut e: Vec<Option<FockOperator>> = vec![None; k * k];
    let idx = |i: usize, j: usize| (i - 1) * k + (j - 1);
    for i in 1..k {
        e[idx(i, i + 1)] = Some((en.l(i + 1, i).unwrap() * &dinvs[i - 1]).scale(&dinv.scale_int(g.s(i + 1))));
        e[idx(i + 1, i)] = Some((&diag[i - 1] * en.lb(i, i + 1).unwrap()).scale(&dinv.scale_int(-g.s(i))));
    }
    for i in 3..=k {
        if let Some(lb) = en.lb(1, i) {
            e[idx(i, 1)] = Some((&diag[0] * lb).scale(&dinv.scale_int(-g.s(1))));
        } else if sub.in_ibar(i) {
            // lowering generators inside Ī vanish
            e[idx(i, 1)] = Some(FockOperator::zero_with_parity(space, Parity::of_bit(g.pair_parity(i, 1))));
        }
    }
    let err = |x: crate::fock::FockError| LaxError::Other(x.to_string());
    for width in 2..k {
        for i in 1..=k - width {
            let j = i + width;
            let op = e[idx(i, i + 1)].as_ref().unwrap().graded_commutator(e[idx(i + 1, j)].as_ref().unwrap(), &ctx.qpow(-g.s(i + 1))).map_err(err)?;
            e[idx(i, j)] = Some(op);
        }
    }
    for i in 3..=k {
        for c in 2..i {
            if e[idx(i, c)].is_some() {
                continue;
            }
            let op = if sub.in_i(i) {
                let br = e[idx(i, 1)].as_ref().unwrap().graded_commutator(e[idx(1, c)].as_ref().unwrap(), &ctx.one()).map_err(err)?;
                &(&dinvs[0] * &diag[c - 1]) * &br
            } else {
                FockOperator::zero_with_parity(space, Parity::of_bit(g.pair_parity(i, c)))
            };
            e[idx(i, c)] = Some(op);
        }
    }
    let mut l = Vec::with_capacity(k * k);
    let mut lb = Vec::with_capacity(k * k);
    let zero = |i: usize, j: usize| FockOperator::zero_with_parity(space, Parity::of_bit(g.pair_parity(i, j)));
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                l.push(diag[i - 1].clone());
                lb.push(en.lb(i, i).unwrap().clone());
            } else if i > j {
                let op = match en.l(i, j) {
                    Some(x) => x.clone(),
                    None => (e[idx(j, i)].as_ref().unwrap() * &diag[j - 1]).scale(&ctx.delta().scale_int(g.s(i))),
                };
                l.push(op);
                lb.push(zero(i, j));
            } else {
                l.push(zero(i, j));
                let op = match en.lb(i, j) {
                    Some(x) => x.clone(),
                    None => (&dinvs[i - 1] * e[idx(j, i)].as_ref().unwrap()).scale(&ctx.delta().scale_int(-g.s(i))),
                };
                lb.push(op);
            }
        }
    }
    let tag = match which {
        ContractedL::Lambda(_) => format!("contracted L a={}", sub.a),
        ContractedL::Mu(mu) => format!("contracted L mu={mu} a={}", sub.a),
    };
    Ok(LaxOperator::trig(g, space, l, lb, &tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Semantics;
    use crate::grading::enumerate_gradings;
    use crate::lax::{frt_from_family, ps_r};
    use crate::realizations::{build_contracted, build_contracted_mu, contracted_space, rectangular_space};
    use crate::scalar::ScalarCtx;
    use crate::verify::{check_ybe, compare_lax};

    #[test]
    fn closed_form_entries_match_frt_image() {
        for g in enumerate_gradings(3) {
            for a in 1..3 {
                let sub = SubsetI::tail(a, 3).unwrap();
                let sp = rectangular_space(&g, &sub, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let printed = contracted_l_entries(&g, sub, &ContractedL::Mu(2), &sp).unwrap();
                let frt = frt_from_family(&build_contracted_mu(&g, sub, 2, &sp).unwrap()).unwrap();
                let rep = compare_lax(&printed, &frt);
                assert!(rep.pass(), "mu {} a={a}: {}", g.bit_string(), rep.summary());

                let sp = contracted_space(&g, &sub, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let lam: Vec<i64> = (a + 1..=3).map(|i| 2 - i as i64).collect();
                let printed = contracted_l_entries(&g, sub, &ContractedL::Lambda(lam.clone()), &sp).unwrap();
                let frt = frt_from_family(&build_contracted(&g, sub, &lam, &sp).unwrap()).unwrap();
                let rep = compare_lax(&printed, &frt);
                assert!(rep.pass(), "lambda {} a={a}: {}", g.bit_string(), rep.summary());
            }
        }
    }

    #[test]
    fn contracted_l_satisfies_rll() {
        for (gs, a) in [("001", 2), ("010", 1), ("100", 2), ("01", 1)] {
            let g = GradingProfile::parse(gs).unwrap();
            let sub = SubsetI::tail(a, g.k()).unwrap();
            let sp = rectangular_space(&g, &sub, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
            let lax = contracted_l_entries(&g, sub, &ContractedL::Mu(1), &sp).unwrap();
            let rep = check_ybe(&lax, &ps_r(&g, sp.ctx()));
            assert!(rep.pass(), "{gs} a={a}: {}", rep.summary());
            let sp = contracted_space(&g, &sub, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
            let lam = vec![1; g.k() - a];
            let lax = contracted_l_entries(&g, sub, &ContractedL::Lambda(lam), &sp).unwrap();
            let rep = check_ybe(&lax, &ps_r(&g, sp.ctx()));
            assert!(rep.pass(), "{gs} a={a}: {}", rep.summary());
        }
    }

    #[test]
    fn rank_four_splits_match_frt_image() {
        for gs in ["0000", "0011", "0111"] {
            let g = GradingProfile::parse(gs).unwrap();
            for a in 1..4 {
                let sub = SubsetI::tail(a, 4).unwrap();
                let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let printed = contracted_l_entries(&g, sub, &ContractedL::Mu(1), &sp).unwrap();
                let frt = frt_from_family(&build_contracted_mu(&g, sub, 1, &sp).unwrap()).unwrap();
                let rep = compare_lax(&printed, &frt);
                assert!(rep.pass(), "{gs} a={a}: {}", rep.summary());
            }
        }
    }

    #[test]
    fn barred_block_on_ibar_vanishes() {
        let g = GradingProfile::parse("0010").unwrap();
        let sub = SubsetI::tail(2, 4).unwrap();
        let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let lax = contracted_l_entries(&g, sub, &ContractedL::Mu(0), &sp).unwrap();
        assert!(lax.lbar(1, 2).is_zero());
        assert!(lax.lbar(1, 1).is_zero() && lax.lbar(2, 2).is_zero());
        assert!(!lax.lbar(3, 3).is_zero());
        assert!(contracted_l_entries(&g, sub, &ContractedL::Lambda(vec![1]), &sp).is_err());
    }
}
