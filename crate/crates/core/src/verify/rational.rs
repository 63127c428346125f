//! Relation suites of the rational sector: the `gl(M|N)` brackets (plain and
//! contracted), the factorization identities, and the large-`m` limit.

use super::identity::{Expr, Identity};
use super::limits::{limit_family, limit_lax, Direction, LimitError};
use super::report::VerificationReport;
use crate::fock::FockOperator;
use crate::grading::SubsetI;
use crate::lax::rational::RationalFactorization;
use crate::lax::{transform_diagonal, LaxOperator};
use crate::realizations::osc::sum;
use crate::realizations::GeneratorFamily;
use crate::scalar::{var, Scalar, Weight};
use std::time::Instant;

fn sign(e: u8) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `[e_ij, e_kl] = δ_jk e_il − (−1)^{(p(i)+p(j))(p(k)+p(l))} δ_li e_kj` for every
/// quadruple; for contracted families the two terms carry `θ(j∈I)` and
/// `θ(i∈I)`.
pub fn check_gl_relations(fam: &GeneratorFamily) -> VerificationReport {
    let suite = if fam.contracted.is_some() { "rational-contracted" } else { "rational-gl" };
    let g = &fam.grading;
    let k = g.k();
    let ctx = fam.space.ctx();
    let one = ctx.one();
    let mut rep = VerificationReport::new(suite, &format!("{} grading={} D={}", fam.tag, g.bit_string(), fam.space.cutoff()));
    let start = Instant::now();
    let kept = |x: usize| fam.contracted.map(|s| s.in_i(x)).unwrap_or(true);
    let e = |a: usize, b: usize| Expr::op(ctx, fam.e(a, b));
    for i in 1..=k {
        for j in 1..=k {
            for kk in 1..=k {
                for l in 1..=k {
                    let label = format!("[e_{i}{j}, e_{kk}{l}]");
                    let lhs = match e(i, j).comm(&e(kk, l), &one) {
                        Ok(x) => x,
                        Err(msg) => {
                            rep.error(format!("{label}: {msg}"));
                            continue;
                        }
                    };
                    let mut rhs = Expr::zero(ctx);
                    if j == kk && kept(j) {
                        rhs = rhs.add(&e(i, l));
                    }
                    if l == i && kept(i) {
                        let s = sign((g.p(i) + g.p(j)) * (g.p(kk) + g.p(l)));
                        rhs = rhs.sub(&e(kk, j).scale(&ctx.int(s)));
                    }
                    rep.record(Identity::new(label, lhs, rhs).check(&fam.space));
                }
            }
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// The factorization identities, and `zDz^{-1}` against `reference` entry by entry.
pub fn check_factorization(f: &RationalFactorization, reference: &GeneratorFamily) -> VerificationReport {
    let g = &f.grading;
    let k = g.k();
    let sp = &f.space;
    let ctx = sp.ctx();
    let o = &f.osc;
    let p = |x: usize| g.p(x);
    let one = ctx.one();
    let mut rep = VerificationReport::new("factorization", &format!("grading={} D={}", g.bit_string(), sp.cutoff()));
    let start = Instant::now();
    let id = FockOperator::identity(sp);
    let zero = FockOperator::zero(sp);
    let delta = |i: usize, j: usize| if i == j { Expr::op(ctx, &id) } else { Expr::zero(ctx) };

    for i in 1..=k {
        for j in 1..=k {
            let sgn = |kk: usize| ctx.int(sign((p(i) + p(kk)) * (p(kk) + p(j))));
            let zy = (1..=k).fold(Expr::zero(ctx), |acc, kk| acc.add(&Expr::ops(ctx, &[f.z(i, kk), f.y(kk, j)]).scale(&sgn(kk))));
            let yz = (1..=k).fold(Expr::zero(ctx), |acc, kk| acc.add(&Expr::ops(ctx, &[f.y(i, kk), f.z(kk, j)]).scale(&sgn(kk))));
            rep.record(Identity::new(format!("(zy)_{i}{j}"), zy, delta(i, j)).check(sp));
            rep.record(Identity::new(format!("(yz)_{i}{j}"), yz, delta(i, j)).check(sp));
        }
    }
    let w = f.y_by_substitution();
    for b in 1..=k {
        for i in 1..=k {
            let lbl = format!("y_{b}{i} chain sum = substitution");
            rep.record(Identity::new(lbl, Expr::op(ctx, f.y(b, i)), Expr::op(ctx, &w[(b - 1) * k + (i - 1)])).check(sp));
        }
    }

    // D y in the three cases α < i, α = i, α = i+1.
    let mut owned: Vec<(String, FockOperator, FockOperator)> = Vec::new();
    for i in 1..=k {
        for alpha in 1..=(i + 1).min(k) {
            let lhs = sum(
                &zero,
                (i..=k).filter(|b| *b > alpha).map(|b| {
                    let s = sign(p(b) * (p(alpha) + 1)) * sign((p(b) + 1) * p(i));
                    (f.dlow(b, alpha) * f.y(b, i)).scale_int(s)
                }),
            );
            let rhs = if alpha < i {
                o.cd(alpha, i).scale_int(sign((p(alpha) + 1) * p(i)))
            } else if alpha == i {
                o.val(&o.nr(i, i + 1, k)).scale_int(-1)
            } else {
                let hop = sum(&zero, (i + 2..=k).map(|kk| (o.c(i, kk) * o.cd(i + 1, kk)).scale_int(sign(p(kk)))));
                let diag = (o.c(i, i + 1) * &o.val(&o.nr(i + 1, i + 2, k))).scale_int(sign(p(i + 1)));
                (&diag - &hop).scale_int(sign(p(i + 1) * p(i)))
            };
            owned.push((format!("(Dy)_{alpha},{i}"), lhs, rhs));
        }
    }
    for (lbl, l, r) in &owned {
        rep.record(Identity::new(lbl.clone(), Expr::op(ctx, l), Expr::op(ctx, r)).check(sp));
    }

    let lower: Vec<(usize, usize)> = (1..=k).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
    for &(i, j) in &lower {
        for &(kk, l) in &lower {
            let lhs = match Expr::op(ctx, f.dlow(i, j)).comm(&Expr::op(ctx, f.dlow(kk, l)), &one) {
                Ok(x) => x,
                Err(msg) => {
                    rep.error(msg);
                    continue;
                }
            };
            let mut rhs = Expr::zero(ctx);
            if j == kk {
                rhs = rhs.sub(&Expr::op(ctx, f.dlow(i, l)));
            }
            if l == i {
                rhs = rhs.add(&Expr::op(ctx, f.dlow(kk, j)).scale(&ctx.int(sign((p(i) + p(j)) * (p(kk) + p(i))))));
            }
            rep.record(Identity::new(format!("[D_{i}{j}, D_{kk}{l}]"), lhs, rhs).check(sp));

            let lhs = match Expr::op(ctx, f.z(i, j)).comm(&Expr::op(ctx, f.dlow(kk, l)), &one) {
                Ok(x) => x,
                Err(msg) => {
                    rep.error(msg);
                    continue;
                }
            };
            let mut rhs = Expr::zero(ctx);
            if i == kk && j == l {
                rhs = rhs.add(&Expr::scalar(ctx, ctx.int(g.s(i) * g.s(j))));
            }
            if j == l && i > kk {
                rhs = rhs.add(&Expr::op(ctx, f.z(i, kk)).scale(&ctx.int(sign((p(i) + p(j)) * (p(i) + p(kk) + 1)))));
            }
            rep.record(Identity::new(format!("[z_{i}{j}, D_{kk}{l}]"), lhs, rhs).check(sp));
        }
    }

    let fam = f.family();
    if reference.k() != k || !reference.space.same(sp) {
        rep.error("reference family lives elsewhere");
    } else {
        for i in 1..=k {
            for j in 1..=k {
                rep.record(Identity::new(format!("(zDz^-1)_{i}{j} = e_{i}{j}"), Expr::op(ctx, fam.e(i, j)), Expr::op(ctx, reference.e(i, j))).check(sp));
            }
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// `m^{-1}` on `Ī`, `1` on `I`.
pub fn g_m(sub: SubsetI, ctx: &crate::scalar::ScalarCtx) -> Vec<Scalar> {
    (1..=sub.k).map(|i| if sub.in_ibar(i) { ctx.var_pow(var::M, -1) } else { ctx.one() }).collect()
}

/// Rows in `Ī` divided by `m`, then the constant term as `m → ∞`.
pub fn limit_rational(fam: &GeneratorFamily, sub: SubsetI) -> Result<GeneratorFamily, LimitError> {
    let ctx = fam.space.ctx().clone();
    if !ctx.is_exact() {
        return Err(LimitError::NeedsExact);
    }
    let scale = g_m(sub, &ctx);
    let k = fam.k();
    let mut n = 0usize;
    // try_map visits e_ij row by row first
    let renormalized = fam.try_map::<LimitError>(|_, op| {
        let row = n / k + 1;
        n += 1;
        Ok(if row <= k { op.scale(&scale[row - 1]) } else { op.clone() })
    })?;
    let mut out = limit_family(&renormalized, var::M, Direction::Infinity)?;
    out.contracted = Some(sub);
    out.vacuum_weights = (1..=fam.k())
        .map(|i| if sub.in_ibar(i) { Weight::int(fam.grading.s(i)) } else { fam.vacuum_weights[i - 1] })
        .collect();
    Ok(out.with_tag(format!("large-m {}", fam.tag)))
}

/// `lim_{m→∞} L(u)(1 ⊗ g_m)`.
pub fn limit_rational_lax(lax: &LaxOperator, sub: SubsetI) -> Result<LaxOperator, LimitError> {
    let ctx = lax.space.ctx();
    let ones = vec![ctx.one(); lax.k()];
    let t = transform_diagonal(lax, &ones, &g_m(sub, ctx)).map_err(|_| LimitError::Scalar { entry: "g_m".into(), source: crate::scalar::ScalarError::NotInvertible })?;
    limit_lax(&t, var::M, Direction::Infinity)
}
