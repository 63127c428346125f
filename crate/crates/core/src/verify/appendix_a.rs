//! The defining relations of `U_q(gl(M|N))` in terms of `e_ij` and the
//! q-diagonals, and their contracted variant.

use super::identity::{diag_inverse, Expr, Identity};
use super::report::VerificationReport;
use crate::fock::FockOperator;
use crate::realizations::GeneratorFamily;
use std::time::Instant;

/// Index patterns, one predicate per relation.
mod pattern {
    pub fn a1(a: usize, b: usize, c: usize) -> bool {
        a > c && c > b
    }
    pub fn a2(a: usize, b: usize, c: usize) -> bool {
        a < c && c < b
    }
    pub fn a4(a: usize, b: usize, c: usize, d: usize) -> bool {
        (b < d && d < a && a < c) || (a < c && c < b && b < d)
    }
    pub fn a5(a: usize, b: usize, c: usize, d: usize) -> bool {
        (d < c && c < b && b < a)
            || (d > c && c > b && b > a)
            || (d < b && b < a && a < c)
            || (d > b && b > a && a > c)
            || (d < c && c <= a && a < b)
            || (c < d && d <= b && b < a)
            || (d < a && a < b && b < c)
            || (c < b && b < a && a < d)
    }
    pub fn a6(a: usize, b: usize, c: usize, d: usize) -> bool {
        d < a && a < c && c < b
    }
    pub fn a7(a: usize, b: usize, c: usize, d: usize) -> bool {
        a < d && d < b && b < c
    }
    pub fn a8(a: usize, b: usize, c: usize) -> bool {
        a < b && b < c
    }
    pub fn a9(a: usize, b: usize, c: usize) -> bool {
        a < c && c < b
    }
    pub fn a10(a: usize, b: usize, d: usize) -> bool {
        a < d && d < b
    }
    pub fn a11(a: usize, b: usize, d: usize) -> bool {
        d < a && a < b
    }
    pub fn a12(a: usize, b: usize, d: usize) -> bool {
        (a < b && b < d) || (b < d && d < a)
    }
    pub fn a13(a: usize, b: usize, c: usize) -> bool {
        (c < a && a < b) || (b < c && c < a)
    }
}

/// Builds every relation for the family; contracted families get the
/// `θ(c∈I)` variant of the inverse relation.
pub fn identities<'a>(fam: &'a GeneratorFamily, qinv: &'a [FockOperator]) -> Result<Vec<Identity<'a>>, String> {
    let k = fam.k();
    let g = &fam.grading;
    let ctx = fam.space.ctx();
    let qd = |i: usize| fam.qdiag(i).expect("q-diagonals");
    let qb = |i: usize| fam.qbar(i).expect("q-diagonals");
    let e = |i: usize, j: usize| Expr::op(ctx, fam.e(i, j));
    let op = |x: &'a FockOperator| Expr::op(ctx, x);
    let p = |i: usize| g.p(i) as i64;
    let s = |i: usize| g.s(i);
    let delta = Expr::scalar(ctx, ctx.delta());
    let one = ctx.one();
    // q^{p_a e_aa - p_c e_cc}
    let qq = |a: usize, c: usize| op(qd(a)).mul(&op(&qinv[c - 1]));
    let sign = |a: usize, b: usize, c: usize, extra: i64| -> i64 {
        if (p(a) * p(b) + (p(a) + p(b)) * p(c) + extra) % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut out = Vec::new();
    let r = 1..=k;

    for a in r.clone() {
        for b in r.clone() {
            out.push(Identity::zero(format!("a00 [qe_{a},qe_{b}]"), op(qd(a)).comm(&op(qd(b)), &one)?));
            out.push(Identity::zero(format!("a00 [qebar_{a},qebar_{b}]"), op(qb(a)).comm(&op(qb(b)), &one)?));
            out.push(Identity::zero(format!("a00 [qe_{a},qebar_{b}]"), op(qd(a)).comm(&op(qb(b)), &one)?));
        }
    }
    for c in r.clone() {
        let rhs = match fam.contracted {
            Some(sub) if sub.in_ibar(c) => Expr::zero(ctx),
            _ => Expr::one(ctx),
        };
        out.push(Identity::new(format!("a0 qe_{c} qebar_{c}"), op(qd(c)).mul(&op(qb(c))), rhs.clone()));
        out.push(Identity::new(format!("a0 qebar_{c} qe_{c}"), op(qb(c)).mul(&op(qd(c))), rhs));
    }
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                if pattern::a1(a, b, c) {
                    let lhs = e(a, b).mul(&op(qb(c))).mul(&op(qd(c)));
                    out.push(Identity::new(format!("a1 a={a} b={b} c={c}"), lhs, e(a, c).comm(&e(c, b), &ctx.qpow(s(c)))?));
                }
                if pattern::a2(a, b, c) {
                    out.push(Identity::new(format!("a2 a={a} b={b} c={c}"), e(a, b), e(a, c).comm(&e(c, b), &ctx.qpow(-s(c)))?));
                }
                if pattern::a8(a, b, c) {
                    let rhs = e(b, c).mul(&op(qd(b))).mul(&op(qb(a)));
                    out.push(Identity::new(format!("a8 a={a} b={b} c={c}"), e(b, a).comm(&e(a, c), &one)?, rhs));
                }
                if pattern::a9(a, b, c) {
                    out.push(Identity::new(format!("a9 a={a} b={b} c={c}"), e(b, a).comm(&e(a, c), &one)?, qq(a, c).mul(&e(b, c))));
                }
                if pattern::a13(a, b, c) {
                    out.push(Identity::zero(format!("a13 a={a} b={b} c={c}"), e(b, c).comm(&e(b, a), &ctx.qpow(s(b)))?));
                }
                // here c plays the role of d
                let d = c;
                if pattern::a10(a, b, d) {
                    out.push(Identity::new(format!("a10 a={a} b={b} d={d}"), e(d, b).comm(&e(b, a), &one)?, e(d, a).mul(&qq(b, d))));
                }
                if pattern::a11(a, b, d) {
                    let rhs = op(qd(a)).mul(&op(qb(b))).mul(&e(d, a));
                    out.push(Identity::new(format!("a11 a={a} b={b} d={d}"), e(d, b).comm(&e(b, a), &one)?, rhs));
                }
                if pattern::a12(a, b, d) {
                    out.push(Identity::zero(format!("a12 a={a} b={b} d={d}"), e(d, a).comm(&e(b, a), &ctx.qpow(-s(a)))?));
                }
            }
            if a < b {
                let lhs = e(a, b).comm(&e(b, a), &one)?;
                let rhs = op(qd(a)).mul(&op(qb(b))).sub(&op(qb(a)).mul(&op(qd(b))));
                let rhs = rhs.scale(&ctx.delta_inv().scale_int(s(a)));
                out.push(Identity::new(format!("a3 a={a} b={b}"), lhs, rhs));
            }
            if a != b {
                out.push(Identity::zero(format!("a16 a={a} b={b}"), e(b, a).comm(&e(b, a), &one)?));
            }
        }
    }
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let label = |n: &str| format!("{n} a={a} b={b} c={c} d={d}");
                    if pattern::a4(a, b, c, d) {
                        let rhs = delta.mul(&e(d, a)).mul(&e(b, c)).scale(&ctx.int(sign(a, b, c, 1)));
                        out.push(Identity::new(label("a4"), e(d, c).comm(&e(b, a), &one)?, rhs));
                    }
                    if pattern::a5(a, b, c, d) {
                        out.push(Identity::zero(label("a5"), e(d, c).comm(&e(b, a), &one)?));
                    }
                    if pattern::a6(a, b, c, d) {
                        let rhs = delta.mul(&qq(a, c)).mul(&e(d, a)).mul(&e(b, c)).scale(&ctx.int(sign(a, b, c, 1)));
                        out.push(Identity::new(label("a6"), e(d, c).comm(&e(b, a), &one)?, rhs));
                    }
                    if pattern::a7(a, b, c, d) {
                        let rhs = delta.mul(&e(d, a)).mul(&e(b, c)).mul(&qq(b, d)).scale(&ctx.int(sign(a, b, c, 0)));
                        out.push(Identity::new(label("a7"), e(d, c).comm(&e(b, a), &one)?, rhs));
                    }
                }
            }
        }
    }
    let _ = &delta;
    Ok(out)
}

/// Inverses of the q-diagonals `q^{-p_i e_ii}`.
pub fn qdiag_inverses(fam: &GeneratorFamily) -> Result<Vec<FockOperator>, String> {
    (1..=fam.k()).map(|i| diag_inverse(fam.qdiag(i).ok_or("family has no q-diagonals")?)).collect()
}

/// Runs the (plain or contracted) relation suite on the admissible block.
pub fn check_appendix_a(fam: &GeneratorFamily) -> VerificationReport {
    let suite = if fam.contracted.is_some() { "appendix-a-contracted" } else { "appendix-a" };
    let mut rep = VerificationReport::new(suite, &describe(fam));
    let start = Instant::now();
    if !fam.has_q_diagonals() {
        rep.error("family has no q-diagonals");
        return rep;
    }
    let qinv = match qdiag_inverses(fam) {
        Ok(v) => v,
        Err(e) => {
            rep.error(e);
            return rep;
        }
    };
    match identities(fam, &qinv) {
        Ok(ids) => {
            for id in ids {
                rep.record(id.check(&fam.space));
            }
        }
        Err(e) => rep.error(e),
    }
    if let Some(sub) = fam.contracted {
        contracted_conditions(fam, sub, &mut rep);
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// Vanishing conditions of the contracted algebra.
fn contracted_conditions(fam: &GeneratorFamily, sub: crate::grading::SubsetI, rep: &mut VerificationReport) {
    let k = fam.k();
    for i in sub.ibar_set() {
        let lbl = format!("qebar_{i} = 0 on the removed indices");
        if fam.qbar(i).map(|x| x.is_zero()).unwrap_or(false) {
            rep.record(super::report::CheckOutcome::pass(&lbl, 0, fam.space.dim()));
        } else {
            rep.fail(&lbl, "nonzero");
        }
    }
    for i in 1..=k {
        for j in 1..i {
            if sub.in_ibar(i) && sub.in_ibar(j) {
                let lbl = format!("e_{i}{j} = 0 on the removed indices");
                if fam.e(i, j).is_zero() {
                    rep.record(super::report::CheckOutcome::pass(&lbl, 0, fam.space.dim()));
                } else {
                    rep.fail(&lbl, "nonzero");
                }
            }
        }
    }
}

pub fn describe(fam: &GeneratorFamily) -> String {
    let mut s = format!("{} grading={} D={}", fam.tag, fam.grading.bit_string(), fam.space.cutoff());
    if let Some(sub) = fam.contracted {
        s.push_str(&format!(" I={:?}", sub.i_set()));
    }
    s
}
