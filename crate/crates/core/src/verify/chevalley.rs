//! Relations among the affine Chevalley generators `e_i, f_i, k_i`, plain or
//! contracted.

use super::identity::{Expr, Identity};
use super::report::VerificationReport;
use crate::fock::FockOperator;
use crate::grading::{cartan_matrix, theta};
use crate::realizations::ChevalleyFamily;
use std::time::Instant;

pub fn check_chevalley(ch: &ChevalleyFamily) -> VerificationReport {
    let k = ch.grading.k();
    let sp = &ch.space;
    let ctx = sp.ctx();
    let mut rep = VerificationReport::new("chevalley", &format!("grading={} D={}", ch.grading.bit_string(), sp.cutoff()));
    let start = Instant::now();
    let ks: Vec<FockOperator> = (1..=k).map(|i| ch.k_op(i)).collect();
    let qh: Vec<FockOperator> = (1..=k).map(|i| FockOperator::qpow(sp, &ch.h_form(i))).collect();
    let qmh: Vec<FockOperator> = (1..=k).map(|i| FockOperator::qpow(sp, &ch.h_form(i).scale(-1))).collect();
    let cm = cartan_matrix(&ch.grading);
    let one = ctx.one();
    let op = |x| Expr::op(ctx, x);
    let mut ids: Vec<Result<Identity, String>> = Vec::new();
    let next = |j: usize| j % k + 1;
    for i in 1..=k {
        for j in 1..=k {
            ids.push(op(&ks[i - 1]).comm(&op(&ks[j - 1]), &one).map(|x| Identity::zero(format!("[k_{i},k_{j}]"), x)));
            let c = theta(i == j) - theta(i == next(j));
            ids.push(
                op(&ks[i - 1]).comm(&op(ch.e(j)), &one).map(|x| Identity::new(format!("[k_{i},e_{j}]"), x, op(ch.e(j)).scale(&ctx.int(c)))),
            );
            ids.push(
                op(&ks[i - 1]).comm(&op(ch.f(j)), &one).map(|x| Identity::new(format!("[k_{i},f_{j}]"), x, op(ch.f(j)).scale(&ctx.int(-c)))),
            );
            // at K = 2 the nodes are linked twice and the two terms of a_12 can cancel
            let linked = i != j && (next(i) == j || next(j) == i);
            if cm[i - 1][j - 1] == 0 && !linked {
                ids.push(op(ch.e(i)).comm(&op(ch.e(j)), &one).map(|x| Identity::zero(format!("[e_{i},e_{j}]"), x)));
                ids.push(op(ch.f(i)).comm(&op(ch.f(j)), &one).map(|x| Identity::zero(format!("[f_{i},f_{j}]"), x)));
            }
            let rhs = if i == j {
                let (up, down) = match ch.subset {
                    Some(s) => (theta(s.in_i(next(i))), theta(s.in_i(i))),
                    None => (1, 1),
                };
                op(&qh[i - 1]).scale(&ctx.int(up)).sub(&op(&qmh[i - 1]).scale(&ctx.int(down))).scale(&ctx.delta_inv())
            } else {
                Expr::zero(ctx)
            };
            ids.push(op(ch.e(i)).comm(&op(ch.f(j)), &one).map(|x| Identity::new(format!("[e_{i},f_{j}]"), x, rhs)));
        }
    }
    for id in ids {
        match id {
            Ok(id) => rep.record(id.check(sp)),
            Err(e) => rep.error(e),
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}
