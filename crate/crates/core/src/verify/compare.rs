//! Entry-by-entry comparison of operator families on the admissible block.

use super::identity::{Expr, Identity};
use super::report::VerificationReport;
use crate::fock::FockOperator;
use crate::lax::LaxOperator;
use crate::realizations::GeneratorFamily;
use std::time::Instant;

/// Compares two lists of named operators pairwise.
pub fn compare_operators(suite: &str, pairs: &[(String, &FockOperator, &FockOperator)]) -> VerificationReport {
    compare_operators_on(suite, pairs, &|_| true)
}

/// As [`compare_operators`], restricted to the basis states accepted by `keep`.
pub fn compare_operators_on(suite: &str, pairs: &[(String, &FockOperator, &FockOperator)], keep: &dyn Fn(usize) -> bool) -> VerificationReport {
    let mut rep = VerificationReport::new(suite, "");
    let start = Instant::now();
    for (name, x, y) in pairs {
        if !x.space().same(y.space()) {
            rep.fail(name, "operators live on different spaces");
            continue;
        }
        let ctx = x.space().ctx();
        rep.record(Identity::new(name.clone(), Expr::op(ctx, x), Expr::op(ctx, y)).check_filtered(x.space(), keep));
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// Compares every `e_ij` and, when both carry them, the q-diagonals.
pub fn compare_families(a: &GeneratorFamily, b: &GeneratorFamily) -> VerificationReport {
    compare_families_on(a, b, &|_| true)
}

pub fn compare_families_on(a: &GeneratorFamily, b: &GeneratorFamily, keep: &dyn Fn(usize) -> bool) -> VerificationReport {
    let mut pairs = Vec::new();
    let k = a.k();
    if b.k() != k {
        let mut rep = VerificationReport::new("compare", "");
        rep.error("families of different rank");
        return rep;
    }
    for i in 1..=k {
        for j in 1..=k {
            pairs.push((format!("e_{i}{j}"), a.e(i, j), b.e(i, j)));
        }
    }
    if a.has_q_diagonals() && b.has_q_diagonals() {
        for i in 1..=k {
            pairs.push((format!("q^(p e_{i}{i})"), a.qdiag(i).unwrap(), b.qdiag(i).unwrap()));
            pairs.push((format!("q^(p ebar_{i}{i})"), a.qbar(i).unwrap(), b.qbar(i).unwrap()));
        }
    }
    let mut rep = compare_operators_on("compare", &pairs, keep);
    rep.descriptor = format!("{} vs {}", a.tag, b.tag);
    rep
}

/// Compares every spectral part of two L-operators entry by entry.
pub fn compare_lax(a: &LaxOperator, b: &LaxOperator) -> VerificationReport {
    let mut pairs = Vec::new();
    let k = a.k();
    for pa in &a.parts {
        let Some(pb) = b.part(pa.power) else {
            let mut rep = VerificationReport::new("compare", "");
            rep.error(format!("missing spectral part {}", pa.power));
            return rep;
        };
        for i in 1..=k {
            for j in 1..=k {
                let n = (i - 1) * k + (j - 1);
                pairs.push((format!("L[{}]_{i}{j}", pa.power), &pa.m[n], &pb.m[n]));
            }
        }
    }
    let mut rep = compare_operators("compare", &pairs);
    rep.descriptor = format!("{} vs {}", a.tag, b.tag);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockSpace, Semantics};
    use crate::grading::{enumerate_gradings, SubsetI};
    use crate::realizations::osc::Osc;
    use crate::realizations::{build_contracted_mu, build_reduced_a1, closed_form_a1_limit, closed_form_last_limit, rectangular_space, verma_family};
    use crate::scalar::{ScalarCtx, Weight};

    #[test]
    fn closed_forms_match_general_builder() {
        for total in 2..=4usize {
            for g in enumerate_gradings(total) {
                for mu in [-1, 2] {
                    let sub = SubsetI::tail(1, total).unwrap();
                    let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
                    let rep = compare_families(&build_contracted_mu(&g, sub, mu, &sp).unwrap(), &closed_form_a1_limit(&g, mu, &sp).unwrap());
                    assert!(rep.pass(), "{} {}", g.bit_string(), rep.summary());
                    let sub = SubsetI::tail(total - 1, total).unwrap();
                    let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
                    let rep = compare_families(&build_contracted_mu(&g, sub, mu, &sp).unwrap(), &closed_form_last_limit(&g, mu, &sp).unwrap());
                    assert!(rep.pass(), "{} {}", g.bit_string(), rep.summary());
                }
            }
        }
    }

    #[test]
    fn reduced_verma_matches_closed_form() {
        for total in 2..=4usize {
            for g in enumerate_gradings(total) {
                let modes: Vec<(usize, usize)> = (2..=total).map(|j| (1, j)).collect();
                let sp = FockSpace::new(&g, &modes, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let (l1, mu) = (2, -1);
                let osc = Osc::standard(&sp).restrict(|i, _| i == 1);
                let mut lambda = vec![Weight::int(l1)];
                lambda.extend((2..=total).map(|i| Weight::int(mu * g.s(i))));
                let v = verma_family(&g, &lambda, &osc, "verma-reduced").unwrap();
                let rep = compare_families(&v, &build_reduced_a1(&g, l1, mu, &sp).unwrap());
                assert!(rep.pass(), "{} {}", g.bit_string(), rep.summary());
            }
        }
    }

    #[test]
    fn different_weights_are_told_apart() {
        let g = crate::grading::GradingProfile::parse("010").unwrap();
        let sub = SubsetI::tail(1, 3).unwrap();
        let sp = rectangular_space(&g, &sub, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let rep = compare_families(&build_contracted_mu(&g, sub, 0, &sp).unwrap(), &closed_form_a1_limit(&g, 1, &sp).unwrap());
        assert!(!rep.pass());
        assert!(rep.checks > rep.passed && rep.passed > 0);
    }
}
