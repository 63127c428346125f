//! The RLL relation `R²³(x,y) L¹³(y) L¹²(x) = L¹²(x) L¹³(y) R²³(x,y)` in
//! `End(F) ⊗ End(C^K) ⊗ End(C^K)`, compared component by component.
//!
//! Rational operators enter as `R²³(v-u) L¹³(v) L¹²(u) = L¹²(u) L¹³(v) R²³(v-u)`,
//! the `q → 1` image of the trigonometric relation when `R(u)` is taken at
//! `x = q^{-2u}` and `L(u)` at `x = q^{2u}`.
//!
//! Components are keyed by `(a,b,c,d)` for `X ⊗ E_ab ⊗ E_cd`. All operator
//! components are even, so
//! `(X⊗E_ab⊗E_cd)(Y⊗E_ef⊗E_gh) = (-1)^s XY ⊗ δ_be E_af ⊗ δ_dg E_ch` with
//! `s = (p(E_ab)+p(E_cd))(p(E_ef)+p(E_gh)) + p(E_cd) p(E_ef)`.

use super::identity::{Expr, Identity};
use super::report::VerificationReport;
use crate::grading::GradingProfile;
use crate::lax::{LaxOperator, RMatrix, SpectralKind};
use crate::scalar::{var, Scalar, ScalarCtx};
use std::collections::BTreeMap;
use std::time::Instant;

type Key = (usize, usize, usize, usize);

struct Triple<'a> {
    terms: BTreeMap<Key, Expr<'a>>,
}

impl<'a> Triple<'a> {
    fn new() -> Self {
        Triple { terms: BTreeMap::new() }
    }

    fn push(&mut self, key: Key, e: Expr<'a>) {
        match self.terms.get_mut(&key) {
            Some(x) => *x = x.add(&e),
            None => {
                self.terms.insert(key, e);
            }
        }
    }

    fn mul(&self, o: &Triple<'a>, g: &GradingProfile) -> Triple<'a> {
        let mut out = Triple::new();
        for (&(a, b, c, d), x) in &self.terms {
            for (&(e, f, gg, h), y) in &o.terms {
                if b != e || d != gg {
                    continue;
                }
                let s = component_sign(g, (a, b, c, d), (e, f, gg, h));
                let mut xy = x.mul(y);
                if s == 1 {
                    xy = xy.neg();
                }
                out.push((a, f, c, h), xy);
            }
        }
        out
    }
}

/// Sign exponent of `(X⊗E_ab⊗E_cd)(Y⊗E_ef⊗E_gh)` for even components.
pub(crate) fn component_sign(g: &GradingProfile, (a, b, c, d): Key, (e, f, gg, h): Key) -> u8 {
    let pl = (g.pair_parity(a, b) + g.pair_parity(c, d)) % 2;
    let pr = (g.pair_parity(e, f) + g.pair_parity(gg, h)) % 2;
    (pl * pr + g.pair_parity(c, d) * g.pair_parity(e, f)) % 2
}

fn power_of(ctx: &ScalarCtx, base: &Scalar, inv: Option<&Scalar>, n: i32) -> Scalar {
    let mut s = ctx.one();
    for _ in 0..n.unsigned_abs() {
        s = if n >= 0 { &s * base } else { &s * inv.expect("negative power of non-invertible argument") };
    }
    s
}

/// `L` placed in the auxiliary factor `slot` (2 or 3), with spectral variable `v`.
fn embed_l<'a>(lax: &'a LaxOperator, slot: usize, v: usize) -> Triple<'a> {
    let ctx = lax.space.ctx();
    let k = lax.k();
    let base = ctx.var_pow(v, 1);
    let inv = ctx.var_pow(v, -1);
    let mut t = Triple::new();
    for part in &lax.parts {
        let c = power_of(ctx, &base, Some(&inv), part.power).scale_int(part.coef);
        for i in 1..=k {
            for j in 1..=k {
                let op = &part.m[(i - 1) * k + (j - 1)];
                if op.is_structural_zero() {
                    continue;
                }
                let e = Expr::op(ctx, op).scale(&c);
                for l in 1..=k {
                    let key = if slot == 2 { (i, j, l, l) } else { (l, l, i, j) };
                    t.push(key, e.clone());
                }
            }
        }
    }
    t
}

fn embed_r<'a>(r: &RMatrix, ctx: &ScalarCtx, rational_u_minus_v: bool) -> Triple<'a> {
    let (x, y) = (ctx.var_pow(var::X, 1), ctx.var_pow(var::Y, 1));
    let (arg, inv) = match r.kind {
        SpectralKind::Trig => (&x * &ctx.var_pow(var::Y, -1), Some(&y * &ctx.var_pow(var::X, -1))),
        SpectralKind::Rational if rational_u_minus_v => (&x - &y, None),
        SpectralKind::Rational => (&y - &x, None),
    };
    let mut t = Triple::new();
    for part in &r.parts {
        let c = power_of(ctx, &arg, inv.as_ref(), part.power).scale_int(part.coef);
        for (&key, s) in &part.entries {
            t.push(key, Expr::scalar(ctx, &c * s));
        }
    }
    t
}

/// Checks the RLL relation for `lax` against `r` on the admissible block.
pub fn check_ybe(lax: &LaxOperator, r: &RMatrix) -> VerificationReport {
    check_rll(lax, r, false)
}

/// Rational RLL with `R²³(u-v)` in place of `R²³(v-u)`.
pub fn check_ybe_u_minus_v(lax: &LaxOperator, r: &RMatrix) -> VerificationReport {
    check_rll(lax, r, true)
}

fn check_rll(lax: &LaxOperator, r: &RMatrix, rational_u_minus_v: bool) -> VerificationReport {
    let g = &lax.grading;
    let sp = &lax.space;
    let start = Instant::now();
    let mut rep = VerificationReport::new("ybe", &format!("{} grading={} D={}", lax.tag, g.bit_string(), sp.cutoff()));
    match rll_identities(lax, r, rational_u_minus_v) {
        Ok(ids) => {
            for id in ids {
                rep.record(id.check(sp));
            }
        }
        Err(e) => rep.error(e),
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// One identity per auxiliary component `E_ab ⊗ E_cd` of the RLL relation.
pub fn ybe_identities<'a>(lax: &'a LaxOperator, r: &RMatrix) -> Result<Vec<Identity<'a>>, String> {
    rll_identities(lax, r, false)
}

fn rll_identities<'a>(lax: &'a LaxOperator, r: &RMatrix, rational_u_minus_v: bool) -> Result<Vec<Identity<'a>>, String> {
    let g = &lax.grading;
    let ctx = lax.space.ctx();
    if r.kind != lax.kind || r.grading != *g {
        return Err("R-matrix and L-operator do not match".into());
    }
    let l12 = embed_l(lax, 2, var::X);
    let l13 = embed_l(lax, 3, var::Y);
    let r23 = embed_r(r, ctx, rational_u_minus_v);
    let lhs = r23.mul(&l13, g).mul(&l12, g);
    let rhs = l12.mul(&l13, g).mul(&r23, g);
    let mut keys: Vec<Key> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    let zero = Expr::zero(ctx);
    Ok(keys
        .into_iter()
        .map(|key| {
            let l = lhs.terms.get(&key).unwrap_or(&zero).clone();
            let rr = rhs.terms.get(&key).unwrap_or(&zero).clone();
            let (a, b, c, d) = key;
            Identity::new(format!("RLL E{a}{b}⊗E{c}{d}"), l, rr)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockOperator, FockSpace, Semantics};
    use crate::lax::{frt_from_family, ps_r};
    use crate::realizations::build_verma;

    fn verma_lax(gs: &str, d: u32) -> LaxOperator {
        let g = GradingProfile::parse(gs).unwrap();
        let lam: Vec<i64> = (0..g.k() as i64).map(|i| 2 - i).collect();
        let sp = FockSpace::verma(&g, d, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let fam = build_verma(&g, &lam, &sp).unwrap();
        frt_from_family(&fam).unwrap()
    }

    #[test]
    fn verma_lax_satisfies_rll() {
        for gs in ["0", "1", "00", "01", "10", "11", "001", "010", "100"] {
            let lax = verma_lax(gs, 3);
            let r = ps_r(&lax.grading, lax.space.ctx());
            let rep = check_ybe(&lax, &r);
            assert!(rep.pass(), "{gs}: {}", rep.summary());
        }
    }

    #[test]
    fn perturbed_entry_breaks_rll() {
        let lax = verma_lax("01", 3);
        let bumped = lax.l(2, 1).scale_int(2);
        let bad = lax.clone().with_entry(0, 2, 1, bumped);
        let r = ps_r(&bad.grading, bad.space.ctx());
        assert!(!check_ybe(&bad, &r).pass());
        let wrong_sign = lax.clone().with_entry(-1, 2, 2, FockOperator::zero(&lax.space));
        assert!(!check_ybe(&wrong_sign, &r).pass());
    }
}
