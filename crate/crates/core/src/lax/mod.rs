//! R-matrices and L-operators with entries in Fock-space operators.
//!
//! An L-operator is a finite sum `Σ coef · s^power · M` over a formal spectral
//! variable `s` (`x` in the trigonometric case, `u` in the rational case),
//! with `M = Σ M_ij ⊗ E_ij`.

pub mod contracted;
pub mod hp;
pub mod rational;

pub use contracted::{contracted_l_entries, ContractedL};
pub use hp::{hp_l_entries, hp_l_with, HpVariant};
pub use rational::{factorize, rational_degenerate_l, rational_factorized, RationalFactorization};

use crate::fock::{FockOperator, FockSpace, Parity};
use crate::grading::GradingProfile;
use crate::realizations::GeneratorFamily;
use crate::scalar::{Scalar, ScalarCtx};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaxError {
    #[error("family has no barred diagonal")]
    MissingBar,
    #[error("diagonal entry {0} is not an invertible monomial")]
    NotInvertible(usize),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralKind {
    /// `L(x) = L - x^{-1} L̄`, `R(z) = R - z R̄` with `z = x/y`.
    Trig,
    /// `L(u) = u + L_0`, `R(u - v)`.
    Rational,
}

/// Coefficient of `E_ab ⊗ E_cd`, keyed by `(a,b,c,d)`.
pub type REntries = BTreeMap<(usize, usize, usize, usize), Scalar>;

#[derive(Clone, Debug)]
pub struct RPart {
    pub power: i32,
    pub coef: i64,
    pub entries: REntries,
}

#[derive(Clone, Debug)]
pub struct RMatrix {
    pub grading: GradingProfile,
    pub kind: SpectralKind,
    pub parts: Vec<RPart>,
}

impl RMatrix {
    pub fn part(&self, power: i32) -> Option<&RPart> {
        self.parts.iter().find(|p| p.power == power)
    }
}

/// The Perk–Schultz R-matrix `R(x) = R - x R̄`.
pub fn ps_r(g: &GradingProfile, ctx: &ScalarCtx) -> RMatrix {
    let k = g.k();
    let mut r = REntries::new();
    let mut rb = REntries::new();
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                r.insert((i, i, i, i), ctx.qpow(g.s(i)));
                rb.insert((i, i, i, i), ctx.qpow(-g.s(i)));
            } else {
                r.insert((i, i, j, j), ctx.one());
                rb.insert((i, i, j, j), ctx.one());
                if i < j {
                    r.insert((i, j, j, i), ctx.delta().scale_int(g.s(j)));
                } else {
                    rb.insert((i, j, j, i), ctx.delta().scale_int(-g.s(j)));
                }
            }
        }
    }
    RMatrix {
        grading: g.clone(),
        kind: SpectralKind::Trig,
        parts: vec![RPart { power: 0, coef: 1, entries: r }, RPart { power: 1, coef: -1, entries: rb }],
    }
}

/// The rational R-matrix `R(u) = u + Σ p_i E_ji ⊗ E_ij`.
pub fn rational_r(g: &GradingProfile, ctx: &ScalarCtx) -> RMatrix {
    let k = g.k();
    let mut id = REntries::new();
    let mut p = REntries::new();
    for i in 1..=k {
        for j in 1..=k {
            id.insert((i, i, j, j), ctx.one());
            p.insert((j, i, i, j), ctx.int(g.s(i)));
        }
    }
    RMatrix {
        grading: g.clone(),
        kind: SpectralKind::Rational,
        parts: vec![RPart { power: 1, coef: 1, entries: id }, RPart { power: 0, coef: 1, entries: p }],
    }
}

/// Whether `R (h ⊗ h) = (h ⊗ h) R` for the diagonal `h`.
pub fn commutes_with_diagonal(r: &RMatrix, h: &[Scalar]) -> bool {
    r.parts.iter().all(|p| {
        p.entries.iter().all(|(&(i, j, k, l), s)| s.is_zero() || (&h[i - 1] * &h[k - 1]) == (&h[j - 1] * &h[l - 1]))
    })
}

#[derive(Clone, Debug)]
pub struct LaxPart {
    pub power: i32,
    pub coef: i64,
    /// Row-major `K×K`, entry `(i,j)` multiplies `E_ij`.
    pub m: Vec<FockOperator>,
}

#[derive(Clone, Debug)]
pub struct LaxOperator {
    pub grading: GradingProfile,
    pub space: Arc<FockSpace>,
    pub kind: SpectralKind,
    pub parts: Vec<LaxPart>,
    pub tag: String,
}

impl LaxOperator {
    pub fn k(&self) -> usize {
        self.grading.k()
    }

    pub fn part(&self, power: i32) -> Option<&LaxPart> {
        self.parts.iter().find(|p| p.power == power)
    }

    fn entry(&self, power: i32, i: usize, j: usize) -> &FockOperator {
        &self.part(power).expect("missing spectral part").m[(i - 1) * self.k() + (j - 1)]
    }

    /// `L_ij` (trigonometric).
    pub fn l(&self, i: usize, j: usize) -> &FockOperator {
        self.entry(0, i, j)
    }

    /// `L̄_ij` (trigonometric).
    pub fn lbar(&self, i: usize, j: usize) -> &FockOperator {
        self.entry(-1, i, j)
    }

    /// Trigonometric operator from its two constant parts.
    pub fn trig(g: &GradingProfile, space: &Arc<FockSpace>, l: Vec<FockOperator>, lbar: Vec<FockOperator>, tag: &str) -> Self {
        LaxOperator {
            grading: g.clone(),
            space: space.clone(),
            kind: SpectralKind::Trig,
            parts: vec![LaxPart { power: 0, coef: 1, m: l }, LaxPart { power: -1, coef: -1, m: lbar }],
            tag: tag.to_string(),
        }
    }

    /// Rational operator `u · diag + Σ M_ij ⊗ E_ij`.
    pub fn rational(g: &GradingProfile, space: &Arc<FockSpace>, u_coef: Vec<FockOperator>, m: Vec<FockOperator>, tag: &str) -> Self {
        LaxOperator {
            grading: g.clone(),
            space: space.clone(),
            kind: SpectralKind::Rational,
            parts: vec![LaxPart { power: 1, coef: 1, m: u_coef }, LaxPart { power: 0, coef: 1, m }],
            tag: tag.to_string(),
        }
    }

    /// Replaces one entry of one part (used by mutation tests).
    pub fn with_entry(mut self, power: i32, i: usize, j: usize, op: FockOperator) -> Self {
        let k = self.k();
        let part = self.parts.iter_mut().find(|p| p.power == power).expect("missing spectral part");
        part.m[(i - 1) * k + (j - 1)] = op;
        self
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    /// Applies `f(power, i, j, op)` to every entry.
    pub fn try_map<E>(&self, mut f: impl FnMut(i32, usize, usize, &FockOperator) -> Result<FockOperator, E>) -> Result<LaxOperator, E> {
        let k = self.k();
        let mut parts = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let mut m = Vec::with_capacity(k * k);
            for i in 1..=k {
                for j in 1..=k {
                    m.push(f(p.power, i, j, &p.m[(i - 1) * k + (j - 1)])?);
                }
            }
            parts.push(LaxPart { power: p.power, coef: p.coef, m });
        }
        Ok(LaxOperator { grading: self.grading.clone(), space: self.space.clone(), kind: self.kind, parts, tag: self.tag.clone() })
    }
}

fn zero_entry(g: &GradingProfile, space: &Arc<FockSpace>, i: usize, j: usize) -> FockOperator {
    FockOperator::zero_with_parity(space, Parity::of_bit(g.pair_parity(i, j)))
}

/// Inverse of a diagonal operator with monomial entries.
pub fn diagonal_inverse(op: &FockOperator) -> Result<FockOperator, LaxError> {
    crate::verify::identity::diag_inverse(op).map_err(LaxError::Other)
}

/// `L(x) = L - x^{-1} L̄` from a family through the FRT dictionary.
pub fn frt_from_family(fam: &GeneratorFamily) -> Result<LaxOperator, LaxError> {
    let g = &fam.grading;
    let k = g.k();
    let sp = &fam.space;
    let ctx = sp.ctx();
    if !fam.has_q_diagonals() {
        return Err(LaxError::MissingBar);
    }
    let qinv: Vec<FockOperator> = (1..=k).map(|i| diagonal_inverse(fam.qdiag(i).unwrap())).collect::<Result<_, _>>()?;
    let mut l = Vec::with_capacity(k * k);
    let mut lb = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            if i == j {
                l.push(fam.qdiag(i).unwrap().clone());
                lb.push(fam.qbar(i).unwrap().clone());
            } else if i > j {
                l.push((fam.e(j, i) * fam.qdiag(j).unwrap()).scale(&ctx.delta().scale_int(g.s(i))));
                lb.push(zero_entry(g, sp, i, j));
            } else {
                l.push(zero_entry(g, sp, i, j));
                lb.push((&qinv[i - 1] * fam.e(j, i)).scale(&ctx.delta().scale_int(-g.s(i))));
            }
        }
    }
    Ok(LaxOperator::trig(g, sp, l, lb, &format!("frt {}", fam.tag)))
}

/// `(1 ⊗ H_L) L(s) (1 ⊗ H_R)` for invertible diagonal scalars.
pub fn transform_diagonal(lax: &LaxOperator, hl: &[Scalar], hr: &[Scalar]) -> Result<LaxOperator, LaxError> {
    for (n, h) in hl.iter().chain(hr).enumerate() {
        if h.inverse_monomial().is_err() {
            return Err(LaxError::NotInvertible(n % lax.k() + 1));
        }
    }
    lax.try_map(|_, i, j, op| Ok(op.scale(&(&hl[i - 1] * &hr[j - 1]))))
}

/// `L(s) ↦ L(c s)`.
pub fn rescale_spectral(lax: &LaxOperator, c: &Scalar) -> Result<LaxOperator, LaxError> {
    let inv = c.inverse_monomial().map_err(|_| LaxError::NotInvertible(0))?;
    lax.try_map(|power, _, _, op| {
        let mut s = lax.space.ctx().one();
        let base = if power >= 0 { c } else { &inv };
        for _ in 0..power.unsigned_abs() {
            s = &s * base;
        }
        Ok(op.scale(&s))
    })
}

/// `L(u) = u + Σ p_i e_ji ⊗ E_ij` from a rational family.
pub fn rational_lax(fam: &GeneratorFamily) -> LaxOperator {
    let g = &fam.grading;
    let k = g.k();
    let sp = &fam.space;
    let mut u = Vec::with_capacity(k * k);
    let mut m = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            u.push(if i == j { FockOperator::identity(sp) } else { zero_entry(g, sp, i, j) });
            m.push(fam.e(j, i).scale_int(g.s(i)));
        }
    }
    LaxOperator::rational(g, sp, u, m, &format!("rational {}", fam.tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ps_r_entries() {
        let ctx = ScalarCtx::exact();
        let g = GradingProfile::parse("01").unwrap();
        let r = ps_r(&g, &ctx);
        let r0 = &r.part(0).unwrap().entries;
        assert_eq!(r0[&(1, 2, 2, 1)], ctx.delta().scale_int(-1));
        assert_eq!(r0[&(2, 2, 2, 2)], ctx.qpow(-1));
        assert_eq!(r0[&(1, 1, 1, 1)], ctx.qpow(1));
        assert!(!r0.contains_key(&(2, 1, 1, 2)));
        let g1 = GradingProfile::parse("0").unwrap();
        let r = ps_r(&g1, &ctx);
        assert_eq!(r.part(0).unwrap().entries.len(), 1);
        assert_eq!(r.part(1).unwrap().entries[&(1, 1, 1, 1)], ctx.qpow(-1));
    }
}
