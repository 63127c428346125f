//! Identities as signed sums of operator words, evaluated column by column on
//! the block of basis states where truncation cannot interfere.

use super::report::{CheckOutcome, Failure};
use crate::fock::{product_depth, FockOperator, FockSpace, Parity, SparseVec};
use crate::scalar::{Scalar, ScalarCtx};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Relative tolerance used for the float backend.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Word<'a> {
    pub coef: Scalar,
    /// Left to right; applied right to left.
    pub factors: Vec<&'a FockOperator>,
}

impl<'a> Word<'a> {
    fn parity(&self) -> Option<u8> {
        let mut p = 0u8;
        for f in &self.factors {
            p ^= f.parity().bit()?;
        }
        Some(p)
    }

    fn structural_zero(&self) -> bool {
        self.coef.is_zero() || self.factors.iter().any(|f| f.is_structural_zero())
    }

    /// Exactness depth of the product.
    fn depth(&self) -> u32 {
        let mut d = 0u32;
        let mut hi = 0i32;
        for f in self.factors.iter().rev() {
            let (_, fh) = f.shift().unwrap_or((0, 0));
            d = product_depth(f.depth(), d, hi);
            hi += fh;
        }
        d
    }

    fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for f in self.factors.iter().rev() {
            if v.is_empty() {
                break;
            }
            v = f.apply(&v);
        }
        for x in v.values_mut() {
            *x = &*x * &self.coef;
        }
        v
    }
}

/// A formal linear combination of words.
#[derive(Clone, Debug)]
pub struct Expr<'a> {
    pub words: Vec<Word<'a>>,
    ctx: ScalarCtx,
}

impl<'a> Expr<'a> {
    pub fn zero(ctx: &ScalarCtx) -> Self {
        Expr { words: vec![], ctx: ctx.clone() }
    }

    pub fn scalar(ctx: &ScalarCtx, s: Scalar) -> Self {
        Expr { words: vec![Word { coef: s, factors: vec![] }], ctx: ctx.clone() }
    }

    pub fn one(ctx: &ScalarCtx) -> Self {
        Self::scalar(ctx, ctx.one())
    }

    pub fn op(ctx: &ScalarCtx, x: &'a FockOperator) -> Self {
        Expr { words: vec![Word { coef: ctx.one(), factors: vec![x] }], ctx: ctx.clone() }
    }

    pub fn ops(ctx: &ScalarCtx, xs: &[&'a FockOperator]) -> Self {
        Expr { words: vec![Word { coef: ctx.one(), factors: xs.to_vec() }], ctx: ctx.clone() }
    }

    pub fn mul(&self, o: &Expr<'a>) -> Self {
        let mut words = Vec::with_capacity(self.words.len() * o.words.len());
        for a in &self.words {
            for b in &o.words {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().copied());
                words.push(Word { coef: &a.coef * &b.coef, factors });
            }
        }
        Expr { words, ctx: self.ctx.clone() }
    }

    pub fn add(&self, o: &Expr<'a>) -> Self {
        let mut words = self.words.clone();
        words.extend(o.words.iter().cloned());
        Expr { words, ctx: self.ctx.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let words = self.words.iter().map(|w| Word { coef: &w.coef * s, factors: w.factors.clone() }).collect();
        Expr { words, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ctx.int(-1))
    }

    pub fn sub(&self, o: &Expr<'a>) -> Self {
        self.add(&o.neg())
    }

    /// Parity of a homogeneous expression; `Some(0)` when empty.
    pub fn parity(&self) -> Result<u8, String> {
        let mut p: Option<u8> = None;
        for w in &self.words {
            let wp = w.parity().ok_or("word with a factor of mixed parity")?;
            match p {
                None => p = Some(wp),
                Some(x) if x != wp => return Err("inhomogeneous expression".into()),
                _ => {}
            }
        }
        Ok(p.unwrap_or(0))
    }

    /// `[a, b]_s = a b - (-1)^{p(a)p(b)} s b a`.
    pub fn comm(&self, o: &Expr<'a>, s: &Scalar) -> Result<Self, String> {
        let (pa, pb) = (self.parity()?, o.parity()?);
        let sign = if pa * pb == 1 { -1 } else { 1 };
        Ok(self.mul(o).sub(&o.mul(self).scale(&s.scale_int(sign))))
    }
}

/// An identity `expr = 0` with a label.
#[derive(Clone, Debug)]
pub struct Identity<'a> {
    pub label: String,
    pub expr: Expr<'a>,
}

impl<'a> Identity<'a> {
    pub fn new(label: impl Into<String>, lhs: Expr<'a>, rhs: Expr<'a>) -> Self {
        Identity { label: label.into(), expr: lhs.sub(&rhs) }
    }

    pub fn zero(label: impl Into<String>, lhs: Expr<'a>) -> Self {
        Identity { label: label.into(), expr: lhs }
    }

    /// Largest word depth; this is the headroom the check needs.
    pub fn depth(&self) -> u32 {
        self.expr.words.iter().filter(|w| !w.structural_zero()).map(|w| w.depth()).max().unwrap_or(0)
    }

    /// Checks the identity on every admissible column of `space`.
    pub fn check(&self, space: &Arc<FockSpace>) -> CheckOutcome {
        self.check_filtered(space, &|_| true)
    }

    /// Checks only on the basis states accepted by `keep` (columns and rows).
    pub fn check_filtered(&self, space: &Arc<FockSpace>, keep: &dyn Fn(usize) -> bool) -> CheckOutcome {
        let headroom = self.depth();
        let cols: Vec<usize> = match space.admissible_block(headroom) {
            Ok(c) => c.into_iter().filter(|j| keep(*j)).collect(),
            Err(e) => return CheckOutcome::error(&self.label, headroom, e.to_string()),
        };
        let words: Vec<&Word> = self.expr.words.iter().filter(|w| !w.structural_zero()).collect();
        let ctx = space.ctx();
        for &j in &cols {
            let e: SparseVec = BTreeMap::from([(j as u32, ctx.one())]);
            let mut total: SparseVec = BTreeMap::new();
            let mut scale = 0f64;
            for w in &words {
                for (i, v) in w.apply(&e) {
                    scale = scale.max(v.magnitude());
                    match total.get_mut(&i) {
                        Some(acc) => *acc = &*acc + &v,
                        None => {
                            total.insert(i, v);
                        }
                    }
                }
            }
            total.retain(|i, _| keep(*i as usize));
            let bad = if ctx.is_exact() {
                total.iter().find(|(_, v)| !v.is_zero())
            } else {
                let tol = FLOAT_TOL * scale.max(1.0);
                total.iter().find(|(_, v)| v.magnitude() > tol)
            };
            if let Some((i, v)) = bad {
                return CheckOutcome::fail(
                    &self.label,
                    headroom,
                    cols.len(),
                    Failure { identity: self.label.clone(), row: *i as usize, col: j, residual: v.to_string() },
                );
            }
        }
        CheckOutcome::pass(&self.label, headroom, cols.len())
    }
}

/// Inverse of a diagonal operator with monomial entries.
pub fn diag_inverse(op: &FockOperator) -> Result<FockOperator, String> {
    if op.parity() != Parity::Even || op.shift() != Some((0, 0)) {
        return Err("not a diagonal operator".into());
    }
    if op.nnz() != op.space().dim() {
        return Err("singular diagonal operator".into());
    }
    op.try_map_entries(|i, j, v| {
        if i != j {
            return Err("off-diagonal entry".to_string());
        }
        v.inverse_monomial().map_err(|e| e.to_string())
    })
}
