//! Oscillator providers: the `c`, `c†`, `n` attached to abstract mode labels
//! `(i,a)`, after any reductions or automorphisms.
//!
//! Builders only ever see a provider, so a reduction is a provider that
//! returns zero for the removed labels and an automorphism is a provider
//! transformer.

use crate::fock::{FockOperator, FockSpace, LinearForm, Parity};
use crate::scalar::{Scalar, Weight};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct OscTriple {
    pub c: FockOperator,
    pub cd: FockOperator,
    pub n: LinearForm,
}

#[derive(Clone, Debug)]
pub struct Osc {
    space: Arc<FockSpace>,
    map: BTreeMap<(usize, usize), OscTriple>,
    zero: FockOperator,
    zero_form: LinearForm,
}

impl Osc {
    /// The plain oscillators of every mode of the space.
    pub fn standard(space: &Arc<FockSpace>) -> Osc {
        let mut map = BTreeMap::new();
        for (k, m) in space.modes().iter().enumerate() {
            let c = FockOperator::annihilator(space, (m.i, m.a)).unwrap();
            let cd = FockOperator::creator(space, (m.i, m.a)).unwrap();
            map.insert((m.i, m.a), OscTriple { c, cd, n: LinearForm::mode(space.modes().len(), k) });
        }
        Osc::from_map(space, map)
    }

    fn from_map(space: &Arc<FockSpace>, map: BTreeMap<(usize, usize), OscTriple>) -> Osc {
        Osc {
            space: space.clone(),
            map,
            zero: FockOperator::zero_with_parity(space, Parity::Even),
            zero_form: LinearForm::zero(space.modes().len()),
        }
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.map.keys().copied().collect()
    }

    pub fn has(&self, i: usize, a: usize) -> bool {
        self.map.contains_key(&(i, a))
    }

    pub fn c(&self, i: usize, a: usize) -> &FockOperator {
        self.map.get(&(i, a)).map(|t| &t.c).unwrap_or(&self.zero)
    }

    pub fn cd(&self, i: usize, a: usize) -> &FockOperator {
        self.map.get(&(i, a)).map(|t| &t.cd).unwrap_or(&self.zero)
    }

    pub fn n(&self, i: usize, a: usize) -> &LinearForm {
        self.map.get(&(i, a)).map(|t| &t.n).unwrap_or(&self.zero_form)
    }

    /// `n_{i,[lo,hi]}`.
    pub fn nr(&self, i: usize, lo: usize, hi: usize) -> LinearForm {
        (lo..=hi).fold(self.zero_form.clone(), |acc, a| acc.add(self.n(i, a)))
    }

    /// `n_{[lo,hi],a}`.
    pub fn nc(&self, lo: usize, hi: usize, a: usize) -> LinearForm {
        (lo..=hi).fold(self.zero_form.clone(), |acc, i| acc.add(self.n(i, a)))
    }

    /// `n_{i,S}`.
    pub fn nr_set(&self, i: usize, set: &[usize]) -> LinearForm {
        set.iter().fold(self.zero_form.clone(), |acc, a| acc.add(self.n(i, *a)))
    }

    /// `n_{S,a}`.
    pub fn nc_set(&self, set: &[usize], a: usize) -> LinearForm {
        set.iter().fold(self.zero_form.clone(), |acc, i| acc.add(self.n(*i, a)))
    }

    pub fn form(&self, w: Weight) -> LinearForm {
        self.zero_form.plus(w)
    }

    pub fn int(&self, c: i64) -> LinearForm {
        self.form(Weight::int(c))
    }

    pub fn zero_op(&self) -> FockOperator {
        self.zero.clone()
    }

    /// `q^{form}`.
    pub fn q(&self, f: &LinearForm) -> FockOperator {
        FockOperator::qpow(&self.space, f)
    }

    /// `[form]_q`.
    pub fn qb(&self, f: &LinearForm) -> FockOperator {
        FockOperator::qbracket(&self.space, f)
    }

    /// Diagonal operator with the value of the form.
    pub fn val(&self, f: &LinearForm) -> FockOperator {
        FockOperator::form_value(&self.space, f)
    }

    pub fn ctx(&self) -> &crate::scalar::ScalarCtx {
        self.space.ctx()
    }

    pub fn s(&self, k: i64) -> Scalar {
        self.ctx().int(k)
    }

    /// Keeps only labels accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize, usize) -> bool) -> Osc {
        let map = self.map.iter().filter(|(k, _)| keep(k.0, k.1)).map(|(k, v)| (*k, v.clone())).collect();
        Osc::from_map(&self.space, map)
    }

    /// Drops only the annihilators of the labels matched by `drop_c`.
    pub fn without_annihilators(&self, drop_c: impl Fn(usize, usize) -> bool) -> Osc {
        self.transform(|(i, a), t| {
            if drop_c(i, a) {
                OscTriple { c: FockOperator::zero_with_parity(&t.c.space().clone(), t.c.parity()), cd: t.cd.clone(), n: t.n.clone() }
            } else {
                t.clone()
            }
        })
    }

    /// Applies `f` to every triple.
    pub fn transform(&self, f: impl Fn((usize, usize), &OscTriple) -> OscTriple) -> Osc {
        let map = self.map.iter().map(|(k, v)| (*k, f(*k, v))).collect();
        Osc::from_map(&self.space, map)
    }

    /// New labels: the triple formerly at `(i,a)` is found at `f(i,a)`.
    pub fn relabel(&self, f: impl Fn(usize, usize) -> (usize, usize)) -> Osc {
        let map = self.map.iter().map(|(k, v)| (f(k.0, k.1), v.clone())).collect();
        Osc::from_map(&self.space, map)
    }

    /// Rescales `c ↦ α c`, `c† ↦ α^-1 c†` for labels matched by `which`.
    pub fn rescale(&self, which: impl Fn(usize, usize) -> Option<Scalar>) -> Osc {
        self.transform(|(i, a), t| match which(i, a) {
            Some(alpha) => {
                let inv = alpha.inverse_monomial().expect("rescaling must be an invertible monomial");
                OscTriple { c: t.c.scale(&alpha), cd: t.cd.scale(&inv), n: t.n.clone() }
            }
            None => t.clone(),
        })
    }
}

/// Product of a list of operators, left to right.
pub fn prod(ops: &[&FockOperator]) -> FockOperator {
    let mut it = ops.iter();
    let first = (*it.next().expect("empty product")).clone();
    it.fold(first, |acc, x| &acc * x)
}

/// Sum of operators; `zero` when empty.
pub fn sum(zero: &FockOperator, ops: impl IntoIterator<Item = FockOperator>) -> FockOperator {
    ops.into_iter().fold(zero.clone(), |acc, x| &acc + &x)
}
