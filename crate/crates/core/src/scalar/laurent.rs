//! Multivariate Laurent polynomials with rational coefficients.

use super::rat::Rat;
use super::{Exps, NVARS};
use std::collections::BTreeMap;

/// Sorted, zero-free list of terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Laurent {
    terms: Vec<(Exps, Rat)>,
}

pub const ZERO_EXPS: Exps = [0; NVARS];

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { terms: Vec::new() }
    }

    pub fn constant(c: Rat) -> Laurent {
        Laurent::monomial(c, ZERO_EXPS)
    }

    pub fn monomial(c: Rat, e: Exps) -> Laurent {
        if c.is_zero() {
            Laurent::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(mut raw: Vec<(Exps, Rat)>) -> Laurent {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Exps, Rat)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Laurent { terms }
    }

    pub fn terms(&self) -> &[(Exps, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect() }
    }

    pub fn shift(&self, by: &Exps) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (add_exps(e, by), c.clone())).collect() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        if o.terms.len() == 1 {
            let (e, c) = &o.terms[0];
            return Laurent { terms: self.terms.iter().map(|(x, y)| (add_exps(x, e), y.mul(c))).collect() };
        }
        if self.terms.len() == 1 {
            return o.mul(self);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                raw.push((add_exps(ea, eb), ca.mul(cb)));
            }
        }
        Laurent::from_terms(raw)
    }

    /// Exact division by `q^2 - 1`, if possible.
    pub fn div_q2_minus_1(&self) -> Option<Laurent> {
        let mut groups: BTreeMap<[i16; NVARS - 1], BTreeMap<i16, Rat>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = [0i16; NVARS - 1];
            rest.copy_from_slice(&e[1..]);
            groups.entry(rest).or_default().insert(e[0], c.clone());
        }
        let mut out = Vec::new();
        for (rest, coeffs) in groups {
            let lo = *coeffs.keys().next().unwrap();
            let hi = *coeffs.keys().next_back().unwrap();
            if hi - lo < 2 {
                return None;
            }
            let get = |k: i16| coeffs.get(&k).cloned().unwrap_or_else(Rat::zero);
            // b_{k-2} = a_k + b_k, top-down
            let mut b: BTreeMap<i16, Rat> = BTreeMap::new();
            let mut k = hi;
            while k >= lo + 2 {
                let bk = b.get(&k).cloned().unwrap_or_else(Rat::zero);
                b.insert(k - 2, get(k).add(&bk));
                k -= 1;
            }
            for k in [lo, lo + 1] {
                let bk = b.get(&k).cloned().unwrap_or_else(Rat::zero);
                if !get(k).add(&bk).is_zero() {
                    return None;
                }
            }
            for (qe, c) in b {
                if !c.is_zero() {
                    let mut e = [0i16; NVARS];
                    e[0] = qe;
                    e[1..].copy_from_slice(&rest);
                    out.push((e, c));
                }
            }
        }
        Some(Laurent::from_terms(out))
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: usize, k: i16) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == k)
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[var] = 0;
                    (e2, c.clone())
                })
                .collect::<Vec<_>>(),
        }
        .resorted()
    }

    fn resorted(mut self) -> Laurent {
        self.terms.sort_by(|a, b| a.0.cmp(&b.0));
        self
    }

    /// Smallest and largest exponent of `var` among the terms.
    pub fn exponent_range(&self, var: usize) -> Option<(i16, i16)> {
        let mut it = self.terms.iter().map(|(e, _)| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }
}

pub fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut out = *a;
    for k in 0..NVARS {
        out[k] += b[k];
    }
    out
}
