//! Builders for generator families `{e_ij}` realized by q-oscillators (and
//! rational oscillators), plus the Chevalley families of the contracted
//! affine algebra.

pub mod automorphisms;
pub mod contracted;
pub mod hp;
pub mod osc;
pub mod rational;
pub mod variants;
pub mod verma;

use crate::fock::{FockError, FockOperator, FockSpace, LinearForm, Parity};
use crate::grading::{GradingProfile, SubsetI};
use crate::scalar::Weight;
use osc::Osc;
use std::sync::Arc;
use thiserror::Error;

pub use contracted::{
    build_chevalley_contracted, build_contracted, build_contracted_mu, closed_form_a1_limit, closed_form_last_limit, contracted_space,
    evaluate_chevalley, rectangular_space,
};
pub use hp::{build_holstein_primakoff, hp_family, hp_space};
pub use rational::{build_rational, build_rational_contracted, contracted_rational_family, large_m_family, large_m_weights, rational_family};
pub use variants::{build_variant_reduced, build_verma_variant, variant_family, Variant};
pub use verma::{build_reduced_a1, build_verma, verma_family};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealizationError {
    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },
    #[error("invalid subset: {0}")]
    BadSubset(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// A complete family `e_ij`, `1 <= i,j <= K`, on one Fock space.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub tag: String,
    pub grading: GradingProfile,
    pub space: Arc<FockSpace>,
    /// Set for contracted families.
    pub contracted: Option<SubsetI>,
    /// Expected vacuum eigenvalues of `e_ii`.
    pub vacuum_weights: Vec<Weight>,
    e: Vec<FockOperator>,
    qdiag: Option<Vec<FockOperator>>,
    qbar: Option<Vec<FockOperator>>,
    cartan: Option<Vec<LinearForm>>,
}

impl GeneratorFamily {
    pub fn k(&self) -> usize {
        self.grading.k()
    }

    pub fn e(&self, i: usize, j: usize) -> &FockOperator {
        &self.e[(i - 1) * self.k() + (j - 1)]
    }

    /// `q^{p_i e_ii}`.
    pub fn qdiag(&self, i: usize) -> Option<&FockOperator> {
        self.qdiag.as_ref().map(|v| &v[i - 1])
    }

    /// `q^{p_i ē_ii}`.
    pub fn qbar(&self, i: usize) -> Option<&FockOperator> {
        self.qbar.as_ref().map(|v| &v[i - 1])
    }

    /// `e_ii` as a linear form in the occupation numbers.
    pub fn cartan(&self, i: usize) -> Option<&LinearForm> {
        self.cartan.as_ref().map(|v| &v[i - 1])
    }

    pub fn has_q_diagonals(&self) -> bool {
        self.qdiag.is_some() && self.qbar.is_some()
    }

    /// Replaces one generator (used by mutation tests).
    pub fn with_e(mut self, i: usize, j: usize, op: FockOperator) -> Self {
        let k = self.k();
        self.e[(i - 1) * k + (j - 1)] = op;
        self
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    /// Applies `f` to every stored operator. Linear forms are dropped.
    pub fn try_map<E>(&self, mut f: impl FnMut(&str, &FockOperator) -> Result<FockOperator, E>) -> Result<GeneratorFamily, E> {
        let k = self.k();
        let mut e = Vec::with_capacity(k * k);
        for i in 1..=k {
            for j in 1..=k {
                e.push(f(&format!("e_{i}{j}"), self.e(i, j))?);
            }
        }
        let mut map_vec = |v: &Option<Vec<FockOperator>>, name: &str| -> Result<Option<Vec<FockOperator>>, E> {
            match v {
                None => Ok(None),
                Some(v) => v.iter().enumerate().map(|(i, op)| f(&format!("{name}_{}", i + 1), op)).collect::<Result<Vec<_>, E>>().map(Some),
            }
        };
        let qdiag = map_vec(&self.qdiag, "q^{p e}")?;
        let qbar = map_vec(&self.qbar, "q^{p ebar}")?;
        Ok(GeneratorFamily {
            tag: self.tag.clone(),
            grading: self.grading.clone(),
            space: self.space.clone(),
            contracted: self.contracted,
            vacuum_weights: self.vacuum_weights.clone(),
            e,
            qdiag,
            qbar,
            cartan: None,
        })
    }

    /// Names and operators of every stored entry, for comparisons.
    pub fn entries(&self) -> Vec<(String, &FockOperator)> {
        let k = self.k();
        let mut out = Vec::new();
        for i in 1..=k {
            for j in 1..=k {
                out.push((format!("e_{i}{j}"), self.e(i, j)));
            }
        }
        if let Some(v) = &self.qdiag {
            out.extend(v.iter().enumerate().map(|(i, op)| (format!("q^(p e_{0}{0})", i + 1), op)));
        }
        if let Some(v) = &self.qbar {
            out.extend(v.iter().enumerate().map(|(i, op)| (format!("q^(p ebar_{0}{0})", i + 1), op)));
        }
        out
    }

    pub fn set_cartan(mut self, forms: Option<Vec<LinearForm>>) -> Self {
        self.cartan = forms;
        self
    }
}

/// Rule for the barred diagonal when finishing a draft.
pub(crate) enum BarRule {
    /// `q^{p_i ē_ii} = q^{-p_i e_ii}` for every `i`.
    Inverse,
    /// Zero on `Ī`, inverse on `I`.
    Contracted(SubsetI),
    /// No q-diagonals (rational families).
    None,
}

/// A family under construction.
pub(crate) struct Draft<'a> {
    pub g: GradingProfile,
    pub osc: &'a Osc,
    e: Vec<Option<FockOperator>>,
    pub cartan: Vec<LinearForm>,
    unit_brackets: bool,
}

impl<'a> Draft<'a> {
    pub fn new(g: &GradingProfile, osc: &'a Osc) -> Self {
        let k = g.k();
        let cartan = vec![osc.int(0); k];
        Draft { g: g.clone(), osc, e: vec![None; k * k], cartan, unit_brackets: false }
    }

    /// Completion brackets with factor 1 (the `q → 1` families).
    pub fn rational(mut self) -> Self {
        self.unit_brackets = true;
        self
    }

    fn k(&self) -> usize {
        self.g.k()
    }

    pub fn set(&mut self, i: usize, j: usize, op: FockOperator) {
        let k = self.k();
        let parity = Parity::of_bit(self.g.pair_parity(i, j));
        let op = if op.is_structural_zero() { op.with_parity(parity) } else { op };
        self.e[(i - 1) * k + (j - 1)] = Some(op);
    }

    pub fn set_zero(&mut self, i: usize, j: usize) {
        let z = self.osc.zero_op();
        self.set(i, j, z);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&FockOperator> {
        self.e[(i - 1) * self.k() + (j - 1)].as_ref()
    }

    pub fn is_set(&self, i: usize, j: usize) -> bool {
        self.get(i, j).is_some()
    }

    /// Sets `e_ii` from a linear form.
    pub fn set_cartan(&mut self, i: usize, f: LinearForm) {
        let op = self.osc.val(&f);
        self.cartan[i - 1] = f;
        self.set(i, i, op);
    }

    fn qc(&self, i: usize, j: usize, s: i64) -> crate::scalar::Scalar {
        let _ = j;
        if self.unit_brackets {
            return self.osc.ctx().one();
        }
        self.osc.ctx().qpow(s * self.g.s(i))
    }

    /// Upper triangle by `e_ij = [e_{i,i+1}, e_{i+1,j}]_{q^{-p_{i+1}}}`.
    pub fn complete_upper(&mut self) -> Result<(), FockError> {
        let k = self.k();
        for width in 2..k {
            for i in 1..=k - width {
                let j = i + width;
                if self.is_set(i, j) {
                    continue;
                }
                let qf = self.qc(i + 1, j, -1);
                let op = self.get(i, i + 1).unwrap().graded_commutator(self.get(i + 1, j).unwrap(), &qf)?;
                self.set(i, j, op);
            }
        }
        Ok(())
    }

    /// Lower triangle by `e_ij = [e_{i,i-1}, e_{i-1,j}]_{q^{p_{i-1}}}`.
    pub fn complete_lower_chain(&mut self) -> Result<(), FockError> {
        let k = self.k();
        for width in 2..k {
            for j in 1..=k - width {
                let i = j + width;
                if self.is_set(i, j) {
                    continue;
                }
                let qf = self.qc(i - 1, j, 1);
                let op = self.get(i, i - 1).unwrap().graded_commutator(self.get(i - 1, j).unwrap(), &qf)?;
                self.set(i, j, op);
            }
        }
        Ok(())
    }

    /// `e_ic = q^{-p_1 e_11 + p_c e_cc} [e_i1, e_1c]` for unset entries of
    /// the rows accepted by `rows`.
    pub fn complete_lower(&mut self, rows: impl Fn(usize) -> bool) -> Result<(), FockError> {
        let k = self.k();
        let one = self.osc.ctx().one();
        for i in 3..=k {
            if !rows(i) {
                continue;
            }
            for c in 2..i {
                if self.is_set(i, c) {
                    continue;
                }
                let form = self.cartan[0].scale(-self.g.s(1)).add(&self.cartan[c - 1].scale(self.g.s(c)));
                let br = self.get(i, 1).unwrap().graded_commutator(self.get(1, c).unwrap(), &one)?;
                let op = &self.osc.q(&form) * &br;
                self.set(i, c, op);
            }
        }
        Ok(())
    }

    pub fn finish(self, tag: &str, bar: BarRule, contracted: Option<SubsetI>, vacuum_weights: Vec<Weight>) -> GeneratorFamily {
        let k = self.k();
        let g = self.g.clone();
        let space = self.osc.space().clone();
        let e: Vec<FockOperator> = self
            .e
            .into_iter()
            .enumerate()
            .map(|(n, op)| op.unwrap_or_else(|| panic!("generator e_{}{} was never set", n / k + 1, n % k + 1)))
            .collect();
        let (qdiag, qbar) = match bar {
            BarRule::None => (None, None),
            _ => {
                let qd: Vec<FockOperator> = (1..=k).map(|i| self.osc.q(&self.cartan[i - 1].scale(g.s(i)))).collect();
                let qb: Vec<FockOperator> = (1..=k)
                    .map(|i| match &bar {
                        BarRule::Contracted(s) if s.in_ibar(i) => self.osc.zero_op(),
                        _ => self.osc.q(&self.cartan[i - 1].scale(-g.s(i))),
                    })
                    .collect();
                (Some(qd), Some(qb))
            }
        };
        GeneratorFamily {
            tag: tag.to_string(),
            grading: g,
            space,
            contracted,
            vacuum_weights,
            e,
            qdiag,
            qbar,
            cartan: Some(self.cartan),
        }
    }
}

/// Chevalley generators `e_i, f_i, k_i`, `1 <= i <= K`, with `e_K`, `f_K`
/// the affine pair.
#[derive(Clone, Debug)]
pub struct ChevalleyFamily {
    pub grading: GradingProfile,
    pub space: Arc<FockSpace>,
    pub subset: Option<SubsetI>,
    pub e: Vec<FockOperator>,
    pub f: Vec<FockOperator>,
    pub k_forms: Vec<LinearForm>,
}

impl ChevalleyFamily {
    pub fn e(&self, i: usize) -> &FockOperator {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &FockOperator {
        &self.f[i - 1]
    }

    pub fn k_op(&self, i: usize) -> FockOperator {
        FockOperator::form_value(&self.space, &self.k_forms[i - 1])
    }

    /// `h_i = p_i k_i - p_{i+1} k_{i+1}`, indices mod `K`.
    pub fn h_form(&self, i: usize) -> LinearForm {
        let kk = self.grading.k();
        let j = i % kk + 1;
        self.k_forms[i - 1].scale(self.grading.s(i)).sub(&self.k_forms[j - 1].scale(self.grading.s(j)))
    }
}

/// Checks a weight vector's length.
pub(crate) fn check_len(expected: usize, got: usize) -> Result<(), RealizationError> {
    if expected != got {
        return Err(RealizationError::WeightLength { expected, got });
    }
    Ok(())
}
