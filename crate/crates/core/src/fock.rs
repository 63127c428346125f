//! Truncated graded Fock spaces and sparse operators on them.
//!
//! Basis states are occupation tuples in mixed-radix little-endian order
//! over the mode list; the vacuum is index 0. Creators and annihilators pick
//! up the Koszul sign `(-1)^{p(mode) * sum_{earlier modes} n p}`, which for
//! the lexicographic mode order is the closed-form sign of the standard
//! basis `prod c†^n |0>`.
//!
//! Each operator carries the interval of bosonic-occupation changes of its
//! terms and an exactness depth `d`: its matrix agrees with the untruncated
//! operator (followed by projection) on every column whose bosonic
//! occupation is at most `D - d`.

use crate::grading::GradingProfile;
use crate::scalar::{Scalar, ScalarCtx, Weight};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("mode ({0},{1}) is not in the mode set")]
    UnknownMode(usize, usize),
    #[error("mode ({0},{1}) listed twice")]
    DuplicateMode(usize, usize),
    #[error("operators live on different Fock spaces")]
    SpaceMismatch,
    #[error("graded commutator needs homogeneous operators")]
    Inhomogeneous,
    #[error("headroom {needed} exceeds the bosonic cutoff {cutoff}")]
    Headroom { needed: u32, cutoff: u32 },
    #[error("Fock space dimension {0} is too large")]
    TooLarge(usize),
}

/// How annihilators act: q-numbers or plain integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Trig,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub i: usize,
    pub a: usize,
    pub parity: u8,
    pub cap: u32,
}

impl Mode {
    pub fn fermionic(&self) -> bool {
        self.parity == 1
    }
}

const MAX_DIM: usize = 1 << 20;
static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct FockSpace {
    id: u64,
    grading: GradingProfile,
    modes: Vec<Mode>,
    cutoff: u32,
    semantics: Semantics,
    ctx: ScalarCtx,
    strides: Vec<usize>,
    dim: usize,
    parity: Vec<u8>,
    bos_occ: Vec<u32>,
}

impl fmt::Debug for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("grading", &self.grading.bit_string())
            .field("modes", &self.modes.iter().map(|m| (m.i, m.a)).collect::<Vec<_>>())
            .field("cutoff", &self.cutoff)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Modes `(i,a)`, `i<a`, in lexicographic order, filtered by `keep`.
pub fn upper_modes(k: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=k {
        for a in i + 1..=k {
            if keep(i, a) {
                out.push((i, a));
            }
        }
    }
    out
}

impl FockSpace {
    pub fn new(
        grading: &GradingProfile,
        modes: &[(usize, usize)],
        cutoff: u32,
        semantics: Semantics,
        ctx: ScalarCtx,
    ) -> Result<Arc<FockSpace>, FockError> {
        let mut list: Vec<Mode> = Vec::new();
        for &(i, a) in modes {
            if list.iter().any(|m| m.i == i && m.a == a) {
                return Err(FockError::DuplicateMode(i, a));
            }
            if i == 0 || a == 0 || i > grading.k() || a > grading.k() || i == a {
                return Err(FockError::UnknownMode(i, a));
            }
            let parity = grading.pair_parity(i, a);
            list.push(Mode { i, a, parity, cap: if parity == 1 { 1 } else { cutoff } });
        }
        let mut strides = Vec::with_capacity(list.len());
        let mut dim: usize = 1;
        for m in &list {
            strides.push(dim);
            dim = dim.checked_mul(m.cap as usize + 1).filter(|d| *d <= MAX_DIM).ok_or(FockError::TooLarge(usize::MAX))?;
        }
        let mut parity = vec![0u8; dim];
        let mut bos_occ = vec![0u32; dim];
        for s in 0..dim {
            let mut p = 0u32;
            let mut b = 0u32;
            for (k, m) in list.iter().enumerate() {
                let n = ((s / strides[k]) % (m.cap as usize + 1)) as u32;
                p += n * m.parity as u32;
                if !m.fermionic() {
                    b += n;
                }
            }
            parity[s] = (p % 2) as u8;
            bos_occ[s] = b;
        }
        Ok(Arc::new(FockSpace {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            grading: grading.clone(),
            modes: list,
            cutoff,
            semantics,
            ctx,
            strides,
            dim,
            parity,
            bos_occ,
        }))
    }

    /// Space on all modes `(i,a)` with `i<a`.
    pub fn verma(grading: &GradingProfile, cutoff: u32, semantics: Semantics, ctx: ScalarCtx) -> Result<Arc<FockSpace>, FockError> {
        FockSpace::new(grading, &upper_modes(grading.k(), |_, _| true), cutoff, semantics, ctx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &GradingProfile {
        &self.grading
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn ctx(&self) -> &ScalarCtx {
        &self.ctx
    }

    pub fn mode_index(&self, i: usize, a: usize) -> Option<usize> {
        self.modes.iter().position(|m| m.i == i && m.a == a)
    }

    pub fn occupation(&self, state: usize, mode: usize) -> u32 {
        ((state / self.strides[mode]) % (self.modes[mode].cap as usize + 1)) as u32
    }

    pub fn occupations(&self, state: usize) -> Vec<u32> {
        (0..self.modes.len()).map(|k| self.occupation(state, k)).collect()
    }

    pub fn state_index(&self, occ: &[u32]) -> Option<usize> {
        if occ.len() != self.modes.len() {
            return None;
        }
        let mut s = 0;
        for (k, n) in occ.iter().enumerate() {
            if *n > self.modes[k].cap {
                return None;
            }
            s += *n as usize * self.strides[k];
        }
        Some(s)
    }

    pub fn state_parity(&self, state: usize) -> u8 {
        self.parity[state]
    }

    pub fn bosonic_occupation(&self, state: usize) -> u32 {
        self.bos_occ[state]
    }

    /// Columns on which identities of the given depth are exact.
    pub fn admissible_block(&self, headroom: u32) -> Result<Vec<usize>, FockError> {
        if headroom > self.cutoff {
            return Err(FockError::Headroom { needed: headroom, cutoff: self.cutoff });
        }
        Ok((0..self.dim).filter(|s| self.bos_occ[*s] + headroom <= self.cutoff).collect())
    }

    fn koszul(&self, state: usize, mode: usize) -> bool {
        if self.modes[mode].parity == 0 {
            return false;
        }
        let mut p = 0u32;
        for l in 0..mode {
            p += self.occupation(state, l) * self.modes[l].parity as u32;
        }
        p % 2 == 1
    }

    pub fn same(&self, o: &FockSpace) -> bool {
        self.id == o.id
    }
}

/// `constant + sum_k coeffs[k] n_k` over the modes of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub constant: Weight,
    pub coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn zero(nmodes: usize) -> LinearForm {
        LinearForm { constant: Weight::ZERO, coeffs: vec![0; nmodes] }
    }

    pub fn constant(nmodes: usize, w: Weight) -> LinearForm {
        LinearForm { constant: w, coeffs: vec![0; nmodes] }
    }

    pub fn mode(nmodes: usize, k: usize) -> LinearForm {
        let mut f = LinearForm::zero(nmodes);
        f.coeffs[k] = 1;
        f
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        LinearForm {
            constant: self.constant + o.constant,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> LinearForm {
        LinearForm { constant: self.constant.scale(k), coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn plus(&self, w: Weight) -> LinearForm {
        LinearForm { constant: self.constant + w, coeffs: self.coeffs.clone() }
    }

    pub fn plus_int(&self, c: i64) -> LinearForm {
        self.plus(Weight::int(c))
    }

    pub fn value(&self, space: &FockSpace, state: usize) -> Weight {
        let mut c = self.constant.c;
        for (k, a) in self.coeffs.iter().enumerate() {
            if *a != 0 {
                c += a * space.occupation(state, k) as i64;
            }
        }
        Weight { c, m: self.constant.m }
    }

    /// Drops the `m`-part of the constant.
    pub fn without_m(&self) -> LinearForm {
        LinearForm { constant: Weight::int(self.constant.c), coeffs: self.coeffs.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> Option<u8> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }

    fn times(self, o: Parity) -> Parity {
        match (self.bit(), o.bit()) {
            (Some(a), Some(b)) => Parity::of_bit(a + b),
            _ => Parity::Mixed,
        }
    }
}

pub type SparseVec = BTreeMap<u32, Scalar>;

/// Sparse column-major operator with parity and truncation metadata.
#[derive(Clone)]
pub struct FockOperator {
    space: Arc<FockSpace>,
    cols: Vec<Vec<(u32, Scalar)>>,
    parity: Parity,
    /// Interval of bosonic occupation change; `None` for the structural zero.
    shift: Option<(i32, i32)>,
    depth: u32,
}

impl fmt::Debug for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockOperator(parity={:?}, shift={:?}, depth={}, nnz={})", self.parity, self.shift, self.depth, self.nnz())
    }
}

impl FockOperator {
    fn from_cols(space: &Arc<FockSpace>, cols: Vec<Vec<(u32, Scalar)>>, parity: Parity, shift: Option<(i32, i32)>, depth: u32) -> Self {
        FockOperator { space: space.clone(), cols, parity, shift, depth }
    }

    fn diagonal(space: &Arc<FockSpace>, f: impl Fn(usize) -> Scalar) -> Self {
        let cols = (0..space.dim)
            .map(|s| {
                let v = f(s);
                if v.is_zero() {
                    vec![]
                } else {
                    vec![(s as u32, v)]
                }
            })
            .collect();
        FockOperator::from_cols(space, cols, Parity::Even, Some((0, 0)), 0)
    }

    /// The structural zero of a given parity.
    pub fn zero_with_parity(space: &Arc<FockSpace>, parity: Parity) -> Self {
        FockOperator::from_cols(space, vec![Vec::new(); space.dim], parity, None, 0)
    }

    pub fn zero(space: &Arc<FockSpace>) -> Self {
        FockOperator::zero_with_parity(space, Parity::Even)
    }

    pub fn identity(space: &Arc<FockSpace>) -> Self {
        let one = space.ctx.one();
        FockOperator::diagonal(space, |_| one.clone())
    }

    pub fn scalar(space: &Arc<FockSpace>, s: &Scalar) -> Self {
        if s.is_zero() {
            return FockOperator::zero(space);
        }
        FockOperator::diagonal(space, |_| s.clone())
    }

    fn mode_idx(space: &FockSpace, mode: (usize, usize)) -> Result<usize, FockError> {
        space.mode_index(mode.0, mode.1).ok_or(FockError::UnknownMode(mode.0, mode.1))
    }

    pub fn creator(space: &Arc<FockSpace>, mode: (usize, usize)) -> Result<Self, FockError> {
        let k = Self::mode_idx(space, mode)?;
        let m = space.modes[k];
        let ctx = &space.ctx;
        let cols = (0..space.dim)
            .map(|s| {
                let n = space.occupation(s, k);
                if n >= m.cap {
                    return vec![];
                }
                let v = if space.koszul(s, k) { ctx.int(-1) } else { ctx.one() };
                vec![((s + space.strides[k]) as u32, v)]
            })
            .collect();
        let up = if m.fermionic() { 0 } else { 1 };
        Ok(FockOperator::from_cols(space, cols, Parity::of_bit(m.parity), Some((up, up)), 0))
    }

    pub fn annihilator(space: &Arc<FockSpace>, mode: (usize, usize)) -> Result<Self, FockError> {
        let k = Self::mode_idx(space, mode)?;
        let m = space.modes[k];
        let ctx = &space.ctx;
        let cols = (0..space.dim)
            .map(|s| {
                let n = space.occupation(s, k) as i64;
                if n == 0 {
                    return vec![];
                }
                let sign = if m.fermionic() { -1 } else { 1 };
                let x = 1 + sign * (n - 1);
                let amp = match space.semantics {
                    Semantics::Trig => ctx.qbracket(x),
                    Semantics::Rational => ctx.int(x),
                };
                let v = if space.koszul(s, k) { -&amp } else { amp };
                vec![((s - space.strides[k]) as u32, v)]
            })
            .collect();
        let down = if m.fermionic() { 0 } else { -1 };
        Ok(FockOperator::from_cols(space, cols, Parity::of_bit(m.parity), Some((down, down)), 0))
    }

    pub fn number(space: &Arc<FockSpace>, mode: (usize, usize)) -> Result<Self, FockError> {
        let k = Self::mode_idx(space, mode)?;
        Ok(FockOperator::form_value(space, &LinearForm::mode(space.modes.len(), k)))
    }

    /// Diagonal operator with entries equal to the value of the form.
    pub fn form_value(space: &Arc<FockSpace>, f: &LinearForm) -> Self {
        let ctx = &space.ctx;
        FockOperator::diagonal(space, |s| ctx.weight_value(f.value(space, s)))
    }

    /// `q^{form}`.
    pub fn qpow(space: &Arc<FockSpace>, f: &LinearForm) -> Self {
        let ctx = &space.ctx;
        FockOperator::diagonal(space, |s| ctx.qpow_weight(f.value(space, s)))
    }

    /// `[form]_q`.
    pub fn qbracket(space: &Arc<FockSpace>, f: &LinearForm) -> Self {
        let ctx = &space.ctx;
        FockOperator::diagonal(space, |s| ctx.qbracket_weight(f.value(space, s)))
    }

    /// `q^{const + sum coeffs[m] n_m}`.
    pub fn diagonal_qpower(space: &Arc<FockSpace>, coeffs: &[((usize, usize), i64)], const_exponent: i64) -> Result<Self, FockError> {
        let mut f = LinearForm::constant(space.modes.len(), Weight::int(const_exponent));
        for (mode, c) in coeffs {
            let k = Self::mode_idx(space, *mode)?;
            f.coeffs[k] += c;
        }
        Ok(FockOperator::qpow(space, &f))
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn shift(&self) -> Option<(i32, i32)> {
        self.shift
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn is_structural_zero(&self) -> bool {
        self.shift.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn col(&self, j: usize) -> &[(u32, Scalar)] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r as usize == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| self.space.ctx.zero())
    }

    /// Declared upper bound on the bosonic occupation raise.
    pub fn raising_bound(&self) -> i32 {
        self.shift.map(|(_, hi)| hi.max(0)).unwrap_or(0)
    }

    /// Raise actually attained by the stored entries.
    pub fn recomputed_raise(&self) -> i32 {
        let sp = &self.space;
        let mut r = 0i32;
        for (j, col) in self.cols.iter().enumerate() {
            for (i, _) in col {
                r = r.max(sp.bos_occ[*i as usize] as i32 - sp.bos_occ[j] as i32);
            }
        }
        r
    }

    /// Checks that every entry connects states of the declared parity.
    pub fn parity_consistent(&self) -> bool {
        let Some(p) = self.parity.bit() else { return true };
        self.cols.iter().enumerate().all(|(j, col)| {
            col.iter().all(|(i, _)| (self.space.parity[*i as usize] + self.space.parity[j]) % 2 == p)
        })
    }

    fn check_space(&self, o: &FockOperator) -> Result<(), FockError> {
        if self.space.same(&o.space) {
            Ok(())
        } else {
            Err(FockError::SpaceMismatch)
        }
    }

    /// Relabels the declared parity (used for families whose zero entries
    /// should carry the parity of their index pair).
    pub fn with_parity(mut self, p: Parity) -> Self {
        self.parity = p;
        self
    }

    pub fn try_add(&self, o: &FockOperator) -> Result<FockOperator, FockError> {
        self.check_space(o)?;
        if o.is_structural_zero() {
            return Ok(self.clone());
        }
        if self.is_structural_zero() {
            return Ok(o.clone());
        }
        let cols = self.cols.iter().zip(&o.cols).map(|(a, b)| merge_cols(a, b)).collect();
        let parity = if self.parity == o.parity { self.parity } else { Parity::Mixed };
        let (a, b) = (self.shift.unwrap(), o.shift.unwrap());
        let shift = Some((a.0.min(b.0), a.1.max(b.1)));
        Ok(FockOperator::from_cols(&self.space, cols, parity, shift, self.depth.max(o.depth)))
    }

    pub fn neg(&self) -> FockOperator {
        let cols = self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, -v)).collect()).collect();
        FockOperator::from_cols(&self.space, cols, self.parity, self.shift, self.depth)
    }

    pub fn try_sub(&self, o: &FockOperator) -> Result<FockOperator, FockError> {
        self.try_add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> FockOperator {
        if s.is_zero() {
            return FockOperator::zero_with_parity(&self.space, self.parity);
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, v * s)).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        FockOperator::from_cols(&self.space, cols, self.parity, self.shift, self.depth)
    }

    pub fn scale_int(&self, k: i64) -> FockOperator {
        self.scale(&self.space.ctx.int(k))
    }

    pub fn try_mul(&self, o: &FockOperator) -> Result<FockOperator, FockError> {
        self.check_space(o)?;
        let parity = self.parity.times(o.parity);
        let (Some(sa), Some(sb)) = (self.shift, o.shift) else {
            return Ok(FockOperator::zero_with_parity(&self.space, parity));
        };
        let dim = self.space.dim;
        let mut scratch: Vec<Option<Scalar>> = vec![None; dim];
        let mut touched: Vec<u32> = Vec::new();
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            for (k, b) in &o.cols[j] {
                for (i, a) in &self.cols[*k as usize] {
                    let p = a * b;
                    let slot = &mut scratch[*i as usize];
                    match slot {
                        Some(acc) => *acc = &*acc + &p,
                        None => {
                            *slot = Some(p);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut col = Vec::with_capacity(touched.len());
            for i in touched.drain(..) {
                let v = scratch[i as usize].take().unwrap();
                if !v.is_zero() {
                    col.push((i, v));
                }
            }
            cols.push(col);
        }
        let shift = Some((sa.0 + sb.0, sa.1 + sb.1));
        let depth = product_depth(self.depth, o.depth, sb.1);
        Ok(FockOperator::from_cols(&self.space, cols, parity, shift, depth))
    }

    /// `a b - (-1)^{p(a)p(b)} qfactor b a`.
    pub fn graded_commutator(&self, o: &FockOperator, qfactor: &Scalar) -> Result<FockOperator, FockError> {
        self.check_space(o)?;
        if self.is_structural_zero() || o.is_structural_zero() {
            return Ok(FockOperator::zero_with_parity(&self.space, self.parity.times(o.parity)));
        }
        let (Some(pa), Some(pb)) = (self.parity.bit(), o.parity.bit()) else {
            return Err(FockError::Inhomogeneous);
        };
        let ab = self.try_mul(o)?;
        let ba = o.try_mul(self)?;
        let sign = if pa * pb == 1 { -1 } else { 1 };
        ab.try_sub(&ba.scale(&qfactor.scale_int(sign)))
    }

    /// Applies the operator to a sparse vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = BTreeMap::new();
        for (k, x) in v {
            for (i, a) in &self.cols[*k as usize] {
                let p = a * x;
                match out.get_mut(i) {
                    Some(acc) => *acc = &*acc + &p,
                    None => {
                        out.insert(*i, p);
                    }
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Applies a function to every entry (used by limits and backend moves).
    pub fn try_map_entries<E>(&self, mut f: impl FnMut(usize, usize, &Scalar) -> Result<Scalar, E>) -> Result<FockOperator, E> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            let mut c = Vec::with_capacity(col.len());
            for (i, v) in col {
                let w = f(*i as usize, j, v)?;
                if !w.is_zero() {
                    c.push((*i, w));
                }
            }
            cols.push(c);
        }
        Ok(FockOperator::from_cols(&self.space, cols, self.parity, self.shift, self.depth))
    }

    /// Same matrix on another space with identical mode layout.
    pub fn transplant(&self, space: &Arc<FockSpace>) -> FockOperator {
        assert_eq!(space.dim, self.space.dim);
        FockOperator::from_cols(space, self.cols.clone(), self.parity, self.shift, self.depth)
    }

    /// Entry-wise equality restricted to the given columns.
    pub fn equal_on(&self, o: &FockOperator, cols: &[usize]) -> Option<(usize, usize)> {
        for &j in cols {
            let (a, b) = (&self.cols[j], &o.cols[j]);
            if a != b {
                let mut rows: Vec<u32> = a.iter().chain(b.iter()).map(|(i, _)| *i).collect();
                rows.sort_unstable();
                for i in rows {
                    if self.entry(i as usize, j) != o.entry(i as usize, j) {
                        return Some((i as usize, j));
                    }
                }
            }
        }
        None
    }
}

/// Exactness depth of a product `A B` from the depths of the factors and the
/// upper raise of `B`.
pub fn product_depth(d_a: u32, d_b: u32, hi_b: i32) -> u32 {
    (d_b as i32).max(hi_b + d_a as i32).max(0) as u32
}

fn merge_cols(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            out.push(a[i].clone());
            i += 1;
        } else if a[i].0 > b[j].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let v = &a[i].1 + &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl std::ops::Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, o: &FockOperator) -> FockOperator {
        self.try_add(o).expect("operator add")
    }
}

impl std::ops::Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, o: &FockOperator) -> FockOperator {
        self.try_sub(o).expect("operator sub")
    }
}

impl std::ops::Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, o: &FockOperator) -> FockOperator {
        self.try_mul(o).expect("operator mul")
    }
}

impl std::ops::Neg for &FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        FockOperator::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::enumerate_gradings;
    use proptest::prelude::*;

    fn space(bits: &str, cutoff: u32, sem: Semantics) -> Arc<FockSpace> {
        let g = GradingProfile::parse(bits).unwrap();
        FockSpace::verma(&g, cutoff, sem, ScalarCtx::exact()).unwrap()
    }

    fn vacuum() -> SparseVec {
        BTreeMap::from([(0u32, Scalar::exact_int(1))])
    }

    #[test]
    fn creator_on_vacuum() {
        let f = space("001", 3, Semantics::Trig);
        let c = FockOperator::creator(&f, (1, 2)).unwrap();
        let v = c.apply(&vacuum());
        let target = f.state_index(&[1, 0, 0]).unwrap() as u32;
        assert_eq!(v, BTreeMap::from([(target, Scalar::exact_int(1))]));
    }

    #[test]
    fn annihilator_after_creator_on_vacuum() {
        for bits in ["00", "01", "011"] {
            let f = space(bits, 3, Semantics::Trig);
            for m in f.modes().to_vec() {
                let c = FockOperator::annihilator(&f, (m.i, m.a)).unwrap();
                let cd = FockOperator::creator(&f, (m.i, m.a)).unwrap();
                assert_eq!((&c * &cd).entry(0, 0), Scalar::exact_int(1));
            }
        }
    }

    #[test]
    fn fermionic_creator_squares_to_zero() {
        let f = space("01", 3, Semantics::Trig);
        let cd = FockOperator::creator(&f, (1, 2)).unwrap();
        assert!((&cd * &cd).is_zero());
        let x = cd.graded_commutator(&cd, &Scalar::exact_int(1)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn diagonal_qpower_examples() {
        let f = space("000", 3, Semantics::Trig);
        let id5 = FockOperator::diagonal_qpower(&f, &[], 5).unwrap();
        assert_eq!(id5.entry(7, 7), Scalar::qpow(5));
        let qn = FockOperator::diagonal_qpower(&f, &[((1, 2), 1)], 0).unwrap();
        let s = f.state_index(&[2, 0, 0]).unwrap();
        assert_eq!(qn.entry(s, s), Scalar::qpow(2));
        let q2 = FockOperator::diagonal_qpower(&f, &[((1, 2), -1), ((1, 3), -1)], 0).unwrap();
        let s = f.state_index(&[1, 1, 0]).unwrap();
        assert_eq!(q2.entry(s, s), Scalar::qpow(-2));
    }

    #[test]
    fn commutator_with_number() {
        let f = space("01", 3, Semantics::Trig);
        let n = FockOperator::number(&f, (1, 2)).unwrap();
        let cd = FockOperator::creator(&f, (1, 2)).unwrap();
        let x = n.graded_commutator(&cd, &Scalar::exact_int(1)).unwrap();
        assert!(x.equal_on(&cd, &(0..f.dim()).collect::<Vec<_>>()).is_none());
        let id = FockOperator::identity(&f);
        assert!((&id * &cd).equal_on(&cd, &[0, 1]).is_none());
    }

    #[test]
    fn admissible_block_examples() {
        let g = GradingProfile::parse("00").unwrap();
        let f = FockSpace::verma(&g, 3, Semantics::Trig, ScalarCtx::exact()).unwrap();
        assert_eq!(f.admissible_block(0).unwrap().len(), 4);
        assert_eq!(f.admissible_block(2).unwrap(), vec![0, 1]);
        assert!(f.admissible_block(4).is_err());
        let fer = space("01", 3, Semantics::Trig);
        assert_eq!(fer.admissible_block(3).unwrap().len(), 2);
    }

    #[test]
    fn inhomogeneous_commutator_is_rejected() {
        let f = space("01", 3, Semantics::Trig);
        let cd = FockOperator::creator(&f, (1, 2)).unwrap();
        let mixed = &cd + &FockOperator::identity(&f);
        assert_eq!(mixed.graded_commutator(&cd, &Scalar::exact_int(1)).unwrap_err(), FockError::Inhomogeneous);
        let other = space("01", 3, Semantics::Trig);
        assert_eq!(cd.try_mul(&FockOperator::identity(&other)).unwrap_err(), FockError::SpaceMismatch);
    }

    /// Sign exponent written out per pair of modes, compared with the
    /// running-parity implementation.
    #[test]
    fn koszul_sign_matches_closed_form() {
        for g in enumerate_gradings(4) {
            let f = FockSpace::verma(&g, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
            for s in 0..f.dim() {
                let occ = f.occupations(s);
                for (k, m) in f.modes().iter().enumerate() {
                    let (i, a) = (m.i, m.a);
                    let mut e = 0u32;
                    for (l, md) in f.modes().iter().enumerate() {
                        let (kk, d) = (md.i, md.a);
                        let pm = (g.p(i) + g.p(a)) as u32;
                        if kk < i {
                            e += occ[l] * pm * (g.p(kk) + g.p(d)) as u32;
                        }
                        if kk == i && i < d && d < a {
                            e += occ[l] * pm * (g.p(i) + g.p(d)) as u32;
                        }
                    }
                    assert_eq!(f.koszul(s, k), e % 2 == 1);
                }
            }
        }
    }

    fn qosc_relations_hold(bits: &str, sem: Semantics) {
        let f = space(bits, 4, sem);
        let g = f.grading().clone();
        let ctx = f.ctx().clone();
        let block = f.admissible_block(2).unwrap();
        let one = ctx.one();
        let modes = f.modes().to_vec();
        for m in &modes {
            let (i, a) = (m.i, m.a);
            let c = FockOperator::annihilator(&f, (i, a)).unwrap();
            let cd = FockOperator::creator(&f, (i, a)).unwrap();
            let k = f.mode_index(i, a).unwrap();
            let nf = LinearForm::mode(modes.len(), k);
            let (pi, pa) = (g.s(i), g.s(a));
            match sem {
                Semantics::Trig => {
                    for sgn in [1i64, -1] {
                        let lhs = c.graded_commutator(&cd, &ctx.qpow(sgn * pa)).unwrap();
                        let rhs = FockOperator::qpow(&f, &nf.scale(-sgn * pi));
                        assert!(lhs.equal_on(&rhs, &block).is_none(), "qosc {bits} ({i},{a}) {sgn}");
                    }
                    let ccd = &c * &cd;
                    let rhs = FockOperator::qbracket(&f, &nf.scale(pi * pa).plus_int(1));
                    assert!(ccd.equal_on(&rhs, &block).is_none());
                    let cdc = &cd * &c;
                    assert!(cdc.equal_on(&FockOperator::qbracket(&f, &nf), &block).is_none());
                    let l = &FockOperator::qpow(&f, &nf.scale(pi)) * &c;
                    let r = &FockOperator::qpow(&f, &nf.scale(pa)) * &c;
                    assert!(l.equal_on(&r, &block).is_none());
                    let l = &cd * &FockOperator::qpow(&f, &nf.scale(pi));
                    let r = &cd * &FockOperator::qpow(&f, &nf.scale(pa));
                    assert!(l.equal_on(&r, &block).is_none());
                }
                Semantics::Rational => {
                    let lhs = c.graded_commutator(&cd, &one).unwrap();
                    assert!(lhs.equal_on(&FockOperator::identity(&f), &block).is_none());
                }
            }
            let n = FockOperator::number(&f, (i, a)).unwrap();
            assert!(n.graded_commutator(&c, &one).unwrap().equal_on(&c.neg(), &block).is_none());
            assert!(n.graded_commutator(&cd, &one).unwrap().equal_on(&cd, &block).is_none());
            for m2 in &modes {
                if m2 == m {
                    continue;
                }
                let c2 = FockOperator::annihilator(&f, (m2.i, m2.a)).unwrap();
                let cd2 = FockOperator::creator(&f, (m2.i, m2.a)).unwrap();
                for (x, y) in [(&c, &c2), (&c, &cd2), (&cd, &c2), (&cd, &cd2)] {
                    assert!(x.graded_commutator(y, &one).unwrap().equal_on(&FockOperator::zero(&f), &block).is_none());
                }
            }
        }
    }

    #[test]
    fn qosc_relations_all_small_gradings() {
        for g in enumerate_gradings(3) {
            qosc_relations_hold(&g.bit_string(), Semantics::Trig);
            qosc_relations_hold(&g.bit_string(), Semantics::Rational);
        }
    }

    proptest! {
        #[test]
        fn product_metadata(bits in "[01]{3}", picks in prop::collection::vec((0usize..3, 0usize..3), 1..4)) {
            let f = space(&bits, 3, Semantics::Trig);
            let modes = f.modes().to_vec();
            let ops: Vec<FockOperator> = picks.iter().map(|(m, kind)| {
                let md = modes[*m];
                match kind {
                    0 => FockOperator::creator(&f, (md.i, md.a)).unwrap(),
                    1 => FockOperator::annihilator(&f, (md.i, md.a)).unwrap(),
                    _ => FockOperator::number(&f, (md.i, md.a)).unwrap(),
                }
            }).collect();
            let mut acc = FockOperator::identity(&f);
            let mut bound = 0;
            let mut par = 0u8;
            for op in &ops {
                bound += op.raising_bound();
                par += op.parity().bit().unwrap();
                acc = &acc * op;
            }
            prop_assert!(acc.recomputed_raise() <= bound);
            prop_assert!(acc.recomputed_raise() <= acc.raising_bound());
            prop_assert_eq!(acc.parity(), Parity::of_bit(par));
            prop_assert!(acc.parity_consistent());
        }
    }
}
