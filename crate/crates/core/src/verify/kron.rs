//! Graded tensor products of small super-matrices.
//!
//! `(A ⊗ B)(v ⊗ w) = (-1)^{p(B) p(v)} A v ⊗ B w` for homogeneous `B`.

use crate::scalar::{Scalar, ScalarCtx};
use std::collections::BTreeMap;

/// Square matrix on a super vector space with basis parities `grading`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix {
    pub grading: Vec<u8>,
    pub entries: BTreeMap<(usize, usize), Scalar>,
}

impl SuperMatrix {
    pub fn zero(grading: &[u8]) -> Self {
        SuperMatrix { grading: grading.to_vec(), entries: BTreeMap::new() }
    }

    /// Elementary matrix `E_ij`.
    pub fn unit(grading: &[u8], i: usize, j: usize, ctx: &ScalarCtx) -> Self {
        let mut m = SuperMatrix::zero(grading);
        m.entries.insert((i, j), ctx.one());
        m
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    /// Parity of a homogeneous matrix; `Some(0)` for zero, `None` if mixed.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for &(i, j) in self.entries.keys() {
            let x = (self.grading[i] + self.grading[j]) % 2;
            match p {
                None => p = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn mul(&self, o: &SuperMatrix) -> SuperMatrix {
        let mut out = SuperMatrix::zero(&self.grading);
        for (&(i, k), a) in &self.entries {
            for (&(k2, j), b) in o.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                let v = a * b;
                let slot = out.entries.entry((i, j)).or_insert_with(Scalar::exact_zero);
                *slot = &*slot + &v;
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale_int(&self, k: i64) -> SuperMatrix {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = v.scale_int(k);
        }
        out.entries.retain(|_, v| !v.is_zero());
        out
    }
}

/// `A ⊗ B` on the space with basis `(i, k) ↦ i·dim(B) + k`.
pub fn graded_kron(a: &SuperMatrix, b: &SuperMatrix) -> Option<SuperMatrix> {
    let pb = b.parity()?;
    let n = b.dim();
    let grading: Vec<u8> = a.grading.iter().flat_map(|pa| b.grading.iter().map(move |pw| (pa + pw) % 2)).collect();
    let mut out = SuperMatrix::zero(&grading);
    for (&(i, j), x) in &a.entries {
        let sign = if pb * a.grading[j] % 2 == 1 { -1 } else { 1 };
        for (&(k, l), y) in &b.entries {
            out.entries.insert((i * n + k, j * n + l), (x * y).scale_int(sign));
        }
    }
    Some(out)
}
