//! Action of generators and L-operator entries on the vacuum.

use super::report::{CheckOutcome, Failure, VerificationReport};
use crate::fock::{FockOperator, SparseVec};
use crate::lax::LaxOperator;
use crate::realizations::GeneratorFamily;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::time::Instant;

/// `op |0⟩ = expected |0⟩`.
fn vacuum_eigen(label: &str, op: &FockOperator, expected: &Scalar) -> CheckOutcome {
    let sp = op.space();
    let ctx = sp.ctx();
    let vac = sp.state_index(&vec![0; sp.modes().len()]).expect("vacuum state");
    let headroom = op.depth();
    match sp.admissible_block(headroom) {
        Ok(b) if b.contains(&vac) => {}
        Ok(_) => return CheckOutcome::error(label, headroom, "vacuum outside admissible block".into()),
        Err(e) => return CheckOutcome::error(label, headroom, e.to_string()),
    }
    let mut out: SparseVec = op.apply(&BTreeMap::from([(vac as u32, ctx.one())]));
    let v = out.remove(&(vac as u32)).unwrap_or_else(|| ctx.zero());
    out.insert(vac as u32, &v - expected);
    let bad = out.iter().find(|(_, r)| if ctx.is_exact() { !r.is_zero() } else { r.magnitude() > super::FLOAT_TOL });
    match bad {
        Some((i, r)) => CheckOutcome::fail(
            label,
            headroom,
            1,
            Failure { identity: label.to_string(), row: *i as usize, col: vac, residual: r.to_string() },
        ),
        None => CheckOutcome::pass(label, headroom, 1),
    }
}

/// `e_ii|0⟩ = λ_i|0⟩` where a weight is given, `e_{j,j+1}|0⟩ = 0`.
pub fn check_highest_weight(fam: &GeneratorFamily, weights: &[Option<Scalar>]) -> VerificationReport {
    let simple: Vec<(usize, usize)> = (1..fam.k()).map(|j| (j, j + 1)).collect();
    check_vacuum(fam, weights, &simple)
}

/// `e_ii|0⟩ = λ_i|0⟩` where a weight is given, `e_ab|0⟩ = 0` for the listed pairs.
pub fn check_vacuum(fam: &GeneratorFamily, weights: &[Option<Scalar>], killed: &[(usize, usize)]) -> VerificationReport {
    let start = Instant::now();
    let mut rep = VerificationReport::new("highest-weight", &format!("{} grading={}", fam.tag, fam.grading.bit_string()));
    let zero = fam.space.ctx().zero();
    for (i, w) in weights.iter().enumerate() {
        if let Some(w) = w {
            rep.record(vacuum_eigen(&format!("e_{0}{0}|0>", i + 1), fam.e(i + 1, i + 1), w));
        }
    }
    for &(a, b) in killed {
        rep.record(vacuum_eigen(&format!("e_{a}{b}|0>"), fam.e(a, b), &zero));
    }
    rep.millis = start.elapsed().as_millis();
    rep
}

/// `L_ii|0⟩ = a_i|0⟩`, `L̄_ii|0⟩ = b_i|0⟩` and `𝓛_ij(x)|0⟩ = 0` for `i > j`.
pub fn check_highest_weight_lax(lax: &LaxOperator, diag: &[(Scalar, Scalar)]) -> VerificationReport {
    let k = lax.k();
    let start = Instant::now();
    let mut rep = VerificationReport::new("highest-weight", &format!("{} grading={}", lax.tag, lax.grading.bit_string()));
    let zero = lax.space.ctx().zero();
    for i in 1..=k {
        let (a, b) = &diag[i - 1];
        rep.record(vacuum_eigen(&format!("L_{i}{i}|0>"), lax.l(i, i), a));
        rep.record(vacuum_eigen(&format!("Lbar_{i}{i}|0>"), lax.lbar(i, i), b));
        for j in 1..i {
            rep.record(vacuum_eigen(&format!("L_{i}{j}|0>"), lax.l(i, j), &zero));
            rep.record(vacuum_eigen(&format!("Lbar_{i}{j}|0>"), lax.lbar(i, j), &zero));
        }
    }
    rep.millis = start.elapsed().as_millis();
    rep
}
