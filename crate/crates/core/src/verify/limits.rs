//! Formal limits of exact scalars and operator families, and the
//! renormalizations that make them finite.

use crate::fock::{FockOperator, LinearForm};
use crate::lax::LaxOperator;
use crate::grading::{theta, GradingProfile, SubsetI};
use crate::realizations::osc::Osc;
use crate::realizations::{verma_family, GeneratorFamily, RealizationError};
use crate::scalar::{var, Scalar, ScalarError, Weight, STANDARD_NAMES};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LimitError {
    #[error("{entry} diverges as {var} -> {dir} (exponent {exponent})")]
    Diverges { entry: String, var: &'static str, dir: &'static str, exponent: i16 },
    #[error("{entry}: {source}")]
    Scalar { entry: String, source: ScalarError },
    #[error("limits need the exact backend")]
    NeedsExact,
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Zero,
    Infinity,
}

impl Direction {
    fn name(self) -> &'static str {
        match self {
            Direction::Zero => "0",
            Direction::Infinity => "infinity",
        }
    }
}

/// Constant term in `v` after checking that no divergent powers occur.
pub fn limit_scalar(s: &Scalar, v: usize, dir: Direction, entry: &str) -> Result<Scalar, LimitError> {
    if s.as_exact().is_none() {
        return Err(LimitError::NeedsExact);
    }
    if let Some((lo, hi)) = s.exponent_range(v) {
        let bad = match dir {
            Direction::Zero if lo < 0 => Some(lo),
            Direction::Infinity if hi > 0 => Some(hi),
            _ => None,
        };
        if let Some(exponent) = bad {
            return Err(LimitError::Diverges { entry: entry.to_string(), var: STANDARD_NAMES[v], dir: dir.name(), exponent });
        }
    }
    s.coeff(v, 0).map_err(|source| LimitError::Scalar { entry: entry.to_string(), source })
}

pub fn limit_operator(op: &FockOperator, v: usize, dir: Direction, name: &str) -> Result<FockOperator, LimitError> {
    op.try_map_entries(|i, j, x| limit_scalar(x, v, dir, &format!("{name}[{i},{j}]")))
}

pub fn limit_family(fam: &GeneratorFamily, v: usize, dir: Direction) -> Result<GeneratorFamily, LimitError> {
    let out = fam.try_map(|name, op| limit_operator(op, v, dir, name))?;
    Ok(out.with_tag(format!("lim {}", fam.tag)))
}

pub fn limit_lax(lax: &LaxOperator, v: usize, dir: Direction) -> Result<LaxOperator, LimitError> {
    let out = lax.try_map(|power, i, j, op| limit_operator(op, v, dir, &format!("L[{power}]_{i}{j}")))?;
    Ok(out.with_tag(format!("lim {}", lax.tag)))
}

/// `t = q^{-m} → 0`.
pub fn limit_q(fam: &GeneratorFamily) -> Result<GeneratorFamily, LimitError> {
    limit_family(fam, var::T, Direction::Zero)
}

/// Verma family with `λ_i = p_i m` on `Ī`, the oscillators rescaled by
/// `c_ij ↦ t^{θ(i∈Ī)-θ(j∈Ī)} c_ij`, and the generators renormalized so that
/// the `t → 0` limit exists.
pub fn renormalized_verma(g: &GradingProfile, sub: SubsetI, lambda_i: &[i64], osc: &Osc) -> Result<GeneratorFamily, LimitError> {
    let k = g.k();
    let ctx = osc.ctx().clone();
    let ib = |i: usize| theta(sub.in_ibar(i));
    let mut lambda = Vec::with_capacity(k);
    let mut it = lambda_i.iter();
    for i in 1..=k {
        if sub.in_ibar(i) {
            lambda.push(Weight::sym(g.s(i)));
        } else {
            let l = it.next().ok_or(RealizationError::WeightLength { expected: sub.i_set().len(), got: lambda_i.len() })?;
            lambda.push(Weight::int(*l));
        }
    }
    if it.next().is_some() {
        return Err(RealizationError::WeightLength { expected: sub.i_set().len(), got: lambda_i.len() }.into());
    }
    let t = |e: i64| ctx.var_pow(var::T, e);
    let rescaled = osc.rescale(|i, a| Some(t(ib(i) - ib(a))));
    let fam = verma_family(g, &lambda, &rescaled, "verma-renormalized")?;
    let forms: Vec<LinearForm> = (1..=k).map(|i| fam.cartan(i).unwrap().clone()).collect();
    let sp = fam.space.clone();
    let shifted_forms: Vec<LinearForm> = forms
        .iter()
        .enumerate()
        .map(|(n, f)| if sub.in_ibar(n + 1) { f.plus(-lambda[n]) } else { f.clone() })
        .collect();
    let mut out = fam.try_map(|name, op| -> Result<FockOperator, LimitError> {
        let (i, j) = parse_name(name);
        Ok(match name.split('_').next().unwrap() {
            "e" if i == j => {
                if sub.in_ibar(i) {
                    FockOperator::form_value(&sp, &shifted_forms[i - 1])
                } else {
                    op.clone()
                }
            }
            "e" if i > j => op.scale(&t(ib(i) + ib(j))),
            "e" => op.clone(),
            _ => op.scale(&t(ib(i))),
        })
    })?;
    out = out.set_cartan(Some(shifted_forms)).with_tag("verma-renormalized");
    Ok(out)
}

/// Index pair from an entry name such as `e_12` or `q^{p e}_3`.
fn parse_name(name: &str) -> (usize, usize) {
    let tail = name.rsplit('_').next().unwrap();
    if name.starts_with("e_") {
        let d: Vec<usize> = tail.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        (d[0], d[1])
    } else {
        let i: usize = tail.parse().unwrap();
        (i, i)
    }
}
