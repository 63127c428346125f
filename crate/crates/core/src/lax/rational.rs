//! The rational L-operator in factorized form `L(u) = z (u + D) z^{-1}`, and
//! the degenerate operator obtained from its large-`m` limit.

use super::{rational_lax, LaxOperator};
use crate::fock::{FockOperator, FockSpace, Parity, Semantics};
use crate::grading::{GradingProfile, SubsetI};
use crate::realizations::osc::{sum, Osc};
use crate::realizations::{check_len, BarRule, Draft, GeneratorFamily, RealizationError};
use crate::scalar::Weight;
use std::sync::Arc;

fn sign(e: u8) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The pieces `z`, `y = z^{-1}`, `D` (strictly lower) and `d` of the
/// factorization, all stored `K×K` row-major with 1-based accessors.
#[derive(Clone, Debug)]
pub struct RationalFactorization {
    pub grading: GradingProfile,
    pub space: Arc<FockSpace>,
    pub weights: Vec<Weight>,
    pub osc: Osc,
    z: Vec<FockOperator>,
    y: Vec<FockOperator>,
    dlow: Vec<FockOperator>,
    d: Vec<FockOperator>,
}

impl RationalFactorization {
    pub fn k(&self) -> usize {
        self.grading.k()
    }

    fn at<'a>(&self, v: &'a [FockOperator], i: usize, j: usize) -> &'a FockOperator {
        &v[(i - 1) * self.k() + (j - 1)]
    }

    pub fn z(&self, i: usize, j: usize) -> &FockOperator {
        self.at(&self.z, i, j)
    }

    pub fn y(&self, i: usize, j: usize) -> &FockOperator {
        self.at(&self.y, i, j)
    }

    /// `D_ij`, nonzero only for `i > j`.
    pub fn dlow(&self, i: usize, j: usize) -> &FockOperator {
        self.at(&self.dlow, i, j)
    }

    /// The diagonal `d_a` as a scalar operator.
    pub fn d(&self, a: usize) -> &FockOperator {
        &self.d[a - 1]
    }

    /// `(-1)^{(p(i)+1)p(j)}`: the sign that turns `z`, `y` into ordinary
    /// mutually inverse matrices.
    pub fn twist(&self, i: usize, j: usize) -> i64 {
        sign((self.grading.p(i) + 1) * self.grading.p(j))
    }

    /// `y` recomputed by forward substitution on the twisted `z`.
    pub fn y_by_substitution(&self) -> Vec<FockOperator> {
        let k = self.k();
        let g = &self.grading;
        let mut w: Vec<FockOperator> = (0..k * k).map(|n| zero_at(g, &self.space, n / k + 1, n % k + 1)).collect();
        for i in 1..=k {
            w[(i - 1) * k + (i - 1)] = FockOperator::identity(&self.space);
            for b in i + 1..=k {
                let acc = sum(
                    &zero_at(g, &self.space, b, i),
                    (i..b).map(|c| (self.z(b, c) * &w[(c - 1) * k + (i - 1)]).scale_int(-self.twist(b, c) * self.twist(c, i))),
                );
                w[(b - 1) * k + (i - 1)] = acc.scale_int(self.twist(b, i));
            }
        }
        w
    }

    /// `e_ij` from the componentwise product `z D z^{-1}`.
    pub fn generator(&self, i: usize, j: usize) -> FockOperator {
        let g = &self.grading;
        let k = self.k();
        let p = |x: usize| g.p(x);
        let mut terms = Vec::new();
        for a in 1..=k {
            if self.z(j, a).is_structural_zero() {
                continue;
            }
            for b in 1..=k {
                let mid = if a == b { self.d(a).clone() } else { self.dlow(b, a).clone() };
                if mid.is_structural_zero() || self.y(b, i).is_structural_zero() {
                    continue;
                }
                let s = sign(p(j) * (p(a) + 1)) * sign((p(a) + 1) * p(b)) * sign((p(b) + 1) * p(i));
                terms.push((&(self.z(j, a) * &mid) * self.y(b, i)).scale_int(s));
            }
        }
        sum(&zero_at(g, &self.space, i, j), terms).scale_int(sign(p(i) * (p(j) + 1)))
    }

    /// All `e_ij` from the product, as a family.
    pub fn family(&self) -> GeneratorFamily {
        let k = self.k();
        let mut d = Draft::new(&self.grading, &self.osc).rational();
        for i in 1..=k {
            for j in 1..=k {
                d.set(i, j, self.generator(i, j));
            }
        }
        d.finish("rational zDz^-1", BarRule::None, None, self.weights.clone())
    }
}

fn zero_at(g: &GradingProfile, sp: &Arc<FockSpace>, i: usize, j: usize) -> FockOperator {
    FockOperator::zero_with_parity(sp, Parity::of_bit(g.pair_parity(i, j)))
}

/// The factorization pieces for weights `λ` and the returned `L(u) = z(u+D)z^{-1}`.
pub fn rational_factorized(g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<(RationalFactorization, LaxOperator), RealizationError> {
    let f = factorize(g, lambda, o)?;
    let lax = rational_lax(&f.family()).with_tag("rational z(u+D)z^-1");
    Ok((f, lax))
}

pub fn factorize(g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<RationalFactorization, RealizationError> {
    let k = g.k();
    check_len(k, lambda.len())?;
    let sp = o.space().clone();
    if sp.semantics() != Semantics::Rational {
        return Err(RealizationError::Precondition("the factorization needs rational oscillators".into()));
    }
    let s = |x: usize| g.s(x);
    let mut z = Vec::with_capacity(k * k);
    let mut dlow = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            z.push(if i == j {
                FockOperator::identity(&sp)
            } else if i > j {
                o.c(j, i).scale_int(s(i) * s(j))
            } else {
                zero_at(g, &sp, i, j)
            });
            dlow.push(if i > j {
                let tail = sum(&zero_at(g, &sp, i, j), (i + 1..=k).map(|kk| (o.c(i, kk) * o.cd(j, kk)).scale_int(s(kk))));
                o.cd(j, i) + &tail.scale_int(s(i))
            } else {
                zero_at(g, &sp, i, j)
            });
        }
    }
    let d = (1..=k)
        .map(|a| {
            let shift: i64 = (1..a).map(|kk| s(kk) * s(a)).sum();
            o.val(&o.form(lambda[a - 1]).plus_int(-shift))
        })
        .collect();
    let mut f = RationalFactorization { grading: g.clone(), space: sp.clone(), weights: lambda.to_vec(), osc: o.clone(), z, y: vec![], dlow, d };
    f.y = alternating_inverse(&f);
    Ok(f)
}

/// `y` as the alternating sum over decreasing chains `b > a_1 > … > i`.
fn alternating_inverse(f: &RationalFactorization) -> Vec<FockOperator> {
    let k = f.k();
    let g = &f.grading;
    let sp = &f.space;
    let mut y = Vec::with_capacity(k * k);
    for b in 1..=k {
        for i in 1..=k {
            if b < i {
                y.push(zero_at(g, sp, b, i));
                continue;
            }
            if b == i {
                y.push(FockOperator::identity(sp));
                continue;
            }
            let inner: Vec<usize> = (i + 1..b).rev().collect();
            let mut terms = Vec::new();
            for mask in 0u32..(1 << inner.len()) {
                let mut chain = vec![b];
                chain.extend(inner.iter().enumerate().filter(|(n, _)| mask >> n & 1 == 1).map(|(_, a)| *a));
                chain.push(i);
                let factors = chain.len() - 1;
                let mut acc = FockOperator::identity(sp);
                let mut s = if factors % 2 == 0 { 1 } else { -1 };
                for w in chain.windows(2) {
                    acc = &acc * f.z(w[0], w[1]);
                    s *= f.twist(w[0], w[1]);
                }
                terms.push(acc.scale_int(s));
            }
            y.push(sum(&zero_at(g, sp, b, i), terms).scale_int(f.twist(b, i)));
        }
    }
    y
}

/// `𝖫_I(u) = u Σ_{i∈I} E_ii + Σ p_j e_ij ⊗ E_ji` for a family obeying the
/// contracted rational relations.
pub fn rational_degenerate_l(fam: &GeneratorFamily, sub: SubsetI) -> LaxOperator {
    let g = &fam.grading;
    let k = g.k();
    let sp = &fam.space;
    let base = rational_lax(fam);
    let mut u = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            u.push(if i == j && sub.in_i(i) { FockOperator::identity(sp) } else { zero_at(g, sp, i, j) });
        }
    }
    let m = base.part(0).unwrap().m.clone();
    LaxOperator::rational(g, sp, u, m, &format!("degenerate {}", fam.tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarCtx;
    use crate::verify::compare_operators;

    fn setup(gs: &str) -> (GradingProfile, Osc) {
        let g = GradingProfile::parse(gs).unwrap();
        let sp = FockSpace::verma(&g, 3, Semantics::Rational, ScalarCtx::exact()).unwrap();
        (g, Osc::standard(&sp))
    }

    #[test]
    fn first_diagonal_entry_is_the_weight() {
        let (g, o) = setup("010");
        let lam: Vec<Weight> = [3, -1, 2].iter().map(|x| Weight::int(*x)).collect();
        let f = factorize(&g, &lam, &o).unwrap();
        let three = FockOperator::scalar(&f.space, &f.space.ctx().int(3));
        let rep = compare_operators("d1", &[("d_1".into(), f.d(1), &three)]);
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn chain_sum_matches_substitution() {
        for gs in ["000", "001", "010", "011", "101", "0101"] {
            let (g, o) = setup(gs);
            let lam = vec![Weight::ZERO; g.k()];
            let f = factorize(&g, &lam, &o).unwrap();
            let w = f.y_by_substitution();
            let k = g.k();
            let pairs: Vec<_> = (1..=k)
                .flat_map(|b| (1..=k).map(move |i| (b, i)))
                .map(|(b, i)| (format!("y_{b}{i}"), f.y(b, i), &w[(b - 1) * k + (i - 1)]))
                .collect();
            let rep = compare_operators("y", &pairs);
            assert!(rep.pass(), "{gs}: {}", rep.summary());
        }
    }

    #[test]
    fn trig_space_is_rejected() {
        let g = GradingProfile::parse("01").unwrap();
        let sp = FockSpace::verma(&g, 2, Semantics::Trig, ScalarCtx::exact()).unwrap();
        assert!(factorize(&g, &[Weight::ZERO; 2], &Osc::standard(&sp)).is_err());
    }
}
