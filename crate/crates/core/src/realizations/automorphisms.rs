//! Automorphisms of the q-oscillator algebra, acting on providers.
//!
//! A transformed provider returns the images of `c`, `c†`, `n`, so building a
//! realization from it is the same as substituting the images into the
//! original formulas.

use super::osc::{Osc, OscTriple};
use super::variants::{variant_family, Variant};
use super::verma::verma_family;
use super::{BarRule, Draft, GeneratorFamily, RealizationError};
use crate::fock::{FockOperator, LinearForm};
use crate::grading::GradingProfile;
use crate::scalar::Weight;

/// `n ↦ -n - p_i p_a`, `c ↦ c†`, `c† ↦ -p_i p_a c` on the labels accepted by `which`.
pub fn swap_oscillators(o: &Osc, g: &GradingProfile, which: impl Fn(usize, usize) -> bool) -> Osc {
    o.transform(|(i, a), t| {
        if !which(i, a) {
            return t.clone();
        }
        let pp = g.s(i) * g.s(a);
        OscTriple { c: t.cd.clone(), cd: t.c.scale_int(-pp), n: t.n.scale(-1).plus_int(-pp) }
    })
}

/// Row-`i0` rescaling by `δ^{∓1} q^{∓(p_i (n_{iĪ} - n_ia) + P_a)}` with
/// `P_a = p_{[1,a-1]} + p_{[i,K]}` for `a < i` and `p_{[i+1,a-1]} - p_i` for `a > i`.
pub fn row_dressing(o: &Osc, g: &GradingProfile, i0: usize) -> Osc {
    let k = g.k();
    let ctx = o.ctx().clone();
    let pi = g.s(i0);
    let psum = |lo: usize, hi: usize| (lo..=hi).map(|x| g.s(x)).sum::<i64>();
    let ibar: Vec<usize> = (1..=k).filter(|a| *a != i0).collect();
    let nib = o.nr_set(i0, &ibar);
    o.transform(|(i, a), t| {
        if i != i0 {
            return t.clone();
        }
        let big_p = if a < i0 { psum(1, a - 1) + psum(i0, k) } else { psum(i0 + 1, a - 1) - pi };
        let ex = nib.sub(o.n(i, a)).scale(pi).plus_int(big_p);
        let sign = g.s(a) * pi;
        OscTriple {
            c: (&t.c * &o.q(&ex.scale(-1))).scale(&ctx.delta_inv().scale_int(sign)),
            cd: (&o.q(&ex) * &t.cd).scale(&ctx.delta().scale_int(sign)),
            n: t.n.clone(),
        }
    })
}

/// `c_ij ↦ ε_ij c_ij`, `c†_ij ↦ ε_ij c†_ij` with `ε_ij = ±1`.
pub fn sign_rescale(o: &Osc, eps: impl Fn(usize, usize) -> i64) -> Osc {
    let one = o.ctx().one();
    o.rescale(|i, a| (eps(i, a) < 0).then(|| one.scale_int(-1)))
}

fn parity_sum(g: &GradingProfile, lo: usize, hi: usize) -> i64 {
    (lo..=hi).map(|k| g.p(k) as i64).sum()
}

fn neighbour_products(g: &GradingProfile, lo: usize, hi: usize) -> i64 {
    (lo..hi).map(|k| (g.p(k) * g.p(k + 1)) as i64).sum()
}

fn sign_of(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 { 1 } else { -1 }
}

/// `(-1)^{p_{(i,j)} + Σ_{k=i}^{j-1} p(k)p(k+1) + p(i)p(j)}` with the open interval sum.
pub fn rescale_open(o: &Osc, g: &GradingProfile) -> Osc {
    sign_rescale(o, |i, j| sign_of(parity_sum(g, i + 1, j - 1) + neighbour_products(g, i, j) + (g.p(i) * g.p(j)) as i64))
}

/// `(-1)^{i-j-1}`.
pub fn rescale_alternating(o: &Osc) -> Osc {
    sign_rescale(o, |i, j| sign_of(i as i64 - j as i64 - 1))
}

/// `(-1)^{1 + p_{[i,j]} + Σ_{k=i}^{j-1} p(k)p(k+1) + p(i)p(j)}` with the closed interval sum.
pub fn rescale_closed(o: &Osc, g: &GradingProfile) -> Osc {
    sign_rescale(o, |i, j| sign_of(1 + parity_sum(g, i, j) + neighbour_products(g, i, j) + (g.p(i) * g.p(j)) as i64))
}

/// `λ_i ↦ -λ_i + p_i (p_{[1,i-1]} - p_{[i+1,K]})`.
pub fn reflect_weights(g: &GradingProfile, lambda: &[Weight]) -> Vec<Weight> {
    let k = g.k();
    (1..=k).map(|i| -lambda[i - 1] + Weight::int(g.s(i) * (g.sign_sum(1, i - 1) - g.sign_sum(i + 1, k)))).collect()
}

/// The grading read backwards with every parity flipped, `p_i ↦ -p_{K+1-i}`.
pub fn mirror_grading(g: &GradingProfile) -> GradingProfile {
    GradingProfile::from_bits(g.bits().iter().rev().map(|b| 1 - b).collect())
}

/// `λ_i ↦ -λ_{K+1-i}`.
pub fn mirror_weights(lambda: &[Weight]) -> Vec<Weight> {
    lambda.iter().rev().map(|w| -*w).collect()
}

/// Provider whose label `(i,a)` carries the oscillator `(K+1-a, K+1-i)`.
pub fn mirror_oscillators(o: &Osc, k: usize) -> Osc {
    o.relabel(|i, a| (k + 1 - a, k + 1 - i))
}

/// Family on `g` from its Chevalley part; the rest via the q-commutator recursion.
fn from_chevalley(
    g: &GradingProfile,
    fam: &GeneratorFamily,
    up: impl Fn(usize) -> FockOperator,
    down: impl Fn(usize) -> FockOperator,
    cartan: impl Fn(usize) -> LinearForm,
    weights: Vec<Weight>,
    tag: String,
) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    let o = Osc::standard(&fam.space);
    let mut d = Draft::new(g, &o);
    for i in 1..=k {
        d.set_cartan(i, cartan(i));
    }
    for i in 1..k {
        d.set(i, i + 1, up(i));
        d.set(i + 1, i, down(i));
    }
    d.complete_upper()?;
    d.complete_lower_chain()?;
    Ok(d.finish(&tag, BarRule::Inverse, fam.contracted, weights))
}

fn cartan_of(fam: &GeneratorFamily, i: usize) -> Result<LinearForm, RealizationError> {
    fam.cartan(i).cloned().ok_or_else(|| RealizationError::Precondition("family has no Cartan forms".into()))
}

fn negated_cartan(fam: &GeneratorFamily) -> Result<Vec<LinearForm>, RealizationError> {
    (1..=fam.k()).map(|i| cartan_of(fam, i).map(|f| f.scale(-1))).collect()
}

/// `ρ ∘ φ` with `φ(e_{i,i+1}) = -p_i p_{i+1} e_{i+1,i}`, `φ(e_{i+1,i}) = -e_{i,i+1}`, `φ(e_ii) = -e_ii`.
pub fn flip_with_sign_on_raising(fam: &GeneratorFamily) -> Result<GeneratorFamily, RealizationError> {
    let g = fam.grading.clone();
    let h = negated_cartan(fam)?;
    let w = fam.vacuum_weights.iter().map(|x| -*x).collect();
    from_chevalley(
        &g,
        fam,
        |i| fam.e(i + 1, i).scale_int(-g.s(i) * g.s(i + 1)),
        |i| fam.e(i, i + 1).scale_int(-1),
        |i| h[i - 1].clone(),
        w,
        format!("flip+ {}", fam.tag),
    )
}

/// `ρ ∘ φ` with `φ(e_{i,i+1}) = -e_{i+1,i}`, `φ(e_{i+1,i}) = -p_i p_{i+1} e_{i,i+1}`, `φ(e_ii) = -e_ii`.
pub fn flip_with_sign_on_lowering(fam: &GeneratorFamily) -> Result<GeneratorFamily, RealizationError> {
    let g = fam.grading.clone();
    let h = negated_cartan(fam)?;
    let w = fam.vacuum_weights.iter().map(|x| -*x).collect();
    from_chevalley(
        &g,
        fam,
        |i| fam.e(i + 1, i).scale_int(-1),
        |i| fam.e(i, i + 1).scale_int(-g.s(i) * g.s(i + 1)),
        |i| h[i - 1].clone(),
        w,
        format!("flip- {}", fam.tag),
    )
}

/// Reads the Dynkin diagram backwards: a family on the mirrored grading
/// becomes one on `g`, `e_{α_i} ↦ e_{α_{K-i}}`, `e_{-α_i} ↦ p_{K-i} p_{K+1-i} e_{-α_{K-i}}`,
/// `e_ii ↦ -e_{K+1-i,K+1-i}`.
pub fn reverse_diagram(fam: &GeneratorFamily, g: &GradingProfile) -> Result<GeneratorFamily, RealizationError> {
    let k = g.k();
    if mirror_grading(g) != fam.grading {
        return Err(RealizationError::Precondition("family is not on the mirrored grading".into()));
    }
    let h = negated_cartan(fam)?;
    let w = (1..=k).map(|i| -fam.vacuum_weights[k - i]).collect();
    from_chevalley(
        g,
        fam,
        |i| fam.e(k - i, k - i + 1).clone(),
        |i| fam.e(k + 1 - i, k - i).scale_int(g.s(i) * g.s(i + 1)),
        |i| h[k - i].clone(),
        w,
        format!("reversed {}", fam.tag),
    )
}

/// Verma family with weights reflected, oscillators sign-rescaled and
/// swapped, then `flip_with_sign_on_raising`.
pub fn verma_to_real1(g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let osc = rescale_open(&swap_oscillators(o, g, |_, _| true), g);
    let fam = verma_family(g, &reflect_weights(g, lambda), &osc, "verma")?;
    flip_with_sign_on_raising(&fam)
}

/// `Real1` on the mirrored grading with mirrored weights and oscillators, read backwards.
pub fn real1_to_real3(g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let gm = mirror_grading(g);
    let osc = rescale_open(&mirror_oscillators(&rescale_alternating(o), g.k()), &gm);
    let fam = variant_family(Variant::Real1, &gm, &mirror_weights(lambda), &osc)?;
    reverse_diagram(&fam, g)
}

/// `Real3` with weights reflected, oscillators swapped and sign-rescaled, then `flip_with_sign_on_lowering`.
pub fn real3_to_real2(g: &GradingProfile, lambda: &[Weight], o: &Osc) -> Result<GeneratorFamily, RealizationError> {
    let osc = swap_oscillators(&rescale_closed(o, g), g, |_, _| true);
    let fam = variant_family(Variant::Real3, g, &reflect_weights(g, lambda), &osc)?;
    flip_with_sign_on_lowering(&fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockSpace, Semantics};
    use crate::grading::enumerate_gradings;
    use crate::scalar::ScalarCtx;
    use crate::verify::{check_appendix_a, compare_families};

    fn weights(k: usize, seed: i64) -> Vec<Weight> {
        (0..k as i64).map(|i| Weight::int((seed + 2 * i * i - i) % 5 - 2)).collect()
    }

    #[test]
    fn chains_connect_the_realizations() {
        for k in 2..=3 {
            for g in enumerate_gradings(k) {
                let sp = FockSpace::verma(&g, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
                let o = Osc::standard(&sp);
                for seed in 0..2 {
                    let lam = weights(k, seed);
                    let cases = [
                        (verma_to_real1(&g, &lam, &o).unwrap(), Variant::Real1),
                        (real1_to_real3(&g, &lam, &o).unwrap(), Variant::Real3),
                        (real3_to_real2(&g, &lam, &o).unwrap(), Variant::Real2),
                    ];
                    for (chained, which) in cases {
                        let target = variant_family(which, &g, &lam, &o).unwrap();
                        let rep = compare_families(&chained, &target);
                        assert!(rep.pass(), "{} {}: {}", which.name(), g.bit_string(), rep.summary());
                    }
                }
            }
        }
    }

    #[test]
    fn each_arrow_preserves_the_relations() {
        let g = GradingProfile::parse("011").unwrap();
        let sp = FockSpace::verma(&g, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let o = Osc::standard(&sp);
        let lam = weights(3, 1);
        let providers = [rescale_open(&o, &g), rescale_alternating(&o), rescale_closed(&o, &g), swap_oscillators(&o, &g, |_, _| true)];
        for p in &providers {
            let fam = verma_family(&g, &lam, p, "verma").unwrap();
            assert!(check_appendix_a(&fam).pass());
        }
        let v = verma_family(&g, &lam, &o, "verma").unwrap();
        for fam in [flip_with_sign_on_raising(&v).unwrap(), flip_with_sign_on_lowering(&v).unwrap()] {
            let rep = check_appendix_a(&fam);
            assert!(rep.pass(), "{}", rep.summary());
        }
        let gm = mirror_grading(&g);
        let r1 = variant_family(Variant::Real1, &gm, &mirror_weights(&lam), &mirror_oscillators(&o, 3)).unwrap();
        let rep = check_appendix_a(&reverse_diagram(&r1, &g).unwrap());
        assert!(rep.pass(), "{}", rep.summary());
    }

    #[test]
    fn chain_detects_a_wrong_sign() {
        let g = GradingProfile::parse("01").unwrap();
        let sp = FockSpace::verma(&g, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let o = Osc::standard(&sp);
        let lam = weights(2, 0);
        let chained = verma_to_real1(&g, &lam, &o).unwrap();
        let wrong = flip_with_sign_on_lowering(&verma_family(&g, &reflect_weights(&g, &lam), &rescale_open(&swap_oscillators(&o, &g, |_, _| true), &g), "verma").unwrap()).unwrap();
        let target = variant_family(Variant::Real1, &g, &lam, &o).unwrap();
        assert!(compare_families(&chained, &target).pass());
        assert!(!compare_families(&wrong, &target).pass());
    }

    fn relation_residual(o: &Osc, i: usize, a: usize, fermionic: bool) -> bool {
        // c c† = [n+1], c† c = [n] (bosons) or c c† + c† c = 1 (fermions), checked on low occupations
        let sp = o.space();
        let cc = o.c(i, a) * o.cd(i, a);
        let dc = o.cd(i, a) * o.c(i, a);
        let cols: Vec<usize> = sp.admissible_block(2).unwrap();
        if fermionic {
            (&cc + &dc).equal_on(&FockOperator::identity(sp), &cols).is_none()
        } else {
            cc.equal_on(&o.qb(&o.n(i, a).plus_int(1)), &cols).is_none() && dc.equal_on(&o.qb(o.n(i, a)), &cols).is_none()
        }
    }

    #[test]
    fn images_satisfy_oscillator_relations() {
        let g = GradingProfile::parse("011").unwrap();
        let modes = [(2, 1), (2, 3)];
        let sp = FockSpace::new(&g, &modes, 4, Semantics::Trig, ScalarCtx::exact()).unwrap();
        let std = Osc::standard(&sp);
        for o in [swap_oscillators(&std, &g, |_, _| true), row_dressing(&std, &g, 2), swap_oscillators(&row_dressing(&std, &g, 2), &g, |_, _| true)] {
            for (i, a) in modes {
                assert!(relation_residual(&o, i, a, g.pair_parity(i, a) == 1), "({i},{a})");
            }
        }
    }
}
