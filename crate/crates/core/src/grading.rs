//! Z2-gradings of the index set `{1..M+N}`, sign helpers, the split
//! `I = {a+1..M+N}` and the affine Cartan matrix.
//!
//! All indices in this crate are 1-based to match the usual formulas.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading string `{0}` must consist of 0/1 digits")]
    BadBits(String),
    #[error("split a={a} outside 0..={k}")]
    BadSplit { a: usize, k: usize },
    #[error("grading bits do not match (M,N)=({m},{n})")]
    CountMismatch { m: usize, n: usize },
}

/// `θ(true) = 1`, `θ(false) = 0`.
pub fn theta(b: bool) -> i64 {
    b as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingProfile {
    bits: Vec<u8>,
}

impl GradingProfile {
    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|b| *b <= 1), "grading bits must be 0 or 1");
        assert!(!bits.is_empty(), "empty grading");
        GradingProfile { bits }
    }

    /// Parses a string such as `"001"`.
    pub fn parse(s: &str) -> Result<Self, GradingError> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        match bits {
            Some(b) if !b.is_empty() => Ok(GradingProfile { bits: b }),
            _ => Err(GradingError::BadBits(s.to_string())),
        }
    }

    /// Parses and checks against a requested `(M, N)`.
    pub fn parse_for(s: &str, m: usize, n: usize) -> Result<Self, GradingError> {
        let g = Self::parse(s)?;
        if g.m() != m || g.n() != n {
            return Err(GradingError::CountMismatch { m, n });
        }
        Ok(g)
    }

    /// `p = (0,..,0,1,..,1)`.
    pub fn distinguished(m: usize, n: usize) -> Self {
        let mut bits = vec![0u8; m];
        bits.extend(std::iter::repeat(1u8).take(n));
        GradingProfile::from_bits(bits)
    }

    pub fn k(&self) -> usize {
        self.bits.len()
    }

    pub fn m(&self) -> usize {
        self.bits.iter().filter(|b| **b == 0).count()
    }

    pub fn n(&self) -> usize {
        self.bits.iter().filter(|b| **b == 1).count()
    }

    /// Grading bit `p(i)` for 1-based `i`.
    pub fn p(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// Sign `p_i = (-1)^{p(i)}`.
    pub fn s(&self, i: usize) -> i64 {
        1 - 2 * self.bits[i - 1] as i64
    }

    /// Parity of the pair `(i, a)`: `p(i) + p(a) mod 2`.
    pub fn pair_parity(&self, i: usize, a: usize) -> u8 {
        (self.p(i) + self.p(a)) % 2
    }

    /// Sum of signs `p_[lo,hi]`, zero on an empty range.
    pub fn sign_sum(&self, lo: usize, hi: usize) -> i64 {
        (lo..=hi).filter(|i| *i >= 1 && *i <= self.k()).map(|i| self.s(i)).sum()
    }

    /// Grading with `p'(i) = 1 - p(K+1-i)`.
    pub fn flipped(&self) -> Self {
        let k = self.k();
        GradingProfile::from_bits((1..=k).map(|i| 1 - self.p(k + 1 - i)).collect())
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
}

/// All `2^total` gradings of `total` indices.
pub fn enumerate_gradings(total: usize) -> Vec<GradingProfile> {
    (0..(1u32 << total))
        .map(|mask| GradingProfile::from_bits((0..total).map(|k| ((mask >> (total - 1 - k)) & 1) as u8).collect()))
        .collect()
}

/// Affine Cartan matrix, indices read modulo `M+N`.
pub fn cartan_matrix(g: &GradingProfile) -> Vec<Vec<i64>> {
    let k = g.k();
    let s = |i: usize| g.s((i - 1) % k + 1);
    let idx = |i: usize| (i - 1) % k + 1;
    (1..=k)
        .map(|i| {
            (1..=k)
                .map(|j| {
                    let mut a = 0;
                    if j == i {
                        a += s(i) + s(i + 1);
                    }
                    if idx(j + k - 1) == i && k > 1 {
                        // i = j - 1
                        a -= s(i + 1);
                    }
                    if idx(j + 1) == i && k > 1 {
                        // i = j + 1
                        a -= s(i);
                    }
                    a
                })
                .collect()
        })
        .collect()
}

/// Split `I = {a+1..K}`, `Ī = {1..a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetI {
    pub a: usize,
    pub k: usize,
    /// Use `I = {1..a}` instead (the head variant).
    pub head: bool,
}

impl SubsetI {
    pub fn tail(a: usize, k: usize) -> Result<Self, GradingError> {
        if a > k {
            return Err(GradingError::BadSplit { a, k });
        }
        Ok(SubsetI { a, k, head: false })
    }

    pub fn head(a: usize, k: usize) -> Result<Self, GradingError> {
        if a > k {
            return Err(GradingError::BadSplit { a, k });
        }
        Ok(SubsetI { a, k, head: true })
    }

    pub fn in_i(&self, i: usize) -> bool {
        if self.head {
            i <= self.a
        } else {
            i > self.a
        }
    }

    pub fn in_ibar(&self, i: usize) -> bool {
        !self.in_i(i)
    }

    pub fn i_set(&self) -> Vec<usize> {
        (1..=self.k).filter(|i| self.in_i(*i)).collect()
    }

    pub fn ibar_set(&self) -> Vec<usize> {
        (1..=self.k).filter(|i| self.in_ibar(*i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn theta_values() {
        assert_eq!(theta(true), 1);
        assert_eq!(theta(false), 0);
        assert_eq!(theta([3].contains(&3)), 1);
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_matrix(&GradingProfile::distinguished(2, 0)), vec![vec![2, -2], vec![-2, 2]]);
        let c = cartan_matrix(&GradingProfile::distinguished(2, 1));
        assert_eq!(c[1][1], 0);
        assert_eq!(c[0], vec![2, -1, -1]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_gradings(1).len(), 2);
        assert_eq!(enumerate_gradings(2).len(), 4);
        assert_eq!(enumerate_gradings(3).len(), 8);
        let g = &enumerate_gradings(3)[1];
        assert_eq!(g.bit_string(), "001");
        assert_eq!((g.m(), g.n()), (2, 1));
    }

    #[test]
    fn subset_split() {
        let s = SubsetI::tail(1, 3).unwrap();
        assert_eq!(s.i_set(), vec![2, 3]);
        assert_eq!(s.ibar_set(), vec![1]);
        assert!(SubsetI::tail(4, 3).is_err());
        assert_eq!(SubsetI::head(1, 3).unwrap().i_set(), vec![1]);
    }

    #[test]
    fn parse_and_flip() {
        let g = GradingProfile::parse("011").unwrap();
        assert_eq!(g.flipped().bit_string(), "001");
        assert!(GradingProfile::parse("0a1").is_err());
        assert!(GradingProfile::parse_for("01", 2, 0).is_err());
    }

    proptest! {
        #[test]
        fn cartan_rows_sum_to_zero(total in 2usize..=5, mask in 0u32..32) {
            let g = GradingProfile::from_bits((0..total).map(|k| ((mask >> k) & 1) as u8).collect());
            let c = cartan_matrix(&g);
            for (i, row) in c.iter().enumerate() {
                prop_assert_eq!(row.iter().sum::<i64>(), 0);
                prop_assert_eq!(row[i], g.s(i + 1) + g.s((i + 1) % total + 1));
            }
            for i in 1..=total {
                prop_assert_eq!(g.s(i) * g.s(i), 1);
            }
        }
    }
}
