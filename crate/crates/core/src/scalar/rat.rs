//! Rational coefficients with an `i64` fast path and a big-integer fallback.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An exact rational number.
///
/// Values that fit in `i64` numerator/denominator are always stored as
/// `Small`, so two equal values always have the same variant.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    pub fn int(n: i64) -> Rat {
        Rat::Small(Ratio::from_integer(n))
    }

    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::Small(Ratio::new(num, den))
    }

    pub fn zero() -> Rat {
        Rat::int(0)
    }

    pub fn one() -> Rat {
        Rat::int(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_one(),
            Rat::Big(r) => r.is_one(),
        }
    }

    fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(r) => r.clone(),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(r),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(s) = a.checked_add(b) {
                return Rat::Small(s);
            }
        }
        Rat::from_big(self.big() + o.big())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(s) = a.checked_mul(b) {
                return Rat::Small(s);
            }
        }
        Rat::from_big(self.big() * o.big())
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(r) => match r.numer().checked_neg() {
                Some(n) => Rat::Small(Ratio::new_raw(n, *r.denom())),
                None => Rat::from_big(-self.big()),
            },
            Rat::Big(r) => Rat::from_big(-r.clone()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(r.recip()),
            _ => Rat::from_big(self.big().recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Rat::Big(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(r) => r.is_negative(),
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a), Rat::Small(b)) => a == b,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&o.big()),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{}", r),
            Rat::Big(r) => write!(f, "{}", r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Rat::int(i64::MAX);
        let b = a.add(&Rat::one());
        assert!(matches!(b, Rat::Big(_)));
        let c = b.sub(&Rat::one());
        assert_eq!(c, Rat::int(i64::MAX));
        assert!(matches!(c, Rat::Small(_)));
    }

    #[test]
    fn fractions_reduce() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, 3).mul(&Rat::int(3)), Rat::one());
        assert_eq!(Rat::new(-2, 3).recip(), Rat::new(-3, 2));
    }
}
