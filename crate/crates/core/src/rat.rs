//! Arbitrary-precision rational scalars.
//!
//! `Rat` wraps `num_rational::BigRational` and is the coefficient type for
//! every exact computation in this crate. The canonical form (reduced, positive
//! denominator, zero as 0/1) is maintained by the underlying library; the
//! wrapper adds exact square roots, the string wire format `"p/q"`, and a few
//! conveniences the polynomial layers need.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics on `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root over the rationals, if one exists.
    ///
    /// The returned root is non-negative.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Rat::zero());
        }
        let sn = self.numer().sqrt();
        let sd = self.denom().sqrt();
        if &(&sn * &sn) == self.numer() && &(&sd * &sd) == self.denom() {
            Some(Rat(BigRational::new(sn, sd)))
        } else {
            None
        }
    }

    /// Absolute "size" used only to keep randomized test inputs small.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse error for rational strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {}", self.0)
    }
}

impl std::error::Error for ParseRatError {}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"p"` or `"p/q"` with optional leading sign. Floats are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseRatError(s.to_string());
        if s.contains('.') || s.contains('e') || s.contains('E') {
            return Err(bad());
        }
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let n = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rat::from_str(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self) / (&rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

/// Enumerate the positive divisors of `n` (trial division; intended for the
/// desk-scale constants that appear as leading/constant coefficients).
/// Returns `None` when `n` is too large to factor cheaply.
pub fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    if n.bits() > 64 {
        return None;
    }
    let mut divs: Vec<BigInt> = vec![BigInt::one()];
    let mut p = BigInt::from(2u32);
    let mut budget = 200_000u64;
    while &p * &p <= n {
        budget = budget.checked_sub(1)?;
        if n.is_multiple_of(&p) {
            let mut powers = vec![BigInt::one()];
            while n.is_multiple_of(&p) {
                n /= &p;
                let next = powers.last().unwrap() * &p;
                powers.push(next);
            }
            let mut next_divs = Vec::with_capacity(divs.len() * powers.len());
            for d in &divs {
                for q in &powers {
                    next_divs.push(d * q);
                }
            }
            divs = next_divs;
        }
        p += 1;
    }
    if n.sign() == Sign::Plus && !n.is_one() {
        let mut next_divs = Vec::with_capacity(divs.len() * 2);
        for d in &divs {
            next_divs.push(d.clone());
            next_divs.push(d * &n);
        }
        divs = next_divs;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(-4, -6);
        assert_eq!(r, Rat::new(2, 3));
        assert_eq!(r.to_string(), "2/3");
        let s = Rat::new(3, -9);
        assert_eq!(s.to_string(), "-1/3");
        assert!(s.denom() > &BigInt::zero());
        assert_eq!(Rat::new(0, 5), Rat::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["5", "-7/3", "0", "22/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("0.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("2e3".parse::<Rat>().is_err());
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(Rat::new(9, 4).sqrt_exact(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::new(2, 1).sqrt_exact(), None);
        assert_eq!(Rat::new(-9, 4).sqrt_exact(), None);
        assert_eq!(Rat::zero().sqrt_exact(), Some(Rat::zero()));
        // 225/64 shows up as beta^2 - 1 for beta = 17/8
        assert_eq!(Rat::new(225, 64).sqrt_exact(), Some(Rat::new(15, 8)));
    }

    #[test]
    fn divisor_enumeration() {
        let ds = small_divisors(&BigInt::from(12)).unwrap();
        let expected: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(ds, expected);
        assert!(small_divisors(&BigInt::zero()).is_none());
    }
}
