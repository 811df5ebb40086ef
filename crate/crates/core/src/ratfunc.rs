//! Reduced rational functions in one variable and the coefficient-field
//! abstraction shared by the curve-level code.

use crate::rat::Rat;
use crate::unipoly::UniPoly;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A rational function `num/den` with monic denominator and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct RatFunc {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let den = UniPoly::one(&p.var);
        RatFunc { num: p, den }
    }

    pub fn constant(var: &str, c: Rat) -> Self {
        RatFunc::from_poly(UniPoly::constant(var, c))
    }

    pub fn var(&self) -> &str {
        &self.num.var
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UniPoly::one(&self.den.var);
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g);
            self.den = self.den.exact_div(&g);
        }
        let lead = self.den.leading();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The field operations the curve-level code needs, implemented by `Rat`
/// (scalars over Q), `RatFunc` (the function field Q(t)), and the symbolic
/// fractions used for identity proofs.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    /// Exact square root in the field, when decidable; `None` either when no
    /// square root exists or the implementation cannot decide.
    fn sqrt_exact(&self) -> Option<Self>;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_int(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Rat::inv(self)
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        Rat::sqrt_exact(self)
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero("t"))
    }
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one("t"))
    }
    fn from_int(n: i64) -> Self {
        RatFunc::constant("t", Rat::from_int(n))
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        // num/den is a square iff num and lead-normalized den are squares up
        // to a common rational square unit; reduce to polynomial square roots
        // of num*den over the monic-denominator normal form.
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        Some(RatFunc::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints("t", coeffs)
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // (t^2-1)/(2t-2) -> (t+1)/2 with monic denominator convention
        let r = RatFunc::new(t(&[-1, 0, 1]), t(&[-2, 2]));
        assert_eq!(r.num, t(&[1, 1]).scale(&Rat::new(1, 2)));
        assert!(r.den.is_one());
        // idempotent
        let r2 = RatFunc::new(r.num.clone(), r.den.clone());
        assert_eq!(r, r2);
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(t(&[0, 1]), t(&[1, 1])); // t/(t+1)
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Coeff::one());
        assert_eq!(a.sub(&a), Coeff::zero());
    }

    #[test]
    fn sqrt_of_square() {
        let p = RatFunc::new(t(&[1, 2, 1]), t(&[4, 0, 1]).pow(2));
        let s = Coeff::sqrt_exact(&p).unwrap();
        assert_eq!(s.mul(&s), p);
    }
}
