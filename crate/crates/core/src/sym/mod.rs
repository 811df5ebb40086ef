//! Sparse multivariate polynomials and fractions over the rationals.
//!
//! This is the engine behind the symbolic identity proofs: compositions of
//! isogenies, involutions, torsor isomorphisms, and one-form pullbacks are all
//! decided exactly here, with the curve coefficients as free indeterminates.
//! Equality of fractions is decided by cross-multiplication, never division;
//! fraction reduction is limited to content and common monomial factors, which
//! is enough because nothing downstream relies on lowest terms.

pub mod curve;
pub mod suite;

use crate::rat::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial: variable name to positive exponent.
pub type Monomial = BTreeMap<String, u32>;

/// A sparse multivariate polynomial over `Rat`. No zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    pub terms: BTreeMap<Monomial, Rat>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        SymPoly { terms }
    }

    pub fn one() -> Self {
        SymPoly::constant(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        SymPoly::constant(Rat::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, Rat::one());
        SymPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_empty())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.insert_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.terms.keys().any(|m| m.contains_key(var))
    }

    /// The set of variables that actually occur.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.keys().cloned())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// View as a polynomial in `var`: coefficient of `var^k` for k = 0..=deg.
    pub fn coeffs_in(&self, var: &str) -> Vec<SymPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![SymPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let k = m.get(var).copied().unwrap_or(0) as usize;
            let mut rest = m.clone();
            rest.remove(var);
            out[k].insert_term(rest, c.clone());
        }
        out
    }

    pub fn derivative(&self, var: &str) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            if let Some(&e) = m.get(var) {
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(var);
                } else {
                    m2.insert(var.to_string(), e - 1);
                }
                out.insert_term(m2, c * &Rat::from_int(e as i64));
            }
        }
        out
    }

    /// Substitute fractions for variables; unlisted variables stay symbolic.
    pub fn subst(&self, bindings: &BTreeMap<String, SymRat>) -> SymRat {
        let mut acc = SymRat::zero();
        for (m, c) in &self.terms {
            let mut term = SymRat::from_poly(SymPoly::constant(c.clone()));
            for (v, &e) in m {
                let factor = match bindings.get(v) {
                    Some(r) => r.clone(),
                    None => SymRat::from_poly(SymPoly::var(v)),
                };
                for _ in 0..e {
                    term = term.mul(&factor);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Exact evaluation at a full rational assignment.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m {
                let x = assignment
                    .get(v)
                    .unwrap_or_else(|| panic!("unbound variable {} in evaluation", v));
                t = &t * &x.pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Content: gcd of coefficient numerators over lcm of denominators, signed
    /// to make the leading (largest monomial) coefficient positive.
    fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        use num_bigint::BigInt;
        use num_traits::{One, Zero};
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::gcd(num_gcd, c.numer().clone());
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = Rat::from_bigint(num_gcd) / Rat::from_bigint(den_lcm);
        if self.terms.iter().next_back().unwrap().1.is_negative() {
            content = -&content;
        }
        content
    }

    /// Componentwise minimum of all monomials (the common monomial factor).
    fn monomial_gcd(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            Some(m) => m.clone(),
            None => return Monomial::new(),
        };
        let mut acc = first;
        for m in iter {
            acc = acc
                .iter()
                .filter_map(|(v, &e)| m.get(v).map(|&e2| (v.clone(), e.min(e2))))
                .filter(|&(_, e)| e > 0)
                .collect();
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    fn divide_monomial(&self, m: &Monomial) -> SymPoly {
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| {
                    let mut out = mm.clone();
                    for (v, e) in m {
                        let cur = out.get_mut(v).expect("monomial division underflow");
                        *cur -= e;
                        if *cur == 0 {
                            out.remove(v);
                        }
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut wrote = false;
            if !mag.is_one() || m.is_empty() {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
                wrote = true;
            }
            for (v, &e) in m {
                if wrote {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "{}", v)?;
                } else {
                    write!(f, "{}^{}", v, e)?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A fraction of sparse polynomials, reduced by content and common monomial
/// factor only. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct SymRat {
    pub num: SymPoly,
    pub den: SymPoly,
}

impl SymRat {
    pub fn new(num: SymPoly, den: SymPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in symbolic fraction");
        let mut r = SymRat { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: SymPoly) -> Self {
        SymRat { num: p, den: SymPoly::one() }
    }

    pub fn var(name: &str) -> Self {
        SymRat::from_poly(SymPoly::var(name))
    }

    pub fn int(n: i64) -> Self {
        SymRat::from_poly(SymPoly::int(n))
    }

    pub fn zero() -> Self {
        SymRat::from_poly(SymPoly::zero())
    }

    pub fn one() -> Self {
        SymRat::from_poly(SymPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = SymPoly::one();
            return;
        }
        // common monomial factor across numerator and denominator jointly
        let mn = self.num.monomial_gcd();
        let md = self.den.monomial_gcd();
        let shared: Monomial = mn
            .iter()
            .filter_map(|(v, &e)| md.get(v).map(|&e2| (v.clone(), e.min(e2))))
            .filter(|&(_, e)| e > 0)
            .collect();
        if !shared.is_empty() {
            self.num = self.num.divide_monomial(&shared);
            self.den = self.den.divide_monomial(&shared);
        }
        // normalize so the denominator is primitive with positive lead
        let cd = self.den.content();
        let inv = cd.inv().unwrap();
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn add(&self, o: &SymRat) -> SymRat {
        SymRat::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &SymRat) -> SymRat {
        SymRat::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &SymRat) -> SymRat {
        SymRat::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &SymRat) -> SymRat {
        assert!(!o.is_zero(), "division by zero symbolic fraction");
        SymRat::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn neg(&self) -> SymRat {
        SymRat { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<SymRat> {
        if self.is_zero() {
            None
        } else {
            Some(SymRat::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: u32) -> SymRat {
        let mut acc = SymRat::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn subst(&self, bindings: &BTreeMap<String, SymRat>) -> SymRat {
        let n = self.num.subst(bindings);
        let d = self.den.subst(bindings);
        assert!(!d.is_zero(), "substitution produced an identically zero denominator");
        n.div(&d)
    }

    /// Total derivative with respect to a variable (treating all other
    /// variables as constants).
    pub fn derivative(&self, var: &str) -> SymRat {
        let n = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        SymRat::new(n, self.den.mul(&self.den))
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Option<Rat> {
        let d = self.den.eval(assignment);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(assignment) / d)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }
}

impl PartialEq for SymRat {
    /// Cross-multiplied equality.
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl crate::ratfunc::Coeff for SymRat {
    fn zero() -> Self {
        SymRat::zero()
    }
    fn one() -> Self {
        SymRat::one()
    }
    fn from_int(n: i64) -> Self {
        SymRat::int(n)
    }
    fn add(&self, o: &Self) -> Self {
        SymRat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        SymRat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        SymRat::mul(self, o)
    }
    fn neg(&self) -> Self {
        SymRat::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        SymRat::inv(self)
    }
    fn is_zero(&self) -> bool {
        SymRat::is_zero(self)
    }
    /// Square roots of symbolic fractions are not decided.
    fn sqrt_exact(&self) -> Option<Self> {
        None
    }
}

impl fmt::Display for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == SymPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_ring_ops() {
        let x = SymPoly::var("x");
        let y = SymPoly::var("y");
        let p = x.add(&y).pow(2);
        let q = x.pow(2).add(&x.mul(&y).scale(&Rat::from_int(2))).add(&y.pow(2));
        assert_eq!(p, q);
        assert_eq!(p.degree_in("x"), 2);
        assert_eq!(p.derivative("x"), x.add(&y).scale(&Rat::from_int(2)));
    }

    #[test]
    fn fraction_equality_cross_multiplied() {
        let x = SymPoly::var("x");
        // x^2/x == x as fractions
        let a = SymRat::new(x.pow(2), x.clone());
        let b = SymRat::from_poly(x.clone());
        assert_eq!(a, b);
        // (x^2-1)/(x-1) == x+1 even though we never divide polynomials
        let num = x.pow(2).sub(&SymPoly::one());
        let den = x.sub(&SymPoly::one());
        let c = SymRat::new(num, den);
        let d = SymRat::from_poly(x.add(&SymPoly::one()));
        assert_eq!(c, d);
    }

    #[test]
    fn substitution() {
        let x = SymPoly::var("x");
        let p = x.pow(2).add(&SymPoly::one());
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), SymRat::new(SymPoly::one(), SymPoly::var("u")));
        let r = p.subst(&b);
        // 1/u^2 + 1 = (1 + u^2)/u^2
        let expect = SymRat::new(
            SymPoly::one().add(&SymPoly::var("u").pow(2)),
            SymPoly::var("u").pow(2),
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn evaluation() {
        let p = SymPoly::var("a").mul(&SymPoly::var("b")).sub(&SymPoly::int(6));
        let mut asg = BTreeMap::new();
        asg.insert("a".to_string(), Rat::from_int(2));
        asg.insert("b".to_string(), Rat::from_int(3));
        assert!(p.eval(&asg).is_zero());
    }
}
