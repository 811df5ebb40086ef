//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros; the zero
//! polynomial has an empty coefficient vector. Everything here is exact:
//! Euclidean division, gcds, Yun's squarefree decomposition, gcd-free bases,
//! polynomial square roots, and rational-root extraction. These feed the
//! valuation bookkeeping used by the fibration classifier.

use crate::rat::{small_divisors, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A dense univariate polynomial over `Rat`.
///
/// The variable name is carried along for display and wire I/O; arithmetic
/// between polynomials in different variables panics, since that is always a
/// programming error in this crate.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct UniPoly {
    pub var: String,
    /// Ascending coefficients, no trailing zeros.
    pub coeffs: Vec<Rat>,
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            coeffs: Vec<Rat>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(UniPoly::from_coeffs(&raw.var, raw.coeffs))
    }
}

impl UniPoly {
    pub fn zero(var: &str) -> Self {
        UniPoly { var: var.into(), coeffs: vec![] }
    }

    pub fn constant(var: &str, c: Rat) -> Self {
        let mut p = UniPoly { var: var.into(), coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn one(var: &str) -> Self {
        UniPoly::constant(var, Rat::one())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(var: &str, c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero(var);
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { var: var.into(), coeffs }
    }

    /// The variable itself.
    pub fn x(var: &str) -> Self {
        UniPoly::monomial(var, Rat::one(), 1)
    }

    pub fn from_coeffs(var: &str, coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { var: var.into(), coeffs };
        p.normalize();
        p
    }

    /// Convenience for integer coefficient lists (ascending).
    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(var, coeffs.iter().map(|&n| Rat::from_int(n)).collect())
    }

    pub fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as `None` (the -infinity sentinel).
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    fn check_var(&self, other: &UniPoly) {
        assert_eq!(self.var, other.var, "mixed polynomial variables");
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &other.coeff(k));
        }
        UniPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &other.coeff(k));
        }
        UniPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::from_coeffs(&self.var, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.var);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::from_coeffs(&self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.var);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        self.check_var(d);
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() < dd + 1 {
            return (UniPoly::zero(&self.var), self.clone());
        }
        let lead_inv = d.leading().inv().unwrap();
        let mut q = vec![Rat::zero(); r.len() - dd];
        let mut top = r.len();
        while top > dd {
            let k = top - 1;
            if !r[k].is_zero() {
                let f = &r[k] * &lead_inv;
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    let t = dc * &f;
                    r[idx] = &r[idx] - &t;
                }
                q[k - dd] = f;
            }
            top = k;
        }
        (UniPoly::from_coeffs(&self.var, q), UniPoly::from_coeffs(&self.var, r))
    }

    /// Exact quotient; panics if the division is not exact.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic rescaling; the zero polynomial stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv().unwrap())
    }

    /// Monic gcd with `gcd(p, 0) = monic(p)`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.check_var(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
            // keep coefficients tame during the remainder sequence
            a = a.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rat::from_int(k as i64))
            .collect();
        UniPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UniPoly::constant(&inner.var, c.clone()));
        }
        acc
    }

    /// Product of the squarefree factors (the radical).
    pub fn squarefree_part(&self) -> UniPoly {
        assert!(!self.is_zero());
        if self.deg() == 0 {
            return UniPoly::one(&self.var);
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && (self.is_constant() || self.gcd(&self.derivative()).is_one())
    }

    /// Exact polynomial square root, sign-normalized to positive leading
    /// coefficient. Returns `None` when `self` is not a square.
    pub fn sqrt_exact(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.deg();
        if d % 2 != 0 {
            return None;
        }
        let lead = self.leading().sqrt_exact()?;
        let n = d / 2;
        let mut q = UniPoly::monomial(&self.var, lead.clone(), n);
        let two_lead_inv = (&Rat::from_int(2) * &lead).inv().unwrap();
        loop {
            let r = self.sub(&q.mul(&q));
            if r.is_zero() {
                return Some(q);
            }
            let rd = r.deg();
            if rd < n {
                return None;
            }
            let c = &r.leading() * &two_lead_inv;
            q = q.add(&UniPoly::monomial(&self.var, c, rd - n));
        }
    }

    /// Clear denominators and content: returns a primitive integer-coefficient
    /// polynomial with the same roots, as `BigInt` coefficients.
    fn primitive_int_coeffs(&self) -> Vec<BigInt> {
        assert!(!self.is_zero());
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        if g.is_zero() || g.is_one() {
            ints
        } else {
            ints.iter().map(|c| c / &g).collect()
        }
    }

    /// All rational roots, each with its multiplicity.
    ///
    /// Uses the rational-root theorem on the primitive integer model. When the
    /// boundary coefficients are too large to factor cheaply this returns an
    /// empty list (callers fall back to keeping the factor whole, which only
    /// coarsens place reporting, never correctness).
    pub fn rational_roots(&self) -> Vec<(Rat, usize)> {
        if self.is_zero() || self.is_constant() {
            return vec![];
        }
        let mut out = Vec::new();
        let mut p = self.clone();
        // split off roots at zero first
        let mut zero_mult = 0usize;
        while p.coeff(0).is_zero() && !p.is_constant() {
            p = p.exact_div(&UniPoly::x(&self.var));
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rat::zero(), zero_mult));
        }
        if p.is_constant() {
            return out;
        }
        let ints = p.primitive_int_coeffs();
        let a0 = &ints[0];
        let an = ints.last().unwrap();
        let (num_divs, den_divs) = match (small_divisors(a0), small_divisors(an)) {
            (Some(n), Some(d)) => (n, d),
            _ => return out,
        };
        let mut candidates = Vec::new();
        for n in &num_divs {
            for d in &den_divs {
                candidates.push(Rat::from_bigint(n.clone()) / Rat::from_bigint(d.clone()));
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            for root in [c.clone(), -&c] {
                if p.eval(&root).is_zero() {
                    let lin = UniPoly::from_coeffs(&self.var, vec![-&root, Rat::one()]);
                    let mut mult = 0usize;
                    while lin.divides(&p) {
                        p = p.exact_div(&lin);
                        mult += 1;
                    }
                    if mult > 0 {
                        out.push((root, mult));
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Exact multiplicity of `place` (a nonconstant polynomial) in `self`.
    pub fn valuation(&self, place: &UniPoly) -> usize {
        assert!(!self.is_zero(), "valuation of zero polynomial");
        assert!(!place.is_constant(), "valuation at a constant");
        let mut p = self.clone();
        let mut v = 0;
        loop {
            let (q, r) = p.div_rem(place);
            if r.is_zero() {
                v += 1;
                p = q;
            } else {
                return v;
            }
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag)?;
                } else {
                    write!(f, "({})", mag)?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k == 1 {
                write!(f, "{}", self.var)?;
            } else if k > 1 {
                write!(f, "{}^{}", self.var, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One factor of a squarefree decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: UniPoly,
    pub multiplicity: usize,
}

/// `unit * prod(factors[i].poly ^ factors[i].multiplicity)` reproduces the
/// input exactly; the factors are monic, squarefree, and pairwise coprime.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorMultiset {
    pub unit: Rat,
    pub factors: Vec<Factor>,
}

impl FactorMultiset {
    pub fn reassemble(&self, var: &str) -> UniPoly {
        let mut p = UniPoly::constant(var, self.unit.clone());
        for f in &self.factors {
            p = p.mul(&f.poly.pow(f.multiplicity as u32));
        }
        p
    }
}

/// Yun's squarefree decomposition. Rejects the zero polynomial.
pub fn squarefree_decompose(p: &UniPoly) -> Result<FactorMultiset, String> {
    if p.is_zero() {
        return Err("squarefree decomposition of the zero polynomial".into());
    }
    let unit = p.leading();
    let p = p.monic();
    let mut factors = Vec::new();
    if p.is_constant() {
        return Ok(FactorMultiset { unit, factors });
    }
    // Yun: g = gcd(p, p'); c1 = p/g; d1 = p'/g - c1'
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut c = p.exact_div(&g);
    let mut d = dp.exact_div(&g).sub(&c.derivative());
    let mut i = 1usize;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            factors.push(Factor { poly: a.monic(), multiplicity: i });
        }
        c = c.exact_div(&a);
        d = d.exact_div(&a).sub(&c.derivative());
        i += 1;
    }
    Ok(FactorMultiset { unit, factors })
}

/// Pairwise-coprime squarefree monic basis spanning the inputs: every input is
/// a unit times a product of powers of basis elements.
pub fn gcd_free_basis(inputs: &[UniPoly]) -> Vec<UniPoly> {
    let mut basis: Vec<UniPoly> = Vec::new();
    for p in inputs {
        assert!(!p.is_zero(), "gcd-free basis of a zero polynomial");
        if p.is_constant() {
            continue;
        }
        let mut f = p.squarefree_part();
        let mut next_basis = Vec::with_capacity(basis.len() + 1);
        for b in basis {
            if f.is_constant() {
                next_basis.push(b);
                continue;
            }
            let g = f.gcd(&b);
            if g.is_constant() {
                next_basis.push(b);
            } else {
                let b_rest = b.exact_div(&g).monic();
                if !b_rest.is_constant() {
                    next_basis.push(b_rest);
                }
                next_basis.push(g.clone());
                f = f.exact_div(&g).monic();
            }
        }
        if !f.is_constant() {
            next_basis.push(f);
        }
        basis = next_basis;
    }
    basis.sort_by(cmp_poly);
    basis
}

/// Gcd-free basis refined across the inputs AND across the multiplicity
/// layers inside each input (each Yun factor enters separately). Every basis
/// element then has a uniform valuation in every input.
pub fn refined_gcd_free_basis(inputs: &[UniPoly]) -> Result<Vec<UniPoly>, String> {
    let mut layers: Vec<UniPoly> = Vec::new();
    for p in inputs {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let dec = squarefree_decompose(p)?;
        for f in dec.factors {
            layers.push(f.poly);
        }
    }
    Ok(gcd_free_basis(&layers))
}

/// Deterministic polynomial ordering: by degree, then lexicographic on
/// coefficients from the top.
pub fn cmp_poly(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| {
            for (x, y) in a.coeffs.iter().rev().zip(b.coeffs.iter().rev()) {
                let o = x.cmp(y);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// `poly_is_square`: returns `q` with `q^2 = p` when one exists over Q.
pub fn poly_is_square(p: &UniPoly) -> Option<UniPoly> {
    p.sqrt_exact()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints("t", coeffs)
    }

    #[test]
    fn basic_arithmetic() {
        let p = t(&[-1, 0, 1]); // t^2 - 1
        let q = t(&[-1, 1]); // t - 1
        assert_eq!(p.gcd(&q), q.monic());
        let (quo, rem) = p.div_rem(&q);
        assert_eq!(quo, t(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(UniPoly::zero("t").degree(), None);
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let p = t(&[2, 4]); // 4t + 2... ascending: 2 + 4t
        let z = UniPoly::zero("t");
        assert_eq!(p.gcd(&z), p.monic());
        assert_eq!(z.gcd(&p), p.monic());
    }

    #[test]
    fn generic_triple_coprimality() {
        // a = t^4-1, b = t^4, c = t^4-16; oracle: b^2-4ac is a nonzero constant
        // modulo each factor of ac, so gcd(ac, b^2-4ac) = 1.
        let a = t(&[-1, 0, 0, 0, 1]);
        let b = t(&[0, 0, 0, 0, 1]);
        let c = t(&[-16, 0, 0, 0, 1]);
        let ac = a.mul(&c);
        let disc = b.mul(&b).sub(&ac.scale(&Rat::from_int(4)));
        // oracle: reduce modulo t^4-1 and t^4-16 (the two factors of ac)
        let r1 = disc.rem(&a);
        let r2 = disc.rem(&c);
        assert_eq!(r1, UniPoly::from_ints("t", &[1]));
        assert_eq!(r2, UniPoly::from_ints("t", &[256]));
        assert!(ac.gcd(&disc).is_one());
    }

    #[test]
    fn yun_decomposition() {
        // t^2 (t-1) -> {(t,2), (t-1,1)}
        let p = t(&[0, 0, 1]).mul(&t(&[-1, 1]));
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.reassemble("t"), p);
        let by_mult: Vec<_> = d.factors.iter().map(|f| (f.poly.clone(), f.multiplicity)).collect();
        assert!(by_mult.contains(&(t(&[0, 1]), 2)));
        assert!(by_mult.contains(&(t(&[-1, 1]), 1)));

        // (t^2+1)^3
        let p = t(&[1, 0, 1]).pow(3);
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].poly, t(&[1, 0, 1]));
        assert_eq!(d.factors[0].multiplicity, 3);

        assert!(squarefree_decompose(&UniPoly::zero("t")).is_err());
    }

    #[test]
    fn gcd_free_basis_splits() {
        let basis = gcd_free_basis(&[t(&[-1, 0, 1]), t(&[-1, 1])]);
        assert_eq!(basis, vec![t(&[-1, 1]), t(&[1, 1])]);
        // coprime squarefree inputs are returned unchanged up to monic scaling
        let basis = gcd_free_basis(&[t(&[1, 0, 1]), t(&[-2, 1])]);
        assert_eq!(basis, vec![t(&[-2, 1]), t(&[1, 0, 1])]);
        // pairwise coprimality
        for (i, p) in basis.iter().enumerate() {
            for q in &basis[i + 1..] {
                assert!(p.gcd(q).is_one());
            }
        }
    }

    #[test]
    fn square_detection() {
        assert_eq!(poly_is_square(&t(&[1, 2, 1])), Some(t(&[1, 1])));
        assert_eq!(poly_is_square(&t(&[1, 0, 1])), None);
        // 4t^4 - 8t^2 + 4 = (2t^2-2)^2
        assert_eq!(poly_is_square(&t(&[4, 0, -8, 0, 4])), Some(t(&[-2, 0, 2])));
        assert_eq!(poly_is_square(&t(&[0, 1])), None);
    }

    #[test]
    fn rational_root_extraction() {
        let p = t(&[0, 0, 0, 1]).mul(&t(&[2, 1])).mul(&t(&[-1, 2]));
        let roots = p.rational_roots();
        assert_eq!(
            roots,
            vec![
                (Rat::from_int(-2), 1),
                (Rat::zero(), 3),
                (Rat::new(1, 2), 1),
            ]
        );
    }

    #[test]
    fn valuations() {
        let p = t(&[0, 0, 0, 1]).mul(&t(&[1, 1])); // t^3 (t+1)
        assert_eq!(p.valuation(&t(&[0, 1])), 3);
        assert_eq!(p.valuation(&t(&[1, 1])), 1);
        assert_eq!(p.valuation(&t(&[-1, 1])), 0);
    }
}
