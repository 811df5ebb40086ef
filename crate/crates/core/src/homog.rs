//! Homogeneous-degree bookkeeping over the projective line.
//!
//! A binary form of degree `d` in `[t0 : t1]` is stored affinely (`t = t0/t1`)
//! together with its declared degree. The deficiency `declared - deg` is the
//! vanishing order at the place at infinity (`t1 = 0`), so infinity is never
//! special-cased in polynomial arithmetic.

use crate::rat::Rat;
use crate::unipoly::{cmp_poly, UniPoly};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An affinely-stored homogeneous polynomial with declared degree.
///
/// The wire format is the polynomial object with an extra `homdeg` field:
/// `{"var": ..., "coeffs": [...], "homdeg": n}`.
#[derive(Clone, PartialEq)]
pub struct HomogPoly {
    pub poly: UniPoly,
    pub declared_degree: usize,
}

impl Serialize for HomogPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HomogPoly", 3)?;
        st.serialize_field("var", &self.poly.var)?;
        st.serialize_field("coeffs", &self.poly.coeffs)?;
        st.serialize_field("homdeg", &self.declared_degree)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HomogPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            var: String,
            coeffs: Vec<Rat>,
            homdeg: Option<usize>,
        }
        let raw = Raw::deserialize(d)?;
        let poly = UniPoly::from_coeffs(&raw.var, raw.coeffs);
        let actual = poly.degree().unwrap_or(0);
        let homdeg = raw.homdeg.unwrap_or(actual);
        if homdeg < actual {
            return Err(serde::de::Error::custom(format!(
                "homdeg {} below actual degree {}",
                homdeg, actual
            )));
        }
        Ok(HomogPoly::new(poly, homdeg))
    }
}

impl HomogPoly {
    pub fn new(poly: UniPoly, declared_degree: usize) -> Self {
        if let Some(d) = poly.degree() {
            assert!(
                declared_degree >= d,
                "declared degree {} below actual degree {}",
                declared_degree,
                d
            );
        }
        HomogPoly { poly, declared_degree }
    }

    /// Declared degree equal to the actual degree.
    pub fn exact(poly: UniPoly) -> Self {
        let d = poly.degree().unwrap_or(0);
        HomogPoly::new(poly, d)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn var(&self) -> &str {
        &self.poly.var
    }

    /// Vanishing order at infinity.
    pub fn val_infinity(&self) -> usize {
        self.declared_degree - self.poly.deg()
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        HomogPoly::new(self.poly.mul(&other.poly), self.declared_degree + other.declared_degree)
    }

    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.declared_degree, other.declared_degree, "adding forms of unequal degree");
        HomogPoly::new(self.poly.add(&other.poly), self.declared_degree)
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.declared_degree, other.declared_degree, "adding forms of unequal degree");
        HomogPoly::new(self.poly.sub(&other.poly), self.declared_degree)
    }

    pub fn scale(&self, c: &Rat) -> HomogPoly {
        HomogPoly::new(self.poly.scale(c), self.declared_degree)
    }

    pub fn pow(&self, e: u32) -> HomogPoly {
        HomogPoly::new(self.poly.pow(e), self.declared_degree * e as usize)
    }

    /// Homogeneous coefficient of `t0^j t1^(d-j)`.
    pub fn hcoeff(&self, j: usize) -> Rat {
        if j > self.declared_degree {
            Rat::zero()
        } else {
            self.poly.coeff(j)
        }
    }

    /// Substitute binary forms for `[t0 : t1]`: the pullback of `self` under
    /// `[t0 : t1] = [p(s) : q(s)]` where `p`, `q` carry declared degree `e`.
    /// The result has declared degree `d * e`.
    pub fn subst_forms(&self, p: &HomogPoly, q: &HomogPoly) -> HomogPoly {
        assert_eq!(p.declared_degree, q.declared_degree);
        let e = p.declared_degree;
        let var = p.var();
        let d = self.declared_degree;
        let mut acc = UniPoly::zero(var);
        // t1-power deficiency must be materialized: work with all d+1 slots.
        for j in 0..=d {
            let c = self.hcoeff(j);
            if c.is_zero() {
                continue;
            }
            // c * p^j * q^(d-j), each affinely with its own infinity deficiency
            let term = p.pow(j as u32).mul(&q.pow((d - j) as u32));
            acc = acc.add(&term.poly.scale(&c));
        }
        HomogPoly::new(acc, d * e)
    }

    /// Evaluate at a projective rational point.
    pub fn eval_point(&self, pt: &ProjPoint) -> Rat {
        match pt {
            ProjPoint::Finite(x) => self.poly.eval(x),
            ProjPoint::Infinity => {
                if self.val_infinity() > 0 {
                    Rat::zero()
                } else {
                    self.poly.leading()
                }
            }
        }
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)?;
        if self.val_infinity() > 0 {
            write!(f, " [deg {}]", self.declared_degree)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational point of the projective line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ProjPoint {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "t={}", x),
            ProjPoint::Infinity => write!(f, "t=oo"),
        }
    }
}

/// A place of the projective line over Q: a monic squarefree polynomial, or
/// the point at infinity.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub enum Place {
    Finite(UniPoly),
    Infinity,
}

impl Place {
    pub fn finite(p: UniPoly) -> Result<Self, String> {
        if p.is_constant() {
            return Err("place polynomial must be nonconstant".into());
        }
        if !p.is_squarefree() {
            return Err(format!("place polynomial {} is not squarefree", p));
        }
        Ok(Place::Finite(p.monic()))
    }

    /// Residue degree of the place.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }

    /// The rational point carried by a degree-one place.
    pub fn rational_point(&self) -> Option<ProjPoint> {
        match self {
            Place::Finite(p) if p.deg() == 1 => Some(ProjPoint::Finite(-&p.coeff(0))),
            Place::Finite(_) => None,
            Place::Infinity => Some(ProjPoint::Infinity),
        }
    }

    pub fn sort_key(&self) -> (usize, Option<UniPoly>) {
        match self {
            Place::Finite(p) => (p.deg(), Some(p.clone())),
            Place::Infinity => (usize::MAX, None),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => {
                if p.deg() == 1 {
                    write!(f, "t={}", -&p.coeff(0))
                } else {
                    write!(f, "{}=0", p)
                }
            }
            Place::Infinity => write!(f, "t=oo"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Deterministic place ordering: finite places by degree then coefficients,
/// infinity last.
pub fn cmp_place(a: &Place, b: &Place) -> std::cmp::Ordering {
    match (a, b) {
        (Place::Finite(p), Place::Finite(q)) => cmp_poly(p, q),
        (Place::Finite(_), Place::Infinity) => std::cmp::Ordering::Less,
        (Place::Infinity, Place::Finite(_)) => std::cmp::Ordering::Greater,
        (Place::Infinity, Place::Infinity) => std::cmp::Ordering::Equal,
    }
}

/// Vanishing order of a nonzero homogeneous polynomial at a place.
///
/// Finite places must be squarefree; at infinity this is the degree
/// deficiency. The gcd-free basis construction guarantees uniform valuations
/// for the places that reach the classifier.
pub fn valuation_at(f: &HomogPoly, place: &Place) -> Result<usize, String> {
    if f.is_zero() {
        return Err("valuation of the zero polynomial".into());
    }
    match place {
        Place::Infinity => Ok(f.val_infinity()),
        Place::Finite(p) => {
            if !p.is_squarefree() {
                return Err(format!("place {} is not squarefree", p));
            }
            Ok(f.poly.valuation(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::UniPoly;

    fn t(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints("t", coeffs)
    }

    #[test]
    fn valuations_finite_and_infinite() {
        // v_t(t^3 (t+1)) = 3
        let f = HomogPoly::exact(t(&[0, 0, 0, 1]).mul(&t(&[1, 1])));
        let at_zero = Place::finite(t(&[0, 1])).unwrap();
        assert_eq!(valuation_at(&f, &at_zero).unwrap(), 3);
        // degree-23 polynomial declared degree 24 has v_oo = 1
        let mut c = vec![0i64; 24];
        c[23] = 1;
        c[0] = 1;
        let g = HomogPoly::new(t(&c), 24);
        assert_eq!(valuation_at(&g, &Place::Infinity).unwrap(), 1);
    }

    #[test]
    fn nonsquarefree_place_rejected() {
        let f = HomogPoly::exact(t(&[0, 1]));
        let p = t(&[0, 0, 1]); // t^2
        assert!(Place::finite(p.clone()).is_err());
        assert!(valuation_at(&f, &Place::Finite(p)).is_err());
    }

    #[test]
    fn pullback_by_squares_doubles_valuations() {
        // f = t (t-1), declared 3 => v_oo = 1; pull back along [s0^2 : s1^2]
        let f = HomogPoly::new(t(&[0, -1, 1]), 3);
        let s2 = HomogPoly::new(UniPoly::from_ints("s", &[0, 0, 1]), 2);
        let one2 = HomogPoly::new(UniPoly::from_ints("s", &[1]), 2);
        let g = f.subst_forms(&s2, &one2);
        assert_eq!(g.declared_degree, 6);
        let s_place = Place::finite(UniPoly::from_ints("s", &[0, 1])).unwrap();
        assert_eq!(valuation_at(&g, &s_place).unwrap(), 2);
        assert_eq!(valuation_at(&g, &Place::Infinity).unwrap(), 2);
    }
}
