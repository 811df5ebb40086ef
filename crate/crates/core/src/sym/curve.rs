//! Curves `y^2 = rhs(x)` with symbolic parameters, rational point maps
//! between them, and the calculus needed to certify isogeny identities:
//! reduction modulo the curve relation, exact map equality, composition,
//! one-form pullback scalars, and the duplication law.

use super::{SymPoly, SymRat};
use crate::rat::Rat;
use std::collections::BTreeMap;

/// A genus-one curve presented as `y^2 = rhs(x)`, where `rhs` is a cubic or
/// quartic in `x` whose coefficients may involve free parameters.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub x_var: String,
    pub y_var: String,
    pub rhs: SymPoly,
}

impl CurveSpec {
    pub fn new(x_var: &str, y_var: &str, rhs: SymPoly) -> Self {
        assert!(!rhs.contains_var(y_var), "curve rhs must not involve {}", y_var);
        let d = rhs.degree_in(x_var);
        assert!(d == 3 || d == 4, "curve rhs must be cubic or quartic in {}", x_var);
        CurveSpec { x_var: x_var.into(), y_var: y_var.into(), rhs }
    }

    /// The two-torsion Weierstrass curve `y^2 = x (x^2 + b x + a c)` with
    /// given coefficient expressions.
    pub fn two_torsion(x_var: &str, y_var: &str, a: &SymPoly, b: &SymPoly, c: &SymPoly) -> Self {
        let x = SymPoly::var(x_var);
        let rhs = x.pow(3).add(&b.mul(&x.pow(2))).add(&a.mul(c).mul(&x));
        CurveSpec::new(x_var, y_var, rhs)
    }

    /// The quartic `y^2 = q4 x^4 + q2 x^2 + q0`.
    pub fn quartic(x_var: &str, y_var: &str, q4: &SymPoly, q2: &SymPoly, q0: &SymPoly) -> Self {
        let x = SymPoly::var(x_var);
        let rhs = q4.mul(&x.pow(4)).add(&q2.mul(&x.pow(2))).add(q0);
        CurveSpec::new(x_var, y_var, rhs)
    }
}

/// A rational map between curves, recorded with its source coordinates.
#[derive(Clone, Debug)]
pub struct PointMap {
    pub src_x: String,
    pub src_y: String,
    pub x_image: SymRat,
    pub y_image: SymRat,
}

impl PointMap {
    pub fn new(src_x: &str, src_y: &str, x_image: SymRat, y_image: SymRat) -> Self {
        assert!(!x_image.den.is_zero() && !y_image.den.is_zero());
        PointMap { src_x: src_x.into(), src_y: src_y.into(), x_image, y_image }
    }

    pub fn identity(x: &str, y: &str) -> Self {
        PointMap::new(x, y, SymRat::var(x), SymRat::var(y))
    }

    /// Evaluate at an explicit point with an assignment for the parameters.
    pub fn eval(&self, assignment: &BTreeMap<String, Rat>) -> Option<(Rat, Rat)> {
        Some((self.x_image.eval(assignment)?, self.y_image.eval(assignment)?))
    }
}

/// Rewrite `y^2 -> rhs(x)` until the numerator and denominator have `y`-degree
/// at most one, then rationalize the denominator by `y`-conjugation so it is
/// `y`-free. Errors if the denominator is identically zero on the curve.
pub fn reduce_on_curve(expr: &SymRat, curve: &CurveSpec) -> Result<SymRat, String> {
    let num = reduce_poly(&expr.num, curve);
    let den = reduce_poly(&expr.den, curve);
    // den = A + B y; multiply through by (A - B y)
    let (a, b) = split_linear_y(&den, &curve.y_var);
    if b.is_zero() {
        if a.is_zero() {
            return Err("division by an expression identically zero on the curve".into());
        }
        return Ok(SymRat::new(num, a));
    }
    let conj = a.sub(&b.mul(&SymPoly::var(&curve.y_var)));
    let new_den = reduce_poly(&den.mul(&conj), curve);
    let (da, db) = split_linear_y(&new_den, &curve.y_var);
    debug_assert!(db.is_zero());
    if da.is_zero() {
        return Err("division by an expression identically zero on the curve".into());
    }
    let new_num = reduce_poly(&num.mul(&conj), curve);
    Ok(SymRat::new(new_num, da))
}

/// Reduce a polynomial's `y`-degree below two using the curve relation.
fn reduce_poly(p: &SymPoly, curve: &CurveSpec) -> SymPoly {
    let y = &curve.y_var;
    let deg = p.degree_in(y);
    if deg < 2 {
        return p.clone();
    }
    let coeffs = p.coeffs_in(y);
    let mut even = SymPoly::zero();
    let mut odd = SymPoly::zero();
    // precompute rhs powers
    let max_pow = (deg / 2) as usize;
    let mut rhs_pows = Vec::with_capacity(max_pow + 1);
    rhs_pows.push(SymPoly::one());
    for i in 1..=max_pow {
        rhs_pows.push(rhs_pows[i - 1].mul(&curve.rhs));
    }
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let q = k / 2;
        let term = c.mul(&rhs_pows[q]);
        if k % 2 == 0 {
            even = even.add(&term);
        } else {
            odd = odd.add(&term);
        }
    }
    even.add(&odd.mul(&SymPoly::var(y)))
}

/// Split a polynomial of `y`-degree <= 1 as `(A, B)` with `p = A + B y`.
fn split_linear_y(p: &SymPoly, y: &str) -> (SymPoly, SymPoly) {
    let coeffs = p.coeffs_in(y);
    let a = coeffs.first().cloned().unwrap_or_else(SymPoly::zero);
    let b = coeffs.get(1).cloned().unwrap_or_else(SymPoly::zero);
    assert!(coeffs.len() <= 2, "split_linear_y on unreduced polynomial");
    (a, b)
}

/// Does the expression reduce to zero on the curve?
pub fn is_zero_on_curve(expr: &SymRat, curve: &CurveSpec) -> Result<bool, String> {
    let r = reduce_on_curve(expr, curve)?;
    Ok(r.num.is_zero())
}

/// Exact equality of two maps defined on the same source curve.
pub fn maps_equal_on_curve(m1: &PointMap, m2: &PointMap, curve: &CurveSpec) -> Result<bool, String> {
    assert_eq!(m1.src_x, m2.src_x);
    assert_eq!(m1.src_y, m2.src_y);
    let dx = m1.x_image.sub(&m2.x_image);
    let dy = m1.y_image.sub(&m2.y_image);
    Ok(is_zero_on_curve(&dx, curve)? && is_zero_on_curve(&dy, curve)?)
}

/// `outer` after `inner`, reduced on the inner map's source curve.
///
/// The outer map's source variables are bound to the inner images; the
/// composite is a map out of `inner_curve`.
pub fn compose_maps(outer: &PointMap, inner: &PointMap, inner_curve: &CurveSpec) -> Result<PointMap, String> {
    let mut bindings = BTreeMap::new();
    bindings.insert(outer.src_x.clone(), inner.x_image.clone());
    bindings.insert(outer.src_y.clone(), inner.y_image.clone());
    let x = reduce_on_curve(&outer.x_image.subst(&bindings), inner_curve)?;
    let y = reduce_on_curve(&outer.y_image.subst(&bindings), inner_curve)?;
    Ok(PointMap::new(&inner.src_x, &inner.src_y, x, y))
}

/// Check that `map` sends `source` into `target`: the target relation pulls
/// back to zero modulo the source relation.
pub fn maps_into_curve(map: &PointMap, source: &CurveSpec, target: &CurveSpec) -> Result<bool, String> {
    let rhs_at_image = {
        let mut bindings = BTreeMap::new();
        bindings.insert(target.x_var.clone(), map.x_image.clone());
        target.rhs.subst(&bindings)
    };
    let rel = map.y_image.mul(&map.y_image).sub(&rhs_at_image);
    is_zero_on_curve(&rel, source)
}

/// The scalar lambda with `map^*(dx_t / y_t) = lambda dx_s / y_s`.
///
/// Computed by symbolic differentiation with `dy = rhs'(x)/(2y) dx` and
/// reduction on the source curve; errors if the map does not send source into
/// target or if lambda fails to be constant in the fiber variables.
pub fn pullback_scalar(map: &PointMap, source: &CurveSpec, target: &CurveSpec) -> Result<SymRat, String> {
    if !maps_into_curve(map, source, target)? {
        return Err("map does not send the source curve into the target curve".into());
    }
    let x = &source.x_var;
    let y = &source.y_var;
    // total d/dx of the x-image: partial_x + partial_y * rhs'(x) / (2 y)
    let dx_part = map.x_image.derivative(x);
    let dy_part = map.x_image.derivative(y);
    let yprime = SymRat::new(
        source.rhs.derivative(x),
        SymPoly::var(y).scale(&Rat::from_int(2)),
    );
    let total = dx_part.add(&dy_part.mul(&yprime));
    // lambda = y_s * (d x_im / dx) / y_im
    let lambda = SymRat::var(y).mul(&total).div(&map.y_image);
    let reduced = reduce_on_curve(&lambda, source)?;
    // reduced = (A + B y) / E with E y-free; constant iff B = 0 and A/E is
    // free of x as a polynomial ratio
    let (a, b) = split_linear_y(&reduced.num, y);
    if !b.is_zero() {
        return Err(format!("pullback scalar is not fiberwise constant: {}", reduced));
    }
    let e = reduced.den.clone();
    if !a.contains_var(x) && !e.contains_var(x) {
        return Ok(SymRat::new(a, e));
    }
    // A and E may share an x-dependent factor; the quotient must be x-free.
    let da = a.degree_in(x);
    let de = e.degree_in(x);
    if da != de {
        return Err(format!("pullback scalar is not fiberwise constant: {}", reduced));
    }
    let a_top = a.coeffs_in(x).pop().unwrap();
    let e_top = e.coeffs_in(x).pop().unwrap();
    // candidate lambda = a_top / e_top; verify a * e_top == e * a_top exactly
    if a.mul(&e_top) == e.mul(&a_top) {
        Ok(SymRat::new(a_top, e_top))
    } else {
        Err(format!("pullback scalar is not fiberwise constant: {}", reduced))
    }
}

/// Chord-tangent duplication on `y^2 = x^3 + s2 x^2 + s1 x + s0` (monic cubic).
pub fn duplication_map(curve: &CurveSpec) -> PointMap {
    let x = &curve.x_var;
    let y = &curve.y_var;
    assert_eq!(curve.rhs.degree_in(x), 3, "duplication needs a cubic model");
    let coeffs = curve.rhs.coeffs_in(x);
    assert!(coeffs[3].constant_value() == Some(Rat::one()), "duplication needs a monic cubic");
    let s2 = coeffs[2].clone();
    let slope = SymRat::new(
        curve.rhs.derivative(x),
        SymPoly::var(y).scale(&Rat::from_int(2)),
    );
    let xr = SymRat::var(x);
    let yr = SymRat::var(y);
    let x2 = slope
        .mul(&slope)
        .sub(&SymRat::from_poly(s2))
        .sub(&xr.mul(&SymRat::int(2)));
    let y2 = slope.mul(&xr.sub(&x2)).sub(&yr);
    let x2 = reduce_on_curve(&x2, curve).expect("duplication x-coordinate");
    let y2 = reduce_on_curve(&y2, curve).expect("duplication y-coordinate");
    PointMap::new(x, y, x2, y2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc_curve() -> CurveSpec {
        let a = SymPoly::var("a");
        let b = SymPoly::var("b");
        let c = SymPoly::var("c");
        CurveSpec::two_torsion("x", "y", &a, &b, &c)
    }

    #[test]
    fn reduce_basic() {
        let curve = abc_curve();
        // y^2 -> x^3 + b x^2 + a c x
        let y2 = SymRat::from_poly(SymPoly::var("y").pow(2));
        let r = reduce_on_curve(&y2, &curve).unwrap();
        assert_eq!(r, SymRat::from_poly(curve.rhs.clone()));
        // y^3 -> rhs * y
        let y3 = SymRat::from_poly(SymPoly::var("y").pow(3));
        let r3 = reduce_on_curve(&y3, &curve).unwrap();
        assert_eq!(r3, SymRat::from_poly(curve.rhs.mul(&SymPoly::var("y"))));
        // y^2/x^2 -> x + b + ac/x
        let frac = SymRat::new(SymPoly::var("y").pow(2), SymPoly::var("x").pow(2));
        let r = reduce_on_curve(&frac, &curve).unwrap();
        let x = SymRat::var("x");
        let expect = x
            .add(&SymRat::from_poly(SymPoly::var("b")))
            .add(&SymRat::from_poly(SymPoly::var("a").mul(&SymPoly::var("c"))).div(&x));
        assert_eq!(r, expect);
    }

    #[test]
    fn reduce_idempotent_and_ring_morphism() {
        let curve = abc_curve();
        let e1 = SymRat::new(
            SymPoly::var("y").pow(3).add(&SymPoly::var("x")),
            SymPoly::var("x").add(&SymPoly::var("y")),
        );
        let e2 = SymRat::new(
            SymPoly::var("y").pow(2).sub(&SymPoly::var("b")),
            SymPoly::var("x").pow(2),
        );
        let r1 = reduce_on_curve(&e1, &curve).unwrap();
        let r11 = reduce_on_curve(&r1, &curve).unwrap();
        // idempotence up to curve equivalence
        assert!(is_zero_on_curve(&r1.sub(&r11), &curve).unwrap());
        // morphism on samples
        let sum = reduce_on_curve(&e1.add(&e2), &curve).unwrap();
        let sum2 = r1.add(&reduce_on_curve(&e2, &curve).unwrap());
        assert!(is_zero_on_curve(&sum.sub(&sum2), &curve).unwrap());
        let prod = reduce_on_curve(&e1.mul(&e2), &curve).unwrap();
        let prod2 = r1.mul(&reduce_on_curve(&e2, &curve).unwrap());
        assert!(is_zero_on_curve(&prod.sub(&prod2), &curve).unwrap());
    }

    #[test]
    fn division_by_zero_on_curve_detected() {
        let curve = abc_curve();
        // y^2 - rhs is identically zero on the curve
        let zero = SymPoly::var("y").pow(2).sub(&curve.rhs);
        let expr = SymRat::new(SymPoly::one(), zero);
        assert!(reduce_on_curve(&expr, &curve).is_err());
    }

    #[test]
    fn duplication_on_numeric_curve() {
        // y^2 = x(x^2+4): [2](2,4) = (0,0)
        let curve = CurveSpec::two_torsion(
            "x",
            "y",
            &SymPoly::one(),
            &SymPoly::zero().add(&SymPoly::int(0)),
            &SymPoly::int(4),
        );
        let dup = duplication_map(&curve);
        let mut asg = BTreeMap::new();
        asg.insert("x".to_string(), Rat::from_int(2));
        asg.insert("y".to_string(), Rat::from_int(4));
        let (x2, y2) = dup.eval(&asg).unwrap();
        assert!(x2.is_zero());
        assert!(y2.is_zero());
    }
}
