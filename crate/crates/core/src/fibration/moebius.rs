//! Fractional linear transformations of the base line and the `j`-map
//! comparison used as the computable shadow of "isomorphic as elliptically
//! fibered surfaces": two models pass when a Moebius transformation found
//! from matched root data of `Delta` carries one `j`-map to the other exactly.

use super::{FiberReport, FibrationModel, KodairaType};
use crate::homog::{HomogPoly, ProjPoint};
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// A reduced `j`-map: a pair of forms of the same degree, `j = num/den`.
#[derive(Clone, Debug, PartialEq)]
pub struct JMap {
    pub num: UniPoly,
    pub den: UniPoly,
    pub degree: usize,
}

impl JMap {
    pub fn new(num: HomogPoly, den: HomogPoly) -> Self {
        assert_eq!(num.declared_degree, den.declared_degree, "j-map must have degree zero");
        assert!(!den.is_zero());
        let mut n = num.poly;
        let mut d = den.poly;
        if n.is_zero() {
            return JMap { num: n, den: UniPoly::one(&d.var), degree: 0 };
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n = n.exact_div(&g);
            d = d.exact_div(&g);
        }
        // strip a common power of t1 (shared degree deficiency)
        let degree = n.deg().max(d.deg());
        JMap { num: n, den: d, degree }
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(&self.num.coeff(0) / &self.den.coeff(0))
        } else {
            None
        }
    }

    /// Exact value at a projective point; `None` means a pole.
    pub fn eval(&self, p: &ProjPoint) -> Option<Rat> {
        let nh = HomogPoly::new(self.num.clone(), self.degree);
        let dh = HomogPoly::new(self.den.clone(), self.degree);
        let dv = dh.eval_point(p);
        if dv.is_zero() {
            return None;
        }
        Some(nh.eval_point(p) / dv)
    }

    /// Precompose with a Moebius transformation of the base: `j o M`.
    pub fn compose(&self, m: &Moebius) -> JMap {
        let var = &self.num.var;
        let p0 = HomogPoly::new(
            UniPoly::from_coeffs(var, vec![m.q.clone(), m.p.clone()]),
            1,
        );
        let p1 = HomogPoly::new(
            UniPoly::from_coeffs(var, vec![m.s.clone(), m.r.clone()]),
            1,
        );
        let nh = HomogPoly::new(self.num.clone(), self.degree).subst_forms(&p0, &p1);
        let dh = HomogPoly::new(self.den.clone(), self.degree).subst_forms(&p0, &p1);
        JMap::new(nh, dh)
    }
}

/// Equality of `j`-maps as rational functions.
pub fn jmaps_equal(a: &JMap, b: &JMap) -> bool {
    a.num.mul(&b.den) == b.num.mul(&a.den)
}

/// `t -> (p t + q)/(r t + s)` with `ps - qr != 0`, acting on `[t0 : t1]` as a
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Moebius {
    pub p: Rat,
    pub q: Rat,
    pub r: Rat,
    pub s: Rat,
}

impl Moebius {
    pub fn new(p: Rat, q: Rat, r: Rat, s: Rat) -> Option<Self> {
        let det = &(&p * &s) - &(&q * &r);
        if det.is_zero() {
            None
        } else {
            Some(Moebius { p, q, r, s })
        }
    }

    pub fn identity() -> Self {
        Moebius { p: Rat::one(), q: Rat::zero(), r: Rat::zero(), s: Rat::one() }
    }

    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        let (t0, t1) = match x {
            ProjPoint::Finite(v) => (v.clone(), Rat::one()),
            ProjPoint::Infinity => (Rat::one(), Rat::zero()),
        };
        let n0 = &(&self.p * &t0) + &(&self.q * &t1);
        let n1 = &(&self.r * &t0) + &(&self.s * &t1);
        if n1.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(n0 / n1)
        }
    }

    /// The unique transformation sending three distinct points to three
    /// distinct points, `src[i] -> dst[i]`.
    pub fn through(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Option<Moebius> {
        let a = to_zero_one_inf(src)?;
        let b = to_zero_one_inf(dst)?;
        // M = b^{-1} a
        let det_b = &(&b.p * &b.s) - &(&b.q * &b.r);
        if det_b.is_zero() {
            return None;
        }
        let binv = Moebius { p: b.s.clone(), q: -&b.q, r: -&b.r, s: b.p.clone() };
        let m = compose_matrices(&binv, &a);
        Moebius::new(m.p, m.q, m.r, m.s)
    }
}

fn proj_coords(x: &ProjPoint) -> (Rat, Rat) {
    match x {
        ProjPoint::Finite(v) => (v.clone(), Rat::one()),
        ProjPoint::Infinity => (Rat::one(), Rat::zero()),
    }
}

/// The matrix sending the three given points to `0`, `1`, `infinity`.
fn to_zero_one_inf(pts: &[ProjPoint; 3]) -> Option<Moebius> {
    let (p1, q1) = proj_coords(&pts[0]);
    let (p2, q2) = proj_coords(&pts[1]);
    let (p3, q3) = proj_coords(&pts[2]);
    // rows orthogonal to pts[0] and pts[2], scaled so pts[1] -> [1:1]
    let row1 = (q1.clone(), -&p1);
    let row2 = (q3.clone(), -&p3);
    let s1 = &(&row1.0 * &p2) + &(&row1.1 * &q2);
    let s2 = &(&row2.0 * &p2) + &(&row2.1 * &q2);
    if s1.is_zero() || s2.is_zero() {
        return None;
    }
    Moebius::new(&row1.0 * &s2, &row1.1 * &s2, &row2.0 * &s1, &row2.1 * &s1)
}

fn compose_matrices(m: &Moebius, n: &Moebius) -> Moebius {
    Moebius {
        p: &(&m.p * &n.p) + &(&m.q * &n.r),
        q: &(&m.p * &n.q) + &(&m.q * &n.s),
        r: &(&m.r * &n.p) + &(&m.s * &n.r),
        s: &(&m.r * &n.q) + &(&m.s * &n.s),
    }
}

/// Rational marked points of a fiber report: degree-one places with their type.
fn marked_points(rep: &FiberReport) -> Vec<(KodairaType, ProjPoint)> {
    let mut out = Vec::new();
    for e in &rep.entries {
        if e.kodaira == KodairaType::I(0) {
            continue;
        }
        if let Some(p) = e.place.rational_point() {
            out.push((e.kodaira, p));
        }
    }
    out
}

/// Pole order of the `j`-map at a fiber of the given type (`0` = no pole).
fn j_pole_order(t: KodairaType) -> usize {
    match t {
        KodairaType::I(n) => n,
        KodairaType::Istar(n) => n,
        _ => 0,
    }
}

/// Decide whether `j2 = j1 o M` for a Moebius transformation `M` found by
/// matching rational root data of `Delta` (type-preserving assignments of
/// three anchor points), verified exactly. Returns the witness on success.
pub fn jmap_equal_up_to_moebius(m1: &FibrationModel, m2: &FibrationModel) -> Result<Option<Moebius>, String> {
    let j1 = m1.jmap();
    let j2 = m2.jmap();
    if j1.is_constant() || j2.is_constant() {
        return Ok(if j1.constant_value() == j2.constant_value() && j1.is_constant() && j2.is_constant() {
            Some(Moebius::identity())
        } else {
            None
        });
    }
    if jmaps_equal(&j1, &j2) {
        return Ok(Some(Moebius::identity()));
    }
    let rep1 = m1.fiber_configuration().map_err(|e| e.to_string())?;
    let rep2 = m2.fiber_configuration().map_err(|e| e.to_string())?;
    let pts1 = marked_points(&rep1);
    let pts2 = marked_points(&rep2);
    if pts2.len() < 3 {
        return Ok(None);
    }
    // A Moebius with j1 o M = j2 must carry poles of j2 to poles of j1 with
    // equal orders, and poles are always marked. Anchoring on pole points
    // therefore makes a failed search a certificate of inequivalence whenever
    // three rational pole anchors exist; fiber types away from poles are not
    // Moebius invariants (quadratic twists move them), so for the remaining
    // anchors any type is allowed.
    let mut anchors: Vec<(KodairaType, ProjPoint)> = pts2
        .iter()
        .filter(|(t, _)| j_pole_order(*t) > 0)
        .cloned()
        .collect();
    let poles_only = anchors.len() >= 3;
    if !poles_only {
        anchors = pts2.clone();
    }
    let anchors: Vec<(KodairaType, ProjPoint)> = anchors.into_iter().take(3).collect();
    if anchors.len() < 3 {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<&ProjPoint>> = vec![vec![]];
    for (ty, _) in &anchors {
        let mut next = Vec::new();
        for partial in &candidates {
            for (t1, p1) in &pts1 {
                let compatible = if poles_only {
                    j_pole_order(*t1) == j_pole_order(*ty)
                } else {
                    t1 == ty
                };
                if compatible && !partial.iter().any(|q| *q == p1) {
                    let mut ext = partial.clone();
                    ext.push(p1);
                    next.push(ext);
                }
            }
        }
        candidates = next;
        if candidates.len() > 2000 {
            return Err("too many candidate anchor assignments".into());
        }
    }
    let src = [anchors[0].1.clone(), anchors[1].1.clone(), anchors[2].1.clone()];
    for cand in candidates {
        let dst = [cand[0].clone(), cand[1].clone(), cand[2].clone()];
        let m = match Moebius::through(&src, &dst) {
            Some(m) => m,
            None => continue,
        };
        // prefilter on j-values at the anchors
        let mut ok = true;
        for (i, (_, p)) in anchors.iter().enumerate() {
            let v2 = j2.eval(p);
            let v1 = j1.eval(&dst[i]);
            if v1 != v2 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        if jmaps_equal(&j1.compose(&m), &j2) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homog::HomogPoly;
    use crate::unipoly::UniPoly;

    fn h(coeffs: &[i64], d: usize) -> HomogPoly {
        HomogPoly::new(UniPoly::from_ints("t", coeffs), d)
    }

    fn generic_x() -> FibrationModel {
        FibrationModel::weierstrass(
            h(&[-1, 0, 0, 0, 1], 4),
            h(&[0, 0, 0, 0, 1], 4),
            h(&[-16, 0, 0, 0, 1], 4),
            "generic X",
        )
        .unwrap()
    }

    #[test]
    fn moebius_through_three_points() {
        let src = [
            ProjPoint::Finite(Rat::from_int(0)),
            ProjPoint::Finite(Rat::from_int(1)),
            ProjPoint::Infinity,
        ];
        let dst = [
            ProjPoint::Finite(Rat::from_int(3)),
            ProjPoint::Finite(Rat::from_int(5)),
            ProjPoint::Finite(Rat::from_int(-1)),
        ];
        let m = Moebius::through(&src, &dst).unwrap();
        for i in 0..3 {
            assert_eq!(m.apply(&src[i]), dst[i]);
        }
    }

    #[test]
    fn self_equivalence_and_translated_base() {
        let m = generic_x();
        assert!(jmap_equal_up_to_moebius(&m, &m).unwrap().is_some());
        // precompose the base with t -> 2t + 1
        let sub = |p: &HomogPoly| -> HomogPoly {
            let lin0 = HomogPoly::new(UniPoly::from_ints("t", &[1, 2]), 1);
            let lin1 = HomogPoly::new(UniPoly::from_ints("t", &[1]), 1);
            p.subst_forms(&lin0, &lin1)
        };
        let translated = FibrationModel::weierstrass(
            sub(&h(&[-1, 0, 0, 0, 1], 4)),
            sub(&h(&[0, 0, 0, 0, 1], 4)),
            sub(&h(&[-16, 0, 0, 0, 1], 4)),
            "translated X",
        )
        .unwrap();
        let w = jmap_equal_up_to_moebius(&m, &translated).unwrap();
        assert!(w.is_some());
        // and a genuinely different family does not match
        let other = FibrationModel::weierstrass(
            h(&[-1, 0, 0, 0, 1], 4),
            h(&[3, 1, 0, 0, 1], 4),
            h(&[-16, 0, 0, 0, 1], 4),
            "other X",
        )
        .unwrap();
        assert!(jmap_equal_up_to_moebius(&m, &other).unwrap().is_none());
    }
}
