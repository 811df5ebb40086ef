//! Elliptic curves with rational two-torsion, their degree-two isogenies, the
//! associated quartic torsors, and rational-point certificates.
//!
//! The base curve is `E: y^2 = x (x^2 + b x + a c)` with the factorization
//! `(a, c)` of the last coefficient recorded; the quotient by the order-two
//! subgroup `{sigma, tau}` is `Y^2 = X (X^2 - 2 b X + b^2 - 4 a c)`. All of
//! this is generic over the coefficient field, so the same code runs over Q,
//! over Q(t), and over the symbolic fraction field used in identity proofs.

use crate::ratfunc::Coeff;
use serde::Serialize;
use std::fmt;

/// `y^2 = x (x^2 + b x + a c)`, smooth, with the factorization `(a, c)` kept.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTorsionCurve<F: Coeff> {
    pub a: F,
    pub b: F,
    pub c: F,
}

/// `V^2 = q4 U^4 + q2 U^2 + q0`, smooth.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticTorsor<F: Coeff> {
    pub q4: F,
    pub q2: F,
    pub q0: F,
}

/// An affine point or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum PointXY<F: Coeff> {
    Finite { x: F, y: F },
    Infinity,
}

impl<F: Coeff> PointXY<F> {
    pub fn finite(x: F, y: F) -> Self {
        PointXY::Finite { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointXY::Infinity)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveError {
    Singular(String),
    NotOnCurve(String),
    WitnessFailed(String),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::Singular(s) => write!(f, "singular curve: {}", s),
            CurveError::NotOnCurve(s) => write!(f, "point not on curve: {}", s),
            CurveError::WitnessFailed(s) => write!(f, "witness verification failed: {}", s),
        }
    }
}

impl std::error::Error for CurveError {}

impl<F: Coeff> TwoTorsionCurve<F> {
    /// Construct and check smoothness: `Delta_E = a^2 c^2 (b^2 - 4ac) != 0`.
    pub fn new(a: F, b: F, c: F) -> Result<Self, CurveError> {
        let e = TwoTorsionCurve { a, b, c };
        if e.discriminant().is_zero() {
            return Err(CurveError::Singular(format!(
                "Delta_E = a^2 c^2 (b^2 - 4ac) = 0 for (a, b, c) = ({}, {}, {})",
                e.a, e.b, e.c
            )));
        }
        Ok(e)
    }

    pub fn ac(&self) -> F {
        self.a.mul(&self.c)
    }

    /// `b^2 - 4 a c`.
    pub fn disc_quadratic(&self) -> F {
        self.b.mul(&self.b).sub(&F::from_int(4).mul(&self.ac()))
    }

    /// `Delta_E = a^2 c^2 (b^2 - 4 a c)`.
    pub fn discriminant(&self) -> F {
        let ac = self.ac();
        ac.mul(&ac).mul(&self.disc_quadratic())
    }

    /// Right-hand side `x (x^2 + b x + a c)` evaluated at `x`.
    pub fn rhs(&self, x: &F) -> F {
        x.mul(&x.mul(x).add(&self.b.mul(x)).add(&self.ac()))
    }

    pub fn contains(&self, p: &PointXY<F>) -> bool {
        match p {
            PointXY::Infinity => true,
            PointXY::Finite { x, y } => y.mul(y).sub(&self.rhs(x)).is_zero(),
        }
    }

    /// The marked two-torsion point `tau = (0, 0)`.
    pub fn tau(&self) -> PointXY<F> {
        PointXY::finite(F::zero(), F::zero())
    }

    /// The two-isogenous curve `Y^2 = X (X^2 - 2bX + b^2 - 4ac)` with the
    /// default factorization `(1, b^2 - 4ac)` of its last coefficient.
    pub fn isogenous_curve(&self) -> TwoTorsionCurve<F> {
        self.isogenous_curve_with(F::one(), self.disc_quadratic())
            .expect("isogenous curve of a smooth curve is smooth")
    }

    /// Same, with a caller-supplied factorization `ahat * chat = b^2 - 4ac`.
    pub fn isogenous_curve_with(&self, ahat: F, chat: F) -> Result<TwoTorsionCurve<F>, CurveError> {
        let target = self.disc_quadratic();
        if !ahat.mul(&chat).sub(&target).is_zero() {
            return Err(CurveError::WitnessFailed(format!(
                "factorization {} * {} != b^2 - 4ac",
                ahat, chat
            )));
        }
        TwoTorsionCurve::new(ahat, F::from_int(-2).mul(&self.b), chat)
    }

    /// The two torsors `C: v^2 = u^4 + b u^2 + ac` and
    /// `Chat: V^2 = a U^4 + b U^2 + c`.
    pub fn torsors(&self) -> (QuarticTorsor<F>, QuarticTorsor<F>) {
        let c_curve = QuarticTorsor {
            q4: F::one(),
            q2: self.b.clone(),
            q0: self.ac(),
        };
        let chat = QuarticTorsor {
            q4: self.a.clone(),
            q2: self.b.clone(),
            q0: self.c.clone(),
        };
        (c_curve, chat)
    }

    /// Forward isogeny `phihat : E -> Ehat`; `sigma` and `tau` map to `Sigma`.
    pub fn map_forward(&self, p: &PointXY<F>) -> Result<PointXY<F>, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::NotOnCurve(format!("{:?}", p)));
        }
        match p {
            PointXY::Infinity => Ok(PointXY::Infinity),
            PointXY::Finite { x, y } => {
                if x.is_zero() {
                    return Ok(PointXY::Infinity);
                }
                let x2 = x.mul(x);
                let inv = x2.inv().unwrap();
                let bx = y.mul(y).mul(&inv);
                let by = x2.sub(&self.ac()).mul(y).mul(&inv);
                Ok(PointXY::finite(bx, by))
            }
        }
    }

    /// Dual isogeny `phi : Ehat -> E` evaluated on a point of `self`'s
    /// isogenous curve; `Sigma` and `T` map to `sigma`.
    pub fn map_dual(&self, p: &PointXY<F>) -> Result<PointXY<F>, CurveError> {
        let ehat = self.isogenous_curve();
        if !ehat.contains(p) {
            return Err(CurveError::NotOnCurve(format!("{:?}", p)));
        }
        match p {
            PointXY::Infinity => Ok(PointXY::Infinity),
            PointXY::Finite { x, y } => {
                if x.is_zero() {
                    return Ok(PointXY::Infinity);
                }
                let x2 = x.mul(x);
                let four_x2_inv = F::from_int(4).mul(&x2).inv().unwrap();
                let bx = y.mul(y).mul(&four_x2_inv);
                let num = y.mul(&x2.sub(&self.b.mul(&self.b)).add(&F::from_int(4).mul(&self.ac())));
                let by = num.mul(&F::from_int(8).mul(&x2).inv().unwrap());
                Ok(PointXY::finite(bx, by))
            }
        }
    }

    /// Translation by the two-torsion point: `(x,y) + (0,0)`; interchanges
    /// `sigma` and `tau`.
    pub fn translate_by_two_torsion(&self, p: &PointXY<F>) -> Result<PointXY<F>, CurveError> {
        if !self.contains(p) {
            return Err(CurveError::NotOnCurve(format!("{:?}", p)));
        }
        match p {
            PointXY::Infinity => Ok(self.tau()),
            PointXY::Finite { x, y } => {
                if x.is_zero() {
                    return Ok(PointXY::Infinity);
                }
                let ac = self.ac();
                let xinv = x.inv().unwrap();
                let nx = ac.mul(&xinv);
                let ny = ac.mul(y).mul(&xinv).mul(&xinv).neg();
                Ok(PointXY::finite(nx, ny))
            }
        }
    }

    /// `psi : Chat -> E`, `(U, V) -> (a U^2, a U V)`.
    pub fn psi(&self, u: &F, v: &F) -> Result<PointXY<F>, CurveError> {
        let (_, chat) = self.torsors();
        if !chat.contains(u, v) {
            return Err(CurveError::NotOnCurve(format!("({}, {}) not on Chat", u, v)));
        }
        let x = self.a.mul(&u.mul(u));
        let y = self.a.mul(&u.mul(v));
        let p = PointXY::finite(x, y);
        debug_assert!(self.contains(&p));
        Ok(p)
    }

    /// `j = c4^3 / Delta` with `c4 = 16 (b^2 - 3ac)`, `Delta = 16 (ac)^2 (b^2 - 4ac)`.
    pub fn j_invariant(&self) -> F {
        let ac = self.ac();
        let b2 = self.b.mul(&self.b);
        let c4 = F::from_int(16).mul(&b2.sub(&F::from_int(3).mul(&ac)));
        let delta = F::from_int(16)
            .mul(&ac.mul(&ac))
            .mul(&b2.sub(&F::from_int(4).mul(&ac)));
        c4.mul(&c4).mul(&c4).div(&delta)
    }
}

impl<F: Coeff> QuarticTorsor<F> {
    pub fn new(q4: F, q2: F, q0: F) -> Result<Self, CurveError> {
        let t = QuarticTorsor { q4, q2, q0 };
        if t.discriminant().is_zero() {
            return Err(CurveError::Singular(format!(
                "torsor discriminant 16 q4 q0 (q2^2 - 4 q4 q0)^2 = 0 for ({}, {}, {})",
                t.q4, t.q2, t.q0
            )));
        }
        Ok(t)
    }

    /// `16 q4 q0 (q2^2 - 4 q4 q0)^2`; equals `Delta_Ehat` for both torsors of a curve.
    pub fn discriminant(&self) -> F {
        let prod = self.q4.mul(&self.q0);
        let d = self.q2.mul(&self.q2).sub(&F::from_int(4).mul(&prod));
        F::from_int(16).mul(&prod).mul(&d).mul(&d)
    }

    pub fn rhs(&self, u: &F) -> F {
        let u2 = u.mul(u);
        self.q4.mul(&u2).mul(&u2).add(&self.q2.mul(&u2)).add(&self.q0)
    }

    pub fn contains(&self, u: &F, v: &F) -> bool {
        v.mul(v).sub(&self.rhs(u)).is_zero()
    }
}

/// How a rational point on the torsor `Chat` is certified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RationalPointCert<F: Coeff + Serialize> {
    /// `a = alpha^2`: the two points at infinity `[1 : +-alpha : 0]` are rational.
    SquareA { alpha: F },
    /// `c = g^2`: the points `(0, +-g)` are rational.
    SquareC { g: F },
    /// Lemma-convention witness `b = -e - 2 a f^2`, `c = a f^4 + e f^2 + g^2`;
    /// certifies the point `(f, g)` on `Chat` by direct substitution.
    Witness { e: F, f: F, g: F },
    /// A witness supplied in the theorem-(14) sign convention
    /// (`b = e + 2 a f^2`, `c = f^2 (e + a f^2) + g^2`), accepted and
    /// converted. The certified point sits at `U^2 = -f^2`, so it is rational
    /// over the base field only when `f = 0`; the sign discrepancy between the
    /// two conventions is reported, not resolved.
    WitnessTheoremForm { e: F, f: F, g: F, point_rational: bool },
    /// No certificate; nonexistence is never asserted.
    Unknown,
}

/// A witness for the rational-point criterion, in either sign convention.
#[derive(Clone, Debug)]
pub enum Witness<F: Coeff> {
    /// Lemma convention: `b = -e - 2af^2`, `c = af^4 + ef^2 + g^2`.
    Lemma { e: F, f: F, g: F },
    /// Theorem-(14) convention: `b = e + 2af^2`, `c = f^2(e + af^2) + g^2`.
    Theorem { e: F, f: F, g: F },
}

/// Decide a rational-point certificate for `Chat`.
///
/// The square tests are decided exactly via exact square roots; a witness is
/// accepted only when its identities verify exactly, and the certified point
/// is re-checked by substitution into the torsor equation.
pub fn rational_point_cert<F: Coeff + Serialize>(
    e_curve: &TwoTorsionCurve<F>,
    witness: Option<Witness<F>>,
) -> Result<RationalPointCert<F>, CurveError> {
    if let Some(alpha) = e_curve.a.sqrt_exact() {
        if alpha.mul(&alpha).sub(&e_curve.a).is_zero() {
            return Ok(RationalPointCert::SquareA { alpha });
        }
    }
    if let Some(g) = e_curve.c.sqrt_exact() {
        if g.mul(&g).sub(&e_curve.c).is_zero() {
            return Ok(RationalPointCert::SquareC { g });
        }
    }
    let (a, b, c) = (&e_curve.a, &e_curve.b, &e_curve.c);
    match witness {
        None => Ok(RationalPointCert::Unknown),
        Some(Witness::Lemma { e, f, g }) => {
            let f2 = f.mul(&f);
            let af2 = a.mul(&f2);
            let b_residual = b.add(&e).add(&F::from_int(2).mul(&af2));
            let c_residual = c.sub(&af2.mul(&f2)).sub(&e.mul(&f2)).sub(&g.mul(&g));
            if !b_residual.is_zero() || !c_residual.is_zero() {
                return Err(CurveError::WitnessFailed(format!(
                    "lemma-form witness residuals: b + e + 2af^2 = {}, c - af^4 - ef^2 - g^2 = {}",
                    b_residual, c_residual
                )));
            }
            // the point (f, g) lies on Chat: a f^4 + b f^2 + c = g^2
            let (_, chat) = e_curve.torsors();
            if !chat.contains(&f, &g) {
                return Err(CurveError::WitnessFailed(
                    "verified lemma witness but (f, g) is not on Chat (internal inconsistency)".into(),
                ));
            }
            Ok(RationalPointCert::Witness { e, f, g })
        }
        Some(Witness::Theorem { e, f, g }) => {
            let f2 = f.mul(&f);
            let af2 = a.mul(&f2);
            let b_residual = b.sub(&e).sub(&F::from_int(2).mul(&af2));
            let c_residual = c.sub(&f2.mul(&e.add(&af2))).sub(&g.mul(&g));
            if !b_residual.is_zero() || !c_residual.is_zero() {
                return Err(CurveError::WitnessFailed(format!(
                    "theorem-form witness residuals: b - e - 2af^2 = {}, c - f^2(e + af^2) - g^2 = {}",
                    b_residual, c_residual
                )));
            }
            // certified point has U^2 = -f^2: a f^4 - b f^2 + c = g^2 exactly
            let quartic_at = a.mul(&f2).mul(&f2).sub(&b.mul(&f2)).add(c);
            if !quartic_at.sub(&g.mul(&g)).is_zero() {
                return Err(CurveError::WitnessFailed(
                    "theorem witness verified but U^2 = -f^2 substitution failed (internal inconsistency)".into(),
                ));
            }
            let point_rational = f.is_zero();
            Ok(RationalPointCert::WitnessTheoremForm { e, f, g, point_rational })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn curve(a: i64, b: i64, c: i64) -> TwoTorsionCurve<Rat> {
        TwoTorsionCurve::new(Rat::from_int(a), Rat::from_int(b), Rat::from_int(c)).unwrap()
    }

    #[test]
    fn smoothness_enforced() {
        assert!(TwoTorsionCurve::new(Rat::from_int(1), Rat::from_int(2), Rat::from_int(1)).is_err());
        assert!(TwoTorsionCurve::new(Rat::zero(), Rat::from_int(1), Rat::from_int(1)).is_err());
    }

    #[test]
    fn isogenous_curve_examples() {
        // (1,0,1) -> Y^2 = X(X^2 - 4)
        let e = curve(1, 0, 1);
        let ehat = e.isogenous_curve();
        assert_eq!(ehat.b, Rat::zero());
        assert_eq!(ehat.ac(), Rat::from_int(-4));
        // (1,0,4) -> Y^2 = X(X^2 - 16)
        let e = curve(1, 0, 4);
        let ehat = e.isogenous_curve();
        assert_eq!(ehat.ac(), Rat::from_int(-16));
        // Delta_Ehat = 16 ac (b^2-4ac)^2 as an exact identity
        let d = e.disc_quadratic();
        let expect = Rat::from_int(16) * e.ac() * (&d * &d);
        assert_eq!(ehat.discriminant(), expect);
    }

    #[test]
    fn forward_dual_and_duplication_chain() {
        let e = curve(1, 0, 4);
        // phihat((2,4)) = (4, 0)
        let p = PointXY::finite(Rat::from_int(2), Rat::from_int(4));
        assert!(e.contains(&p));
        let q = e.map_forward(&p).unwrap();
        assert_eq!(q, PointXY::finite(Rat::from_int(4), Rat::zero()));
        // phi((4,0)) = (0,0) = tau, consistent with [2](2,4) = (0,0)
        let r = e.map_dual(&q).unwrap();
        assert_eq!(r, e.tau());
        // phihat(tau) = Sigma
        assert_eq!(e.map_forward(&e.tau()).unwrap(), PointXY::Infinity);
    }

    #[test]
    fn translation_involution() {
        let e = curve(1, 0, 4);
        let p = PointXY::finite(Rat::from_int(2), Rat::from_int(4));
        let q = e.translate_by_two_torsion(&p).unwrap();
        assert_eq!(q, PointXY::finite(Rat::from_int(2), Rat::from_int(-4)));
        assert_eq!(e.translate_by_two_torsion(&q).unwrap(), p);
        // interchanges sigma and tau
        assert_eq!(e.translate_by_two_torsion(&PointXY::Infinity).unwrap(), e.tau());
        assert_eq!(e.translate_by_two_torsion(&e.tau()).unwrap(), PointXY::Infinity);
    }

    #[test]
    fn torsors_and_discriminants() {
        let e = curve(1, 0, 4);
        let (c, chat) = e.torsors();
        assert_eq!((c.q4.clone(), c.q2.clone(), c.q0.clone()),
                   (Rat::one(), Rat::zero(), Rat::from_int(4)));
        assert_eq!((chat.q4.clone(), chat.q2.clone(), chat.q0.clone()),
                   (Rat::one(), Rat::zero(), Rat::from_int(4)));
        let e2 = curve(4, 0, 1);
        let (c2, chat2) = e2.torsors();
        assert_ne!((chat2.q4.clone(), chat2.q2.clone(), chat2.q0.clone()),
                   (c2.q4.clone(), c2.q2.clone(), c2.q0.clone()));
        // Delta_C = Delta_Chat = Delta_Ehat
        for (a, b, c) in [(1i64, 0, 4), (4, 0, 1), (2, 3, 5), (-3, 7, 2)] {
            let e = curve(a, b, c);
            let (t1, t2) = e.torsors();
            assert_eq!(t1.discriminant(), t2.discriminant());
            assert_eq!(t1.discriminant(), e.isogenous_curve().discriminant());
        }
    }

    #[test]
    fn psi_examples() {
        let e = curve(1, 0, 4);
        // Chat: V^2 = U^4 + 4; (0, 2) -> (0, 0) = tau
        let p = e.psi(&Rat::zero(), &Rat::from_int(2)).unwrap();
        assert_eq!(p, e.tau());
        // off-torsor input rejected
        assert!(e.psi(&Rat::one(), &Rat::one()).is_err());
    }

    #[test]
    fn j_invariant_1728() {
        // (1,0,1): j = 1728; oracle: the short Weierstrass curve y^2 = x^3 + x
        // has c4 = -48, Delta = -64, j = (-48)^3 / -64 = 1728.
        let e = curve(1, 0, 1);
        assert_eq!(e.j_invariant(), Rat::from_int(1728));
        let oracle = {
            let c4 = Rat::from_int(-48);
            let delta = Rat::from_int(-64);
            &(&c4 * &c4) * &c4 / delta
        };
        assert_eq!(oracle, Rat::from_int(1728));
    }

    #[test]
    fn certificate_squares() {
        // a = 9 is a square
        let e = curve(9, 1, 2);
        match rational_point_cert(&e, None).unwrap() {
            RationalPointCert::SquareA { alpha } => assert_eq!(alpha, Rat::from_int(3)),
            other => panic!("expected SquareA, got {:?}", other),
        }
        // c = 4 is a square (a = 2 is not)
        let e = curve(2, 1, 4);
        match rational_point_cert(&e, None).unwrap() {
            RationalPointCert::SquareC { g } => {
                assert_eq!(g, Rat::from_int(2));
                let (_, chat) = e.torsors();
                assert!(chat.contains(&Rat::zero(), &g));
            }
            other => panic!("expected SquareC, got {:?}", other),
        }
        // neither square, no witness
        let e = curve(2, 1, 3);
        assert_eq!(rational_point_cert(&e, None).unwrap(), RationalPointCert::Unknown);
    }

    #[test]
    fn lemma_witness_certifies_point_on_torsor() {
        // build a curve from a chosen lemma witness: a=2, f=1, g=3, e=5
        // b = -e - 2af^2 = -9; c = af^4 + ef^2 + g^2 = 2 + 5 + 9 = 16
        let e_curve = curve(2, -9, 16);
        let w = Witness::Lemma { e: Rat::from_int(5), f: Rat::one(), g: Rat::from_int(3) };
        match rational_point_cert(&e_curve, Some(w)).unwrap() {
            // c = 16 is already a square, so the square test wins first
            RationalPointCert::SquareC { g } => assert_eq!(g, Rat::from_int(4)),
            other => panic!("unexpected cert {:?}", other),
        }
        // pick c non-square: a=2, f=1, g^2=9 -> use c = 2+5+9=16... adjust: e=4:
        // b = -4-4 = -8... c = 2+4+9 = 15 (not a square)
        let e_curve = curve(2, -8, 15);
        let w = Witness::Lemma { e: Rat::from_int(4), f: Rat::one(), g: Rat::from_int(3) };
        match rational_point_cert(&e_curve, Some(w)).unwrap() {
            RationalPointCert::Witness { f, g, .. } => {
                let (_, chat) = e_curve.torsors();
                assert!(chat.contains(&f, &g));
            }
            other => panic!("unexpected cert {:?}", other),
        }
        // corrupted witness is rejected with residuals
        let w = Witness::Lemma { e: Rat::from_int(4), f: Rat::one(), g: Rat::from_int(2) };
        assert!(matches!(
            rational_point_cert(&e_curve, Some(w)),
            Err(CurveError::WitnessFailed(_))
        ));
    }
}
