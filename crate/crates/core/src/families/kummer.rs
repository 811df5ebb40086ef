//! Rosenhain moduli of genus-two curves, the derived `mu`-moduli and their
//! duality involution, and the explicit Weierstrass families attached to a
//! `mu`-triple, including the dual-moduli affine forms used to certify the
//! isomorphism claims at the level of `j`-maps.

use crate::fibration::{FibError, FibrationModel};
use crate::homog::HomogPoly;
use crate::rat::Rat;
use crate::unipoly::UniPoly;
use serde::{Deserialize, Serialize};

/// A genus-two curve `y^2 = x (x-1) (x - l1) (x - l2) (x - l3)` together with
/// a verified square root `L` of `4 l1 l2 l3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RosenhainTriple {
    pub l1: Rat,
    pub l2: Rat,
    pub l3: Rat,
    pub l_norm: Rat,
}

impl RosenhainTriple {
    /// The caller supplies `L`; it is verified, never computed by a square
    /// root, so everything stays inside the rationals.
    pub fn new(l1: Rat, l2: Rat, l3: Rat, l_norm: Rat) -> Result<Self, FibError> {
        let ls = [&l1, &l2, &l3];
        for l in &ls {
            if l.is_zero() || **l == Rat::one() {
                return Err(FibError::BadInput("lambda_i must avoid 0 and 1".into()));
            }
        }
        if l1 == l2 || l1 == l3 || l2 == l3 {
            return Err(FibError::BadInput("lambda_i must be pairwise distinct".into()));
        }
        let prod = &(&(&l1 * &l2) * &l3) * &Rat::from_int(4);
        if &l_norm * &l_norm != prod {
            return Err(FibError::BadInput(format!(
                "L^2 = {} but 4 l1 l2 l3 = {}",
                &l_norm * &l_norm,
                prod
            )));
        }
        if l_norm.is_zero() {
            return Err(FibError::BadInput("L must be nonzero".into()));
        }
        Ok(RosenhainTriple { l1, l2, l3, l_norm })
    }
}

/// The `mu`-moduli triple, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuTriple {
    pub mu1: Rat,
    pub mu2: Rat,
    pub mu3: Rat,
}

impl MuTriple {
    pub fn new(mu1: Rat, mu2: Rat, mu3: Rat) -> Result<Self, FibError> {
        if mu1 == mu2 || mu1 == mu3 || mu2 == mu3 {
            return Err(FibError::BadInput("mu_i must be pairwise distinct".into()));
        }
        Ok(MuTriple { mu1, mu2, mu3 })
    }

    pub fn as_array(&self) -> [Rat; 3] {
        [self.mu1.clone(), self.mu2.clone(), self.mu3.clone()]
    }
}

/// `mu_i = (lambda_i + lambda_j lambda_k) / L` (cyclic).
pub fn rosenhain_mu(r: &RosenhainTriple) -> Result<MuTriple, FibError> {
    let m = |li: &Rat, lj: &Rat, lk: &Rat| &(li + &(lj * lk)) / &r.l_norm;
    MuTriple::new(
        m(&r.l1, &r.l2, &r.l3),
        m(&r.l2, &r.l1, &r.l3),
        m(&r.l3, &r.l1, &r.l2),
    )
}

/// The dual moduli; an involution on its domain of definition.
pub fn dual_mu(m: &MuTriple) -> Result<MuTriple, FibError> {
    let one = Rat::one();
    let d23 = &m.mu2 - &m.mu3;
    if d23.is_zero() {
        return Err(FibError::BadInput("dual moduli undefined: mu2 = mu3".into()));
    }
    if m.mu1 == one || m.mu1 == -&one {
        return Err(FibError::BadInput("dual moduli undefined: mu1 = +-1".into()));
    }
    let two = Rat::from_int(2);
    let mu1c = &(&(&(&two * &m.mu1) - &m.mu2) - &m.mu3) / &d23;
    let core = &(&two * &(&m.mu1 - &m.mu2)) * &(&m.mu1 - &m.mu3);
    let mu2c = &mu1c - &(&core / &(&(&m.mu1 + &one) * &d23));
    let mu3c = &mu1c - &(&core / &(&(&m.mu1 - &one) * &d23));
    MuTriple::new(mu1c, mu2c, mu3c)
}

/// The weighted coefficients of the rank-17 family over `[u0 : u1]`:
/// `rho = (u0^2 - u1^2) u1`, `alpha = (mu2 - mu3)(u0 - mu1 u1)`,
/// `beta = (2 mu1 - mu2 - mu3) u0 + (2 mu2 mu3 - mu1 mu2 - mu1 mu3) u1`.
pub fn kummer_coefficients(m: &MuTriple) -> (HomogPoly, HomogPoly, HomogPoly) {
    let var = "u";
    let rho = HomogPoly::new(UniPoly::from_ints(var, &[-1, 0, 1]), 3);
    let d23 = &m.mu2 - &m.mu3;
    let alpha = HomogPoly::new(
        UniPoly::from_coeffs(var, vec![-&(&d23 * &m.mu1), d23.clone()]),
        1,
    );
    let two = Rat::from_int(2);
    let b1 = &(&(&two * &m.mu1) - &m.mu2) - &m.mu3;
    let b0 = &(&(&two * &(&m.mu2 * &m.mu3)) - &(&m.mu1 * &m.mu2)) - &(&m.mu1 * &m.mu3);
    let beta = HomogPoly::new(UniPoly::from_coeffs(var, vec![b0, b1]), 1);
    (rho, alpha, beta)
}

/// The models attached to a `mu`-triple.
#[derive(Clone, Debug)]
pub struct KummerModels {
    pub x: FibrationModel,
    pub y: FibrationModel,
    pub z: FibrationModel,
    /// `y^2 = x (x^2 + 2 u x + 1) prod_i (u - mu_i^dual)`, as a Weierstrass
    /// family (the twist absorbed); per the duality this is `X(mu)` again.
    pub x_affine_dual: FibrationModel,
    /// `Y^2 = X (X - 2u - 1)(X - 2u + 1) prod_i (u - mu_i^dual)`.
    pub y_affine_dual: FibrationModel,
    pub mu: MuTriple,
    pub mu_dual: MuTriple,
}

/// Build the rank-17 models for a `mu`-triple, plus the dual-moduli affine
/// forms. Degenerate triples (where the displayed coefficients fail
/// coprimality) are rejected.
pub fn kummer_models(m: &MuTriple) -> Result<KummerModels, FibError> {
    let (rho, alpha, beta) = kummer_coefficients(m);
    for (p, n) in [(&alpha, "alpha"), (&beta, "beta")] {
        if p.poly.is_zero() {
            return Err(FibError::BadInput(format!("degenerate mu-triple: {} = 0", n)));
        }
        if !p.poly.gcd(&rho.poly).is_one() {
            return Err(FibError::BadInput(format!(
                "degenerate mu-triple: {} shares a root with rho",
                n
            )));
        }
    }
    if !alpha.poly.gcd(&beta.poly).is_one() {
        return Err(FibError::BadInput("degenerate mu-triple: alpha and beta share a root".into()));
    }
    let a = alpha.mul(&rho);
    let b = beta.mul(&rho).scale(&Rat::from_int(2));
    let (x, y, z) = super::models_from_abc(&a, &b, &a, "kummer(mu)")?;
    let md = dual_mu(m)?;
    let x_affine_dual = x_affine_form(&md)?;
    let y_affine_dual = y_affine_form(&md)?;
    Ok(KummerModels {
        x,
        y,
        z,
        x_affine_dual,
        y_affine_dual,
        mu: m.clone(),
        mu_dual: md,
    })
}

fn sextic_twist(nu: &MuTriple) -> UniPoly {
    // s(u) = (u - nu1)(u - nu2)(u - nu3)
    let lin = |r: &Rat| UniPoly::from_coeffs("u", vec![-r, Rat::one()]);
    lin(&nu.mu1).mul(&lin(&nu.mu2)).mul(&lin(&nu.mu3))
}

/// `y^2 = x (x^2 + 2 u x + 1) s(u)` as the Weierstrass family
/// `(a, b, c) = (s, 2 u s, s)` of declared degrees `(4, 4, 4)`.
pub fn x_affine_form(nu: &MuTriple) -> Result<FibrationModel, FibError> {
    let s = sextic_twist(nu);
    let h = |p: UniPoly| HomogPoly::new(p, 4);
    let two_u = UniPoly::from_ints("u", &[0, 2]);
    FibrationModel::weierstrass(
        h(s.clone()),
        h(two_u.mul(&s)),
        h(s),
        "kummer X affine form (dual moduli)",
    )
}

/// `Y^2 = X (X - 2u - 1)(X - 2u + 1) s(u)` as the Weierstrass family
/// `(a, b, c) = ((2u - 1) s, -4 u s, (2u + 1) s)`.
pub fn y_affine_form(nu: &MuTriple) -> Result<FibrationModel, FibError> {
    let s = sextic_twist(nu);
    let h = |p: UniPoly| HomogPoly::new(p, 4);
    let lin = |c0: i64, c1: i64| UniPoly::from_ints("u", &[c0, c1]);
    FibrationModel::weierstrass(
        h(lin(-1, 2).mul(&s)),
        h(lin(0, -4).mul(&s)),
        h(lin(1, 2).mul(&s)),
        "kummer Y affine form (dual moduli)",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::parse_multiset;

    #[test]
    fn worked_moduli_chain() {
        // lambda = (2, 3, 6), L = 12: mu = (5/3, 5/4, 1)
        let r = RosenhainTriple::new(
            Rat::from_int(2),
            Rat::from_int(3),
            Rat::from_int(6),
            Rat::from_int(12),
        )
        .unwrap();
        let mu = rosenhain_mu(&r).unwrap();
        assert_eq!(mu.mu1, Rat::new(5, 3));
        assert_eq!(mu.mu2, Rat::new(5, 4));
        assert_eq!(mu.mu3, Rat::one());
        // dual: (13/3, 7/2, 1)
        let md = dual_mu(&mu).unwrap();
        assert_eq!(md.mu1, Rat::new(13, 3));
        assert_eq!(md.mu2, Rat::new(7, 2));
        assert_eq!(md.mu3, Rat::one());
        // involution
        let back = dual_mu(&md).unwrap();
        assert_eq!(back, mu);
    }

    #[test]
    fn l_is_verified_not_computed() {
        assert!(RosenhainTriple::new(
            Rat::from_int(2),
            Rat::from_int(3),
            Rat::from_int(6),
            Rat::from_int(11)
        )
        .is_err());
        assert!(RosenhainTriple::new(Rat::one(), Rat::from_int(3), Rat::from_int(6), Rat::from_int(12)).is_err());
    }

    #[test]
    fn dual_mu_denominator_errors() {
        let m = MuTriple::new(Rat::one(), Rat::from_int(3), Rat::from_int(5)).unwrap();
        assert!(dual_mu(&m).is_err());
    }

    #[test]
    fn generic_mu_models_have_kummer_fibers() {
        // mu = (2, 3, 7) avoids the rho-roots {1, -1, oo}
        let mu = MuTriple::new(Rat::from_int(2), Rat::from_int(3), Rat::from_int(7)).unwrap();
        let models = kummer_models(&mu).unwrap();
        let xr = models.x.fiber_configuration().unwrap();
        assert_eq!(xr.multiset(), parse_multiset("3I0* + I4 + 2I1").unwrap());
        let yr = models.y.fiber_configuration().unwrap();
        assert_eq!(yr.multiset(), parse_multiset("3I0* + 3I2").unwrap());
        // affine dual forms carry the same shapes
        let xa = models.x_affine_dual.fiber_configuration().unwrap();
        assert_eq!(xa.multiset(), parse_multiset("3I0* + I4 + 2I1").unwrap());
        let ya = models.y_affine_dual.fiber_configuration().unwrap();
        assert_eq!(ya.multiset(), parse_multiset("3I0* + 3I2").unwrap());
    }
}
