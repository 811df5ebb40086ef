//! The curve/isogeny identity suite: the maps between `E`, `Ehat`, `C`, and
//! `Chat` assembled as symbolic point maps, with every identity checked
//! exactly on the curve (coefficients `a`, `b`, `c` free indeterminates or
//! numeric specializations).

use super::curve::{
    compose_maps, duplication_map, maps_equal_on_curve, maps_into_curve, pullback_scalar,
    CurveSpec, PointMap,
};
use super::{SymPoly, SymRat};
use crate::rat::Rat;

/// The four curves of the construction and the maps between them, over a
/// given choice of coefficient expressions.
pub struct IsogenyMaps {
    /// `E: y^2 = x (x^2 + b x + a c)`
    pub e: CurveSpec,
    /// `Ehat: Y^2 = X (X^2 - 2 b X + b^2 - 4 a c)`
    pub ehat: CurveSpec,
    /// `C: v^2 = u^4 + b u^2 + a c`
    pub c_torsor: CurveSpec,
    /// `Chat: V^2 = a U^4 + b U^2 + c`
    pub chat: CurveSpec,
    /// `Ehathat: y^2 = x (x^2 + 4 b x + 16 a c)` (the double dual)
    pub ehathat: CurveSpec,
    /// `phihat : E -> Ehat`
    pub phi_hat: PointMap,
    /// `phi : Ehat -> E`
    pub phi: PointMap,
    /// translation by `tau` on `E`
    pub iota_e: PointMap,
    /// translation by `T` on `Ehat`
    pub iota_ehat: PointMap,
    /// `psi : Chat -> E`
    pub psi: PointMap,
    /// the Lemma-2.1 isomorphism `Ehat -> C` and its inverse
    pub torsor_iso: PointMap,
    pub torsor_iso_inv: PointMap,
    /// the Lemma-2.2 map `Ehat -> C`
    pub equivariant_map: PointMap,
}

/// Build all maps over coefficient expressions `a`, `b`, `c`.
pub fn build_maps(a: &SymPoly, b: &SymPoly, c: &SymPoly) -> IsogenyMaps {
    let ac = a.mul(c);
    let b2m4ac = b.mul(b).sub(&ac.scale(&Rat::from_int(4)));

    let e = CurveSpec::two_torsion("x", "y", a, b, c);
    let ehat = {
        let xx = SymPoly::var("X");
        let rhs = xx
            .pow(3)
            .sub(&b.scale(&Rat::from_int(2)).mul(&xx.pow(2)))
            .add(&b2m4ac.mul(&xx));
        CurveSpec::new("X", "Y", rhs)
    };
    let c_torsor = CurveSpec::quartic("u", "v", &SymPoly::one(), b, &ac);
    let chat = CurveSpec::quartic("U", "V", a, b, c);
    let ehathat = {
        let x = SymPoly::var("x");
        let rhs = x
            .pow(3)
            .add(&b.scale(&Rat::from_int(4)).mul(&x.pow(2)))
            .add(&ac.scale(&Rat::from_int(16)).mul(&x));
        CurveSpec::new("x", "y", rhs)
    };

    let xr = SymRat::var("x");
    let yr = SymRat::var("y");
    let xxr = SymRat::var("X");
    let yyr = SymRat::var("Y");
    let ur = SymRat::var("U");
    let vr = SymRat::var("V");
    let ac_r = SymRat::from_poly(ac.clone());
    let b_r = SymRat::from_poly(b.clone());
    let a_r = SymRat::from_poly(a.clone());
    let b2m4ac_r = SymRat::from_poly(b2m4ac.clone());

    // phihat: (x, y) |-> (y^2/x^2, (x^2 - ac) y / x^2)
    let phi_hat = PointMap::new(
        "x",
        "y",
        yr.mul(&yr).div(&xr.mul(&xr)),
        xr.mul(&xr).sub(&ac_r).mul(&yr).div(&xr.mul(&xr)),
    );
    // phi: (X, Y) |-> (Y^2/(4X^2), Y (X^2 - b^2 + 4ac) / (8X^2))
    let phi = PointMap::new(
        "X",
        "Y",
        yyr.mul(&yyr).div(&xxr.mul(&xxr).mul(&SymRat::int(4))),
        yyr.mul(&xxr.mul(&xxr).sub(&b2m4ac_r))
            .div(&xxr.mul(&xxr).mul(&SymRat::int(8))),
    );
    // iota_E: (x, y) |-> (ac/x, -ac y/x^2)
    let iota_e = PointMap::new(
        "x",
        "y",
        ac_r.div(&xr),
        ac_r.mul(&yr).div(&xr.mul(&xr)).neg(),
    );
    // iota_Ehat: (X, Y) |-> ((b^2-4ac)/X, -(b^2-4ac) Y/X^2)
    let iota_ehat = PointMap::new(
        "X",
        "Y",
        b2m4ac_r.div(&xxr),
        b2m4ac_r.mul(&yyr).div(&xxr.mul(&xxr)).neg(),
    );
    // psi: (U, V) |-> (a U^2, a U V)
    let psi = PointMap::new("U", "V", a_r.mul(&ur).mul(&ur), a_r.mul(&ur).mul(&vr));
    // Lemma 2.1: u = Y/(2X), v = (Y^2 + 2bX^2 - 2X^3)/(4X^2)
    let torsor_iso = PointMap::new(
        "X",
        "Y",
        yyr.div(&xxr.mul(&SymRat::int(2))),
        yyr.mul(&yyr)
            .add(&b_r.mul(&xxr).mul(&xxr).mul(&SymRat::int(2)))
            .sub(&xxr.pow(3).mul(&SymRat::int(2)))
            .div(&xxr.mul(&xxr).mul(&SymRat::int(4))),
    );
    // inverse: X = 2u^2 + b - 2v, Y = 2u (2u^2 - 2v + b)
    let ur_s = SymRat::var("u");
    let vr_s = SymRat::var("v");
    let x_expr = ur_s
        .mul(&ur_s)
        .mul(&SymRat::int(2))
        .add(&SymRat::from_poly(b.clone()))
        .sub(&vr_s.mul(&SymRat::int(2)));
    let torsor_iso_inv = PointMap::new(
        "u",
        "v",
        x_expr.clone(),
        ur_s.mul(&SymRat::int(2)).mul(&x_expr),
    );
    // Lemma 2.2: u = Y/(2X), v = (b^2 - 4ac - X^2)/(4X)
    let equivariant_map = PointMap::new(
        "X",
        "Y",
        yyr.div(&xxr.mul(&SymRat::int(2))),
        b2m4ac_r
            .sub(&xxr.mul(&xxr))
            .div(&xxr.mul(&SymRat::int(4))),
    );

    IsogenyMaps {
        e,
        ehat,
        c_torsor,
        chat,
        ehathat,
        phi_hat,
        phi,
        iota_e,
        iota_ehat,
        psi,
        torsor_iso,
        torsor_iso_inv,
        equivariant_map,
    }
}

/// One named identity check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Run the full identity suite over the given coefficient expressions.
/// With `a`, `b`, `c` free variables this is the symbolic proof; with
/// constants it is a specialization check.
pub fn run_suite(a: &SymPoly, b: &SymPoly, c: &SymPoly) -> Result<Vec<CheckResult>, String> {
    let m = build_maps(a, b, c);
    let mut out = Vec::new();
    let mut check = |name: &str, r: Result<bool, String>| {
        let (pass, detail) = match r {
            Ok(p) => (p, String::new()),
            Err(e) => (false, e),
        };
        out.push(CheckResult { name: name.into(), pass, detail });
    };

    // the maps land where they should
    check("phihat maps E into Ehat", maps_into_curve(&m.phi_hat, &m.e, &m.ehat));
    check("phi maps Ehat into E", maps_into_curve(&m.phi, &m.ehat, &m.e));
    check("psi maps Chat into E", maps_into_curve(&m.psi, &m.chat, &m.e));
    check("iota_E maps E into E", maps_into_curve(&m.iota_e, &m.e, &m.e));

    // composition identities
    let dup_e = duplication_map(&m.e);
    let dup_ehat = duplication_map(&m.ehat);
    check(
        "phi o phihat = duplication on E",
        compose_maps(&m.phi, &m.phi_hat, &m.e).and_then(|f| maps_equal_on_curve(&f, &dup_e, &m.e)),
    );
    check(
        "phihat o phi = duplication on Ehat",
        compose_maps(&m.phi_hat, &m.phi, &m.ehat)
            .and_then(|f| maps_equal_on_curve(&f, &dup_ehat, &m.ehat)),
    );
    check(
        "phihat o iota_E = phihat",
        compose_maps(&m.phi_hat, &m.iota_e, &m.e)
            .and_then(|f| maps_equal_on_curve(&f, &m.phi_hat, &m.e)),
    );
    check(
        "iota_E o iota_E = id",
        compose_maps(&m.iota_e, &m.iota_e, &m.e)
            .and_then(|f| maps_equal_on_curve(&f, &PointMap::identity("x", "y"), &m.e)),
    );
    check(
        "identity o phihat = phihat",
        compose_maps(&PointMap::identity("X", "Y"), &m.phi_hat, &m.e)
            .and_then(|f| maps_equal_on_curve(&f, &m.phi_hat, &m.e)),
    );
    // psi o iota_Chat = psi with iota_Chat: (U, V) |-> (-U, -V)
    let iota_chat = PointMap::new("U", "V", SymRat::var("U").neg(), SymRat::var("V").neg());
    check(
        "psi o iota_Chat = psi",
        compose_maps(&m.psi, &iota_chat, &m.chat)
            .and_then(|f| maps_equal_on_curve(&f, &m.psi, &m.chat)),
    );

    // Lemma 2.1: the torsor C is isomorphic to Ehat
    check("torsor iso maps Ehat into C", maps_into_curve(&m.torsor_iso, &m.ehat, &m.c_torsor));
    check(
        "torsor iso inverse maps C into Ehat",
        maps_into_curve(&m.torsor_iso_inv, &m.c_torsor, &m.ehat),
    );
    check(
        "torsor iso inverse o iso = id on Ehat",
        compose_maps(&m.torsor_iso_inv, &m.torsor_iso, &m.ehat)
            .and_then(|f| maps_equal_on_curve(&f, &PointMap::identity("X", "Y"), &m.ehat)),
    );
    check(
        "torsor iso o inverse = id on C",
        compose_maps(&m.torsor_iso, &m.torsor_iso_inv, &m.c_torsor)
            .and_then(|f| maps_equal_on_curve(&f, &PointMap::identity("u", "v"), &m.c_torsor)),
    );

    // Lemma 2.2 equivariance
    let hyperell = PointMap::new("X", "Y", SymRat::var("X"), SymRat::var("Y").neg());
    let flip_u = PointMap::new("u", "v", SymRat::var("u").neg(), SymRat::var("v"));
    let flip_uv = PointMap::new("u", "v", SymRat::var("u").neg(), SymRat::var("v").neg());
    check(
        "lemma-2.2 map intertwines (X,Y)->(X,-Y) with (u,v)->(-u,v)",
        (|| {
            let lhs = compose_maps(&m.equivariant_map, &hyperell, &m.ehat)?;
            let rhs = compose_maps(&flip_u, &m.equivariant_map, &m.ehat)?;
            maps_equal_on_curve(&lhs, &rhs, &m.ehat)
        })(),
    );
    check(
        "lemma-2.2 map intertwines iota_Ehat with (u,v)->(-u,-v)",
        (|| {
            let lhs = compose_maps(&m.equivariant_map, &m.iota_ehat, &m.ehat)?;
            let rhs = compose_maps(&flip_uv, &m.equivariant_map, &m.ehat)?;
            maps_equal_on_curve(&lhs, &rhs, &m.ehat)
        })(),
    );

    // double dual: Ehathat is isomorphic to E under (x, y) -> (4x, 8y)
    let scale_map = PointMap::new(
        "x",
        "y",
        SymRat::var("x").mul(&SymRat::int(4)),
        SymRat::var("y").mul(&SymRat::int(8)),
    );
    check("(x,y)->(4x,8y) maps E into the double dual", maps_into_curve(&scale_map, &m.e, &m.ehathat));

    // one-form pullback scalars
    let expect = |r: Result<SymRat, String>, n: i64| -> Result<bool, String> {
        let v = r?;
        Ok(v == SymRat::int(n))
    };
    check("pullback of phi is 2", expect(pullback_scalar(&m.phi, &m.ehat, &m.e), 2));
    check("pullback of phihat is 1", expect(pullback_scalar(&m.phi_hat, &m.e, &m.ehat), 1));
    check("pullback of iota_E is 1", expect(pullback_scalar(&m.iota_e, &m.e, &m.e), 1));
    check("pullback of psi is 2", expect(pullback_scalar(&m.psi, &m.chat, &m.e), 2));
    check(
        "pullback multiplicativity for (phi, phihat)",
        (|| {
            let two = compose_maps(&m.phi, &m.phi_hat, &m.e)?;
            let s = pullback_scalar(&two, &m.e, &m.e)?;
            let s1 = pullback_scalar(&m.phi, &m.ehat, &m.e)?;
            let s2 = pullback_scalar(&m.phi_hat, &m.e, &m.ehat)?;
            Ok(s == s1.mul(&s2))
        })(),
    );

    Ok(out)
}

/// The symbolic suite with `a`, `b`, `c` free.
pub fn run_symbolic_suite() -> Result<Vec<CheckResult>, String> {
    run_suite(&SymPoly::var("a"), &SymPoly::var("b"), &SymPoly::var("c"))
}

/// Specialize the suite at a rational triple; the discriminant must not vanish.
pub fn run_specialized_suite(a: &Rat, b: &Rat, c: &Rat) -> Result<Vec<CheckResult>, String> {
    let ac = a * c;
    let delta = &(&ac * &ac) * &(&(b * b) - &(&Rat::from_int(4) * &ac));
    if delta.is_zero() {
        return Err("specialization hits the discriminant locus".into());
    }
    run_suite(
        &SymPoly::constant(a.clone()),
        &SymPoly::constant(b.clone()),
        &SymPoly::constant(c.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_suite_passes() {
        let results = run_symbolic_suite().unwrap();
        for r in &results {
            assert!(r.pass, "failed: {} {}", r.name, r.detail);
        }
        assert!(results.len() >= 15);
    }

    #[test]
    fn specialization_suite_passes() {
        for (a, b, c) in [(1i64, 0, 4), (2, 3, 5), (-3, 7, 2), (5, -1, 1)] {
            let results =
                run_specialized_suite(&Rat::from_int(a), &Rat::from_int(b), &Rat::from_int(c))
                    .unwrap();
            for r in &results {
                assert!(r.pass, "failed at ({},{},{}): {}", a, b, c, r.name);
            }
        }
    }

    #[test]
    fn discriminant_specialization_rejected() {
        // b^2 = 4ac makes the curve singular
        assert!(run_specialized_suite(&Rat::one(), &Rat::from_int(2), &Rat::one()).is_err());
    }
}
