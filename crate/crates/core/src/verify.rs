//! The bundled verification corpus: every worked identity, fiber table,
//! branch locus, moduli duality, and engine property, packaged as named
//! fixtures grouped by acceptance criterion. The CLI's `verify-all` runs the
//! whole corpus; the acceptance test suite runs it criterion by criterion.

use crate::chl::{self, Choice, ModuliNine, ScaleTriple};

use crate::families::cover::{base_change_cover, BaseChange};
use crate::families::kummer::{
    dual_mu, kummer_models, rosenhain_mu, x_affine_form, MuTriple, RosenhainTriple,
};
use crate::families::sixlines::{
    bidegree_reconstruction_symbolic, intersection_table_matches_symbolically,
    tangency_condition_symbolic, SixLinesConfig,
};
use crate::families::{build_spec, height_pairing, models_from_abc, SpecKind};
use crate::fibration::branch::{branch_even_eight_report, BranchSide, Cover};
use crate::fibration::moebius::jmap_equal_up_to_moebius;
use crate::fibration::{parse_multiset, FibrationModel, KodairaType};
use crate::homog::{valuation_at, HomogPoly, Place};
use crate::isogeny::{rational_point_cert, RationalPointCert, TwoTorsionCurve, Witness};
use crate::rat::Rat;
use crate::ratfunc::{Coeff, RatFunc};
use crate::sym::suite::{run_specialized_suite, run_symbolic_suite};
use crate::sym::SymRat;
use crate::unipoly::{gcd_free_basis, squarefree_decompose, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A single named check.
pub struct Fixture {
    pub criterion: u32,
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn expect_true(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

fn h(coeffs: &[i64], d: usize) -> HomogPoly {
    HomogPoly::new(UniPoly::from_ints("t", coeffs), d)
}

fn generic_kind() -> SpecKind {
    SpecKind::Generic {
        a: h(&[-1, 0, 0, 0, 1], 4),
        b: h(&[0, 0, 0, 0, 1], 4),
        c: h(&[-16, 0, 0, 0, 1], 4),
    }
}

fn four_i4_kind() -> SpecKind {
    let a = UniPoly::from_ints("t", &[0, 1])
        .mul(&UniPoly::from_ints("t", &[-1, 1]))
        .mul(&UniPoly::from_ints("t", &[-2, 1]))
        .mul(&UniPoly::from_ints("t", &[-3, 1]));
    SpecKind::FourI4 { a: HomogPoly::new(a, 4), b: h(&[1, 0, 0, 0, 1], 4) }
}

fn four_i0star_kind() -> SpecKind {
    SpecKind::FourI0star { a: h(&[-1, 0, 0, 0, 1], 4), beta: Rat::new(17, 8) }
}

fn kummer17_kind() -> SpecKind {
    let rho = UniPoly::from_ints("t", &[0, 1])
        .mul(&UniPoly::from_ints("t", &[-1, 1]))
        .mul(&UniPoly::from_ints("t", &[1, 1]));
    SpecKind::Kummer17 {
        rho: HomogPoly::new(rho, 3),
        alpha: h(&[-2, 1], 1),
        beta: h(&[-3, 1], 1),
    }
}

/// A six-lines tuple satisfying every genericity condition.
fn sixlines_generic_kind() -> SpecKind {
    SpecKind::SixLinesParams {
        a: Rat::from_int(2),
        b: Rat::from_int(3),
        c: Rat::from_int(5),
        d: Rat::from_int(11),
    }
}

/// The quadratic triple `(2t^2 + 1, t^2 + t + 3, t^2 + 2)`: fully generic for
/// the `rho = t0 t1` family (in particular `beta2^2 != alpha2 gamma2`, so the
/// fiber at infinity stays `I0*`).
fn chl_kind() -> SpecKind {
    SpecKind::CHL14 {
        alpha: h(&[1, 0, 2], 2),
        beta: h(&[3, 1, 1], 2),
        gamma: h(&[2, 0, 1], 2),
    }
}

fn chl_nine() -> ModuliNine {
    ModuliNine::new(
        [Rat::from_int(2), Rat::zero(), Rat::one()],
        [Rat::one(), Rat::new(1, 2), Rat::from_int(3)],
        [Rat::one(), Rat::zero(), Rat::from_int(2)],
    )
}

fn check_tables(kind: &SpecKind, expect_x: &str, expect_y: &str, expect_z: &str) -> Result<(), String> {
    let fam = build_spec(kind).map_err(|e| e.to_string())?;
    let mut models = vec![("X", &fam.x, expect_x), ("Y", &fam.y, expect_y), ("Z", &fam.z, expect_z)];
    let zp;
    if let Some(z_prime) = &fam.z_prime {
        zp = z_prime.clone();
        models.push(("Z'", &zp, expect_z));
    }
    for (name, model, expect) in models {
        let rep = model.fiber_configuration().map_err(|e| e.to_string())?;
        let want = parse_multiset(expect)?;
        if rep.multiset() != want {
            return fail(format!(
                "{}: fibers {} != expected {}",
                name,
                rep.multiset_string(),
                expect
            ));
        }
        if rep.euler_total != 24 {
            return fail(format!("{}: Euler total {} != 24", name, rep.euler_total));
        }
    }
    Ok(())
}

fn delta_equal_up_to_unit(m1: &FibrationModel, m2: &FibrationModel) -> bool {
    let d1 = m1.delta();
    let d2 = m2.delta();
    d1.declared_degree == d2.declared_degree
        && d1.poly.scale(&d2.poly.leading()) == d2.poly.scale(&d1.poly.leading())
}

// ---------------------------------------------------------------- criterion 1

fn c1_symbolic_suite() -> Result<(), String> {
    let results = run_symbolic_suite()?;
    for r in &results {
        if !r.pass {
            return fail(format!("symbolic identity failed: {} {}", r.name, r.detail));
        }
    }
    expect_true(results.len() >= 20, "expected at least 20 symbolic checks")
}

// ---------------------------------------------------------------- criterion 2

fn c2_generic_family() -> Result<(), String> {
    check_tables(&generic_kind(), "8I2 + 8I1", "8I2 + 8I1", "8I2 + 8I1")?;
    let fam = build_spec(&generic_kind()).map_err(|e| e.to_string())?;
    // loci swap: over every root of ac the X fiber is I2 and the Y fiber I1;
    // over the octic b^2 - 4ac it is the other way around
    let xrep = fam.x.fiber_configuration().map_err(|e| e.to_string())?;
    let ac = fam.a.mul(&fam.c);
    let disc2 = fam.b.mul(&fam.b).sub(&ac.scale(&Rat::from_int(4)));
    for e in &xrep.entries {
        let v_ac = valuation_at(&ac, &e.place).map_err(|e| e)?;
        let v_d2 = valuation_at(&disc2, &e.place).map_err(|e| e)?;
        let (_, y_kind) = fam.y.local_kodaira(&e.place).map_err(|e| e.to_string())?;
        if v_ac > 0 {
            expect_true(
                e.kodaira == KodairaType::I(2) && y_kind == KodairaType::I(1),
                &format!("swap failed over an ac-root at {}", e.place),
            )?;
        }
        if v_d2 > 0 {
            expect_true(
                e.kodaira == KodairaType::I(1) && y_kind == KodairaType::I(2),
                &format!("swap failed over a disc-root at {}", e.place),
            )?;
        }
    }
    expect_true(delta_equal_up_to_unit(&fam.y, &fam.z), "Delta_Y != Delta_Z")
}

// ---------------------------------------------------------------- criterion 3

fn c3_four_i4() -> Result<(), String> {
    check_tables(&four_i4_kind(), "4I4 + 8I1", "12I2", "12I2")
}

fn c3_four_i0star() -> Result<(), String> {
    check_tables(&four_i0star_kind(), "4I0*", "4I0*", "4I0*")
}

fn c3_kummer17() -> Result<(), String> {
    check_tables(&kummer17_kind(), "3I0* + I4 + 2I1", "3I0* + 3I2", "3I0* + 3I2")?;
    // one I1 is pushed to infinity because beta - alpha is constant
    let fam = build_spec(&kummer17_kind()).map_err(|e| e.to_string())?;
    let rep = fam.x.fiber_configuration().map_err(|e| e.to_string())?;
    let inf = rep.entry_at(&Place::Infinity).ok_or("no fiber at infinity")?;
    expect_true(inf.kodaira == KodairaType::I(1), "expected I1 at infinity")
}

fn c3_sixlines() -> Result<(), String> {
    check_tables(&sixlines_generic_kind(), "2I0* + 2I4 + 4I1", "2I0* + 6I2", "2I0* + 6I2")
}

fn c3_sixlines_spec_tuple_observed() -> Result<(), String> {
    // the tuple (2, 3, 5, 7) satisfies a(d-1) = b(c-1), so beta - alpha is a
    // square of a linear form and the generic table degenerates; the observed
    // tables are frozen here from the exact classification
    let kind = SpecKind::SixLinesParams {
        a: Rat::from_int(2),
        b: Rat::from_int(3),
        c: Rat::from_int(5),
        d: Rat::from_int(7),
    };
    check_tables(&kind, "2I0* + 2I4 + I2 + 2I1", "2I0* + I4 + 4I2", "2I0* + I4 + 4I2")
}

fn c3_chl() -> Result<(), String> {
    check_tables(&chl_kind(), "2I0* + 4I2 + 4I1", "2I0* + 4I2 + 4I1", "2I0* + 4I2 + 4I1")
}

fn c3_chl_spec_tuple_observed() -> Result<(), String> {
    // (t^2+1, t^2+t+3, t^2+2) has beta2^2 = alpha2 gamma2, so beta^2 - alpha
    // gamma drops degree and the fiber at infinity is I1*; observed tables
    // frozen from the exact classification
    let kind = SpecKind::CHL14 {
        alpha: h(&[1, 0, 1], 2),
        beta: h(&[3, 1, 1], 2),
        gamma: h(&[2, 0, 1], 2),
    };
    check_tables(
        &kind,
        "I1* + I0* + 4I2 + 3I1",
        "I2* + I0* + 3I2 + 4I1",
        "I2* + I0* + 3I2 + 4I1",
    )
}

// ---------------------------------------------------------------- criterion 4

fn sides_at(
    x: &FibrationModel,
    cover: &Cover,
    locus: &HomogPoly,
    want: BranchSide,
    what: &str,
) -> Result<usize, String> {
    let rep = branch_even_eight_report(x, cover).map_err(|e| e.to_string())?;
    let mut count = 0usize;
    for e in &rep.entries {
        let v = valuation_at(locus, &e.place)?;
        if v > 0 {
            if e.side != want {
                return Err(format!("{}: side {} at {}, wanted {}", what, e.side, e.place, want));
            }
            count += e.count;
        }
    }
    Ok(count)
}

fn c4_generic_even_eights() -> Result<(), String> {
    let fam = build_spec(&generic_kind()).map_err(|e| e.to_string())?;
    let ac = fam.a.mul(&fam.c);
    // Phi: the eight non-neutral components over ac = 0
    let n = sides_at(&fam.x, &Cover::Phi, &ac, BranchSide::Tau, "generic Phi")?;
    expect_true(n == 8, "generic Phi branch must have all 8 components over ac = 0")?;
    // Psi: neutral over a = 0, non-neutral over c = 0
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    let na = sides_at(&fam.x, &psi, &fam.a, BranchSide::Sigma, "generic Psi over a")?;
    let nc = sides_at(&fam.x, &psi, &fam.c, BranchSide::Tau, "generic Psi over c")?;
    expect_true(na + nc == 8, "generic Psi branch must total 8")
}

fn c4_four_i4_even_eights() -> Result<(), String> {
    let fam = build_spec(&four_i4_kind()).map_err(|e| e.to_string())?;
    // Phi: components of the A3 fibers over a = 0 meeting neither section
    let n = sides_at(&fam.x, &Cover::Phi, &fam.a, BranchSide::Neither, "four-I4 Phi")?;
    expect_true(n == 8, "four-I4 Phi branch must have 8 components over a = 0")?;
    // Psi: the components meeting sigma or tau
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    let n = sides_at(&fam.x, &psi, &fam.a, BranchSide::SigmaAndTau, "four-I4 Psi")?;
    expect_true(n == 8, "four-I4 Psi branch must have 8 components over a = 0")
}

fn c4_four_i0star_even_eights() -> Result<(), String> {
    let fam = build_spec(&four_i0star_kind()).map_err(|e| e.to_string())?;
    let n = sides_at(&fam.x, &Cover::Phi, &fam.a, BranchSide::Neither, "four-I0* Phi")?;
    expect_true(n == 8, "four-I0* Phi: non-central components away from the sections")?;
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    let n = sides_at(&fam.x, &psi, &fam.a, BranchSide::SigmaAndTau, "four-I0* Psi")?;
    expect_true(n == 8, "four-I0* Psi: non-central components meeting sigma or tau")
}

fn c4_sixlines_even_eights() -> Result<(), String> {
    let (alpha, beta, rho) = match build_spec(&sixlines_generic_kind()) {
        Ok(_) => {
            let cfg = SixLinesConfig::new(
                Rat::from_int(2),
                Rat::from_int(3),
                Rat::from_int(5),
                Rat::from_int(11),
            )
            .map_err(|e| e.to_string())?;
            cfg.weierstrass_coefficients()
        }
        Err(e) => return Err(e.to_string()),
    };
    let fam = build_spec(&sixlines_generic_kind()).map_err(|e| e.to_string())?;
    let _ = beta;
    // Phi: everything away from the sections, over rho = 0 (D4) and alpha = 0 (A3)
    let nr = sides_at(&fam.x, &Cover::Phi, &rho, BranchSide::Neither, "six-lines Phi over rho")?;
    let na = sides_at(&fam.x, &Cover::Phi, &alpha, BranchSide::Neither, "six-lines Phi over alpha")?;
    expect_true(nr == 4 && na == 4, "six-lines Phi: 4 + 4 components")?;
    // Psi: components meeting sigma or tau
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    let nr = sides_at(&fam.x, &psi, &rho, BranchSide::SigmaAndTau, "six-lines Psi over rho")?;
    let na = sides_at(&fam.x, &psi, &alpha, BranchSide::SigmaAndTau, "six-lines Psi over alpha")?;
    expect_true(nr == 4 && na == 4, "six-lines Psi: 4 + 4 components")?;
    // Psi' (the Z' cover): A3 components away from the sections over alpha = 0,
    // D4 components meeting sigma or tau over rho = 0
    let psi_prime = Cover::PsiLike {
        name: "Psi'".into(),
        q4: rho.clone(),
        q0: alpha.mul(&alpha).mul(&rho),
    };
    let nr = sides_at(&fam.x, &psi_prime, &rho, BranchSide::SigmaAndTau, "Psi' over rho")?;
    let na = sides_at(&fam.x, &psi_prime, &alpha, BranchSide::Neither, "Psi' over alpha")?;
    expect_true(nr == 4 && na == 4, "Psi': 4 + 4 components")
}

fn c4_kummer17_even_eights() -> Result<(), String> {
    let fam = build_spec(&kummer17_kind()).map_err(|e| e.to_string())?;
    let (rho, alpha) = match kummer17_kind() {
        SpecKind::Kummer17 { rho, alpha, .. } => (rho, alpha),
        _ => unreachable!(),
    };
    let nr = sides_at(&fam.x, &Cover::Phi, &rho, BranchSide::Neither, "kummer Phi over rho")?;
    let na = sides_at(&fam.x, &Cover::Phi, &alpha, BranchSide::Neither, "kummer Phi over alpha")?;
    expect_true(nr == 6 && na == 2, "kummer Phi: 6 + 2 components")?;
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    let nr = sides_at(&fam.x, &psi, &rho, BranchSide::SigmaAndTau, "kummer Psi over rho")?;
    let na = sides_at(&fam.x, &psi, &alpha, BranchSide::SigmaAndTau, "kummer Psi over alpha")?;
    expect_true(nr == 6 && na == 2, "kummer Psi: 6 + 2 components")
}

fn c4_chl_even_eights() -> Result<(), String> {
    let fam = build_spec(&chl_kind()).map_err(|e| e.to_string())?;
    let (alpha, gamma) = match chl_kind() {
        SpecKind::CHL14 { alpha, gamma, .. } => (alpha, gamma),
        _ => unreachable!(),
    };
    let t0t1 = HomogPoly::new(UniPoly::x("t"), 2);
    let psi = Cover::PsiLike { name: "Psi".into(), q4: fam.a.clone(), q0: fam.c.clone() };
    // over gamma = 0: not meeting sigma; over alpha = 0: meeting sigma;
    // over t0 t1 = 0: the D4 components meeting sigma or tau
    let ng = sides_at(&fam.x, &psi, &gamma, BranchSide::Tau, "CHL Psi over gamma")?;
    let na = sides_at(&fam.x, &psi, &alpha, BranchSide::Sigma, "CHL Psi over alpha")?;
    let nt = sides_at(&fam.x, &psi, &t0t1, BranchSide::SigmaAndTau, "CHL Psi over t0 t1")?;
    expect_true(ng == 2 && na == 2 && nt == 4, "CHL Psi: 2 + 2 + 4 components")?;
    // Phi: the non-neutral A1 components over alpha gamma = 0 and the D4
    // components meeting neither section over t0 t1 = 0
    let ag = alpha.mul(&gamma);
    let nag = sides_at(&fam.x, &Cover::Phi, &ag, BranchSide::Tau, "CHL Phi over alpha gamma")?;
    let nt = sides_at(&fam.x, &Cover::Phi, &t0t1, BranchSide::Neither, "CHL Phi over t0 t1")?;
    expect_true(nag == 4 && nt == 4, "CHL Phi: 4 + 4 components")
}

fn c4_base_change_even_eight() -> Result<(), String> {
    let fam = build_spec(&sixlines_generic_kind()).map_err(|e| e.to_string())?;
    let cover = base_change_cover(&fam.y, BaseChange::Square, "s").map_err(|e| e.to_string())?;
    let rep = cover.model.fiber_configuration().map_err(|e| e.to_string())?;
    expect_true(
        rep.multiset() == parse_multiset("12I2")?,
        &format!("six-lines square pullback has {} instead of 12I2", rep.multiset_string()),
    )?;
    expect_true(cover.branch.total == 8, "base-change even eight must have 8 components")?;
    expect_true(
        cover
            .branch
            .entries
            .iter()
            .all(|e| e.side == BranchSide::AllNonCentral && e.fiber == KodairaType::Istar(0)),
        "base-change branch: all non-central D4 components over the two branch points",
    )?;
    // CHL: pullback of X has 8I2 + 8I1
    let chl = build_spec(&chl_kind()).map_err(|e| e.to_string())?;
    let cover = base_change_cover(&chl.x, BaseChange::Square, "s").map_err(|e| e.to_string())?;
    let rep = cover.model.fiber_configuration().map_err(|e| e.to_string())?;
    expect_true(
        rep.multiset() == parse_multiset("8I2 + 8I1")?,
        &format!("CHL square pullback has {} instead of 8I2 + 8I1", rep.multiset_string()),
    )
}

// ---------------------------------------------------------------- criterion 5

fn c5_condition14_witness() -> Result<(), String> {
    // the four-I0* family over Q(t): a = c = t^4 - 1, b = 2 beta a, beta = 17/8
    let a = RatFunc::from_poly(UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]));
    let beta = Rat::new(17, 8);
    let b = a.mul(&RatFunc::constant("t", &Rat::from_int(2) * &beta));
    let e_curve = TwoTorsionCurve::new(a.clone(), b, a.clone()).map_err(|e| e.to_string())?;
    // theorem-(14) witness: e = 2 sqrt(beta^2 - 1) a = (15/4) a, f = 1/2, g = 0
    let w = Witness::Theorem {
        e: a.mul(&RatFunc::constant("t", Rat::new(15, 4))),
        f: RatFunc::constant("t", Rat::new(1, 2)),
        g: RatFunc::constant("t", Rat::zero()),
    };
    match rational_point_cert(&e_curve, Some(w)).map_err(|e| e.to_string())? {
        RationalPointCert::WitnessTheoremForm { f, g, point_rational, .. } => {
            expect_true(
                f == RatFunc::constant("t", Rat::new(1, 2)) && g.is_zero(),
                "witness (f, g) = (1/2, 0) expected",
            )?;
            // the certified point sits at U^2 = -f^2; it is not rational here
            expect_true(!point_rational, "theorem-form point is rational only when f = 0")
        }
        other => fail(format!("expected a theorem-form witness certificate, got {:?}", other)),
    }
}

fn c5_generic_unknown() -> Result<(), String> {
    let a = RatFunc::from_poly(UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]));
    let b = RatFunc::from_poly(UniPoly::from_ints("t", &[0, 0, 0, 0, 1]));
    let c = RatFunc::from_poly(UniPoly::from_ints("t", &[-16, 0, 0, 0, 1]));
    // both square tests fail
    expect_true(Coeff::sqrt_exact(&a).is_none(), "a = t^4 - 1 must not be a square")?;
    expect_true(Coeff::sqrt_exact(&c).is_none(), "c = t^4 - 16 must not be a square")?;
    let e_curve = TwoTorsionCurve::new(a, b, c).map_err(|e| e.to_string())?;
    match rational_point_cert(&e_curve, None).map_err(|e| e.to_string())? {
        RationalPointCert::Unknown => Ok(()),
        other => fail(format!("expected Unknown, got {:?}", other)),
    }
}

fn c5_square_cert_over_function_field() -> Result<(), String> {
    // a = t^2 gives the SquareA certificate with alpha = t
    let a = RatFunc::from_poly(UniPoly::from_ints("t", &[0, 0, 1]));
    let b = RatFunc::from_poly(UniPoly::from_ints("t", &[1, 1]));
    let c = RatFunc::from_poly(UniPoly::from_ints("t", &[3]));
    let e_curve = TwoTorsionCurve::new(a, b, c).map_err(|e| e.to_string())?;
    match rational_point_cert(&e_curve, None).map_err(|e| e.to_string())? {
        RationalPointCert::SquareA { alpha } => expect_true(
            alpha == RatFunc::from_poly(UniPoly::x("t")),
            "alpha = t expected",
        ),
        other => fail(format!("expected SquareA, got {:?}", other)),
    }
}

// ---------------------------------------------------------------- criterion 6

fn c6_worked_moduli() -> Result<(), String> {
    let r = RosenhainTriple::new(
        Rat::from_int(2),
        Rat::from_int(3),
        Rat::from_int(6),
        Rat::from_int(12),
    )
    .map_err(|e| e.to_string())?;
    let mu = rosenhain_mu(&r).map_err(|e| e.to_string())?;
    expect_true(
        mu == MuTriple::new(Rat::new(5, 3), Rat::new(5, 4), Rat::one()).unwrap(),
        "mu = (5/3, 5/4, 1) expected",
    )?;
    let md = dual_mu(&mu).map_err(|e| e.to_string())?;
    expect_true(
        md == MuTriple::new(Rat::new(13, 3), Rat::new(7, 2), Rat::one()).unwrap(),
        "dual mu = (13/3, 7/2, 1) expected",
    )
}

fn c6_dual_involution_random() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b75_6d6d);
    let mut done = 0;
    while done < 100 {
        let pick = |rng: &mut ChaCha8Rng| Rat::new(rng.gen_range(-40i64..40), rng.gen_range(1i64..12));
        let m = match MuTriple::new(pick(&mut rng), pick(&mut rng), pick(&mut rng)) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let d = match dual_mu(&m) {
            Ok(d) => d,
            Err(_) => continue,
        };
        match dual_mu(&d) {
            Ok(back) => {
                if back != m {
                    return fail(format!("dual_mu not involutive at {:?}", m));
                }
            }
            Err(_) => continue,
        }
        done += 1;
    }
    Ok(())
}

fn c6_jmap_duality() -> Result<(), String> {
    let mu = MuTriple::new(Rat::new(5, 3), Rat::new(5, 4), Rat::one()).unwrap();
    let km = kummer_models(&mu).map_err(|e| e.to_string())?;
    let kmd = kummer_models(&km.mu_dual).map_err(|e| e.to_string())?;
    // Y(mu) and Y(mu-dual) are isomorphic; the j-maps match over an exact
    // Moebius transformation of the base
    let w = jmap_equal_up_to_moebius(&km.y, &kmd.y).map_err(|e| e)?;
    expect_true(w.is_some(), "Y(mu) vs Y(mu-dual) j-map equivalence failed")?;
    // the affine form with dual moduli reproduces X(mu)
    let w = jmap_equal_up_to_moebius(&km.x, &km.x_affine_dual)?;
    expect_true(w.is_some(), "X(mu) vs dual-moduli affine form failed")?;
    // and a generic triple as well
    let mu = MuTriple::new(Rat::from_int(2), Rat::from_int(3), Rat::from_int(7)).unwrap();
    let km = kummer_models(&mu).map_err(|e| e.to_string())?;
    let kmd = kummer_models(&km.mu_dual).map_err(|e| e.to_string())?;
    let w = jmap_equal_up_to_moebius(&km.y, &kmd.y)?;
    expect_true(w.is_some(), "generic Y(mu) vs Y(mu-dual) failed")?;
    let w = jmap_equal_up_to_moebius(&km.x, &x_affine_form(&km.mu_dual).map_err(|e| e.to_string())?)?;
    expect_true(w.is_some(), "generic X(mu) vs affine form failed")
}

// ---------------------------------------------------------------- criterion 7

fn c7_intersection_table() -> Result<(), String> {
    expect_true(intersection_table_matches_symbolically(), "intersection table mismatch")?;
    let cfg = SixLinesConfig::new(
        Rat::from_int(2),
        Rat::from_int(3),
        Rat::from_int(5),
        Rat::from_int(7),
    )
    .map_err(|e| e.to_string())?;
    expect_true(cfg.no_three_concurrent(), "(2,3,5,7): no three lines concurrent")
}

fn c7_tangency() -> Result<(), String> {
    let tangent = SixLinesConfig::new(
        Rat::from_int(2),
        Rat::from_int(3),
        Rat::from_int(5),
        Rat::from_int(-15),
    )
    .map_err(|e| e.to_string())?;
    expect_true(tangent.conic_tangency(), "(2,3,5,-15) must satisfy the tangency condition")?;
    expect_true(
        tangent.tangency_witness().is_some(),
        "(2,3,5,-15): the tangency parameter must verify both conditions",
    )?;
    let generic = SixLinesConfig::new(
        Rat::from_int(2),
        Rat::from_int(3),
        Rat::from_int(5),
        Rat::from_int(7),
    )
    .map_err(|e| e.to_string())?;
    expect_true(generic.tangency_value() == Rat::from_int(22), "(2,3,5,7) tangency value is 22")?;
    expect_true(tangency_condition_symbolic(), "symbolic tangency identity failed")?;
    expect_true(bidegree_reconstruction_symbolic(), "bidegree-(1,1) reconstruction failed")
}

fn c7_special2_flip() -> Result<(), String> {
    // a = b forces three I2 fibers of Y to coalesce into a third I0*
    let cfg = SixLinesConfig::new(
        Rat::from_int(2),
        Rat::from_int(2),
        Rat::from_int(5),
        Rat::from_int(7),
    )
    .map_err(|e| e.to_string())?;
    expect_true(
        cfg.special2_classify() == vec!["a=b".to_string()],
        "special2 must detect a = b",
    )?;
    let (alpha, beta, rho) = cfg.weierstrass_coefficients();
    let a = alpha.mul(&rho);
    let b = beta.mul(&rho).scale(&Rat::from_int(2));
    let (x, y, _z) = models_from_abc(&a, &b, &a, "special2").map_err(|e| e.to_string())?;
    let yr = y.fiber_configuration().map_err(|e| e.to_string())?;
    expect_true(
        yr.multiset() == parse_multiset("3I0* + 3I2")?,
        &format!("special2 Y table is {}", yr.multiset_string()),
    )?;
    let xr = x.fiber_configuration().map_err(|e| e.to_string())?;
    expect_true(
        xr.multiset() == parse_multiset("3I0* + I4 + 2I1")?,
        &format!("special2 X table is {}", xr.multiset_string()),
    )
}

// ---------------------------------------------------------------- criterion 8

fn c8_symbolic_moduli_identities() -> Result<(), String> {
    let m = chl::symbolic_nine();
    expect_true(m.dual().dual() == m, "dual_nine must be an involution (symbolic)")?;
    let s = ScaleTriple::new(SymRat::var("l"), SymRat::var("m"), SymRat::var("n"))
        .map_err(|e| e.to_string())?;
    expect_true(
        chl::dual_scale_commutation(&m, &s),
        "dual . scale(l,m,n) = scale(l,n,m) . dual (symbolic)",
    )?;
    expect_true(chl::equiv_fibration_symbolic(), "base-fiber transpose identity (symbolic)")
}

fn c8_equiv_fibration() -> Result<(), String> {
    let m = chl_nine();
    expect_true(
        chl::equiv_fibration_check(&m).map_err(|e| e.to_string())?,
        "swap of Ztilde(m) must equal Ztilde(dual m)",
    )?;
    // negative control: perturb one dual-position entry
    let mut bad = m.clone();
    bad.entries[1][1] = &bad.entries[1][1] + &Rat::one();
    let z = chl::ztilde_model(&m, "s").map_err(|e| e.to_string())?;
    let swapped = z.swap_base_fiber("s").map_err(|e| e.to_string())?.swapped;
    let z_bad = chl::ztilde_model(&bad, "s").map_err(|e| e.to_string())?;
    expect_true(swapped != z_bad, "corrupted tuple must not match the swapped model")
}

fn c8_rational_surface_j() -> Result<(), String> {
    let (j_model, rep, e_alpha, e_gamma) =
        chl_nine().rational_surface_j().map_err(|e| e.to_string())?;
    expect_true(
        rep.multiset() == parse_multiset("4I2 + 4I1")?,
        &format!("J has {} instead of 4I2 + 4I1", rep.multiset_string()),
    )?;
    expect_true(rep.euler_total == 12, "J must have Euler number 12")?;
    expect_true(j_model.delta().declared_degree == 12, "J discriminant degree 12")?;
    // the double fibers are E_alpha and E_gamma with the dualized moduli
    let m = chl_nine();
    let d = m.dual();
    let expect_e_alpha = TwoTorsionCurve::new(
        d.alpha()[0].clone(),
        &Rat::from_int(2) * &d.beta()[0],
        d.gamma()[0].clone(),
    )
    .map_err(|e| e.to_string())?;
    expect_true(
        e_alpha == expect_e_alpha,
        "double fiber at [1:0] must be the dual-moduli curve (beta2-dual, alpha2-dual gamma2-dual)",
    )?;
    let _ = e_gamma;
    Ok(())
}

fn c8_height_pairing() -> Result<(), String> {
    let half = Rat::new(1, 2);
    let six: Vec<Rat> = std::iter::repeat(half).take(6).collect();
    expect_true(height_pairing(2, 0, 0, 0, &six, true) == Rat::one(), "<s,s> = 1")?;
    expect_true(height_pairing(2, 0, 0, 2, &[], false) == Rat::zero(), "<s1,s2> = 0")?;
    expect_true(height_pairing(2, 0, 0, 0, &[], true) == Rat::from_int(4), "<s,s> without corrections = 4")
}

fn c8_duality_report() -> Result<(), String> {
    let report = chl::duality_report(&chl_nine(), Choice::Alpha).map_err(|e| e.to_string())?;
    // Ehat_alpha = isogenous_curve(E_alpha) exactly
    expect_true(
        report.ehat_choice == report.e_choice.isogenous_curve(),
        "Ehat_alpha must be the isogenous curve of E_alpha",
    )?;
    // j(Jac(Chat_alpha)) = j(Ehat_alpha) exactly
    expect_true(report.j_jac_chat == report.j_ehat, "j(Jac(Chat)) = j(Ehat)")?;
    // the closing remark's j formula is evaluated and its mismatch flagged
    // (documented, not asserted as a failure)
    expect_true(report.j_formula_match.is_some(), "j-formula cross-check must be reported")?;
    // gamma choice equals alpha choice after the alpha_i <-> gamma_i exchange
    let gamma_side = chl::duality_report(&chl_nine(), Choice::Gamma).map_err(|e| e.to_string())?;
    let swapped = ModuliNine::new(
        report.normalized.gamma().clone(),
        report.normalized.beta().clone(),
        report.normalized.alpha().clone(),
    );
    let expect_e_gamma = TwoTorsionCurve::new(
        swapped.alpha()[0].clone(),
        &Rat::from_int(2) * &swapped.alpha()[1],
        swapped.alpha()[2].clone(),
    )
    .map_err(|e| e.to_string())?;
    expect_true(gamma_side.e_choice == expect_e_gamma, "gamma choice exchanges alpha_i and gamma_i")?;
    // the worked formula value at (alpha2, alpha1, alpha0) = (1, 1, -1) is 4
    let a0 = Rat::from_int(-1);
    let v = &(&(&(&Rat::from_int(2) * &a0) - &Rat::from_int(4)).pow(3)
        / &(&(&a0 * &a0) * &(&a0 - &Rat::one())))
        / &Rat::from_int(27);
    expect_true(v == Rat::from_int(4), "displayed j formula value at alpha0 = -1 is 4")
}

// ---------------------------------------------------------------- criterion 9

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-999i64..1000), rng.gen_range(1i64..50))
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Rat> = (0..=d).map(|_| random_rat(rng)).collect();
    UniPoly::from_coeffs("t", coeffs)
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    loop {
        let p = random_poly(rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn c9_canonical_idempotence() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let r = random_rat(&mut rng);
        let renorm: Rat = r.to_string().parse().map_err(|e: crate::rat::ParseRatError| e.to_string())?;
        if renorm != r {
            return fail(format!("rational canonical form unstable at {}", r));
        }
        let p = random_poly(&mut rng, 6);
        let p2 = UniPoly::from_coeffs("t", p.coeffs.clone());
        if p2 != p {
            return fail(format!("polynomial normalization unstable at {}", p));
        }
        let den = random_nonzero_poly(&mut rng, 4);
        let f = RatFunc::new(p.clone(), den.clone());
        let f2 = RatFunc::new(f.num.clone(), f.den.clone());
        if f2 != f {
            return fail(format!("rational function normalization unstable at {}", f));
        }
        // scaling numerator and denominator by a common factor is invisible
        let g = random_nonzero_poly(&mut rng, 3);
        let f3 = RatFunc::new(p.mul(&g), den.mul(&g));
        if f3 != f {
            return fail("rational function reduction failed".to_string());
        }
    }
    Ok(())
}

fn c9_squarefree_reconstruction() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        // random product with repeated factors
        let mut p = UniPoly::constant("t", random_rat(&mut rng));
        while p.is_zero() {
            p = UniPoly::constant("t", random_rat(&mut rng));
        }
        for _ in 0..rng.gen_range(1..=3) {
            let f = random_nonzero_poly(&mut rng, 2);
            let e = rng.gen_range(1..=3);
            p = p.mul(&f.pow(e));
        }
        let dec = squarefree_decompose(&p)?;
        if dec.reassemble("t") != p {
            return fail(format!("squarefree decomposition does not reassemble {}", p));
        }
        for (i, f) in dec.factors.iter().enumerate() {
            if !f.poly.is_squarefree() {
                return fail("non-squarefree factor".to_string());
            }
            for g in &dec.factors[i + 1..] {
                if !f.poly.gcd(&g.poly).is_one() {
                    return fail("factors not pairwise coprime".to_string());
                }
            }
        }
    }
    Ok(())
}

fn c9_gcd_free_basis() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=3);
        let inputs: Vec<UniPoly> = (0..n)
            .map(|_| {
                let f = random_nonzero_poly(&mut rng, 2);
                let g = random_nonzero_poly(&mut rng, 2);
                f.mul(&g)
            })
            .collect();
        let basis = gcd_free_basis(&inputs);
        for (i, p) in basis.iter().enumerate() {
            if !p.is_squarefree() {
                return fail("basis element not squarefree".to_string());
            }
            for q in &basis[i + 1..] {
                if !p.gcd(q).is_one() {
                    return fail(format!("basis not coprime: {} and {}", p, q));
                }
            }
        }
        // spanning: each input is a unit times a product of basis powers
        for input in &inputs {
            let mut rest = input.clone();
            for b in &basis {
                while b.divides(&rest) && !rest.is_constant() {
                    rest = rest.exact_div(b);
                }
            }
            if !rest.is_constant() {
                return fail(format!("basis does not span input {}", input));
            }
        }
    }
    Ok(())
}

fn c9_valuation_additivity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let f = random_nonzero_poly(&mut rng, 4);
        let g = random_nonzero_poly(&mut rng, 4);
        let lin = UniPoly::from_coeffs("t", vec![random_rat(&mut rng), Rat::one()]);
        let fe = rng.gen_range(0..3u32);
        let ge = rng.gen_range(0..3u32);
        let ff = f.mul(&lin.pow(fe));
        let gg = g.mul(&lin.pow(ge));
        let place = Place::finite(lin.clone()).map_err(|e| e)?;
        let hf = HomogPoly::exact(ff.clone());
        let hg = HomogPoly::exact(gg.clone());
        let v1 = valuation_at(&hf, &place)?;
        let v2 = valuation_at(&hg, &place)?;
        let v12 = valuation_at(&hf.mul(&hg), &place)?;
        if v12 != v1 + v2 {
            return fail(format!("valuation additivity failed at {}", lin));
        }
        // and at infinity with declared degrees
        let d1 = HomogPoly::new(ff.clone(), ff.deg() + (fe as usize % 2));
        let d2 = HomogPoly::new(gg.clone(), gg.deg() + (ge as usize % 2));
        let vi = valuation_at(&d1.mul(&d2), &Place::Infinity)?;
        if vi != d1.val_infinity() + d2.val_infinity() {
            return fail("valuation additivity at infinity failed".to_string());
        }
    }
    Ok(())
}

fn c9_schwartz_zippel() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // the full isogeny identity suite at 20 random non-degenerate triples
    let mut done = 0;
    while done < 20 {
        let a = random_rat(&mut rng);
        let b = random_rat(&mut rng);
        let c = random_rat(&mut rng);
        match run_specialized_suite(&a, &b, &c) {
            Err(_) => continue,
            Ok(results) => {
                for r in &results {
                    if !r.pass {
                        return fail(format!(
                            "specialized identity failed at ({}, {}, {}): {}",
                            a, b, c, r.name
                        ));
                    }
                }
            }
        }
        done += 1;
    }
    // the moduli identities at 20 random nine-tuples and scales
    for _ in 0..20 {
        let m = ModuliNine::new(
            [random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng)],
            [random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng)],
            [random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng)],
        );
        if m.dual().dual() != m {
            return fail("dual involution failed at a random tuple".to_string());
        }
        let nonzero = |rng: &mut ChaCha8Rng| loop {
            let r = random_rat(rng);
            if !r.is_zero() {
                return r;
            }
        };
        let s = ScaleTriple::new(nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng))
            .map_err(|e| e.to_string())?;
        if !chl::dual_scale_commutation(&m, &s) {
            return fail("dual/scale commutation failed at a random tuple".to_string());
        }
        let t = m.ztilde_matrix();
        let d = m.dual().ztilde_matrix();
        for i in 0..3 {
            for j in 0..3 {
                if t[i][j] != d[j][i] {
                    return fail("transpose identity failed at a random tuple".to_string());
                }
            }
        }
    }
    Ok(())
}

/// All fixtures, grouped by acceptance criterion.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture { criterion: 1, name: "symbolic isogeny suite (a, b, c free)", run: c1_symbolic_suite },
        Fixture { criterion: 2, name: "generic triple (t^4-1, t^4, t^4-16)", run: c2_generic_family },
        Fixture { criterion: 3, name: "four-I4 family tables", run: c3_four_i4 },
        Fixture { criterion: 3, name: "four-I0* family tables (beta = 17/8)", run: c3_four_i0star },
        Fixture { criterion: 3, name: "rank-17 Kummer family tables", run: c3_kummer17 },
        Fixture { criterion: 3, name: "six-lines family tables (2,3,5,11)", run: c3_sixlines },
        Fixture {
            criterion: 3,
            name: "six-lines (2,3,5,7): observed degenerate tables",
            run: c3_sixlines_spec_tuple_observed,
        },
        Fixture { criterion: 3, name: "rho = t0 t1 family tables (2t^2+1, t^2+t+3, t^2+2)", run: c3_chl },
        Fixture {
            criterion: 3,
            name: "rho = t0 t1 family (t^2+1, t^2+t+3, t^2+2): observed degenerate tables",
            run: c3_chl_spec_tuple_observed,
        },
        Fixture { criterion: 4, name: "generic even eights (Phi, Psi)", run: c4_generic_even_eights },
        Fixture { criterion: 4, name: "four-I4 even eights", run: c4_four_i4_even_eights },
        Fixture { criterion: 4, name: "four-I0* even eights", run: c4_four_i0star_even_eights },
        Fixture { criterion: 4, name: "six-lines even eights (Phi, Psi, Psi')", run: c4_sixlines_even_eights },
        Fixture { criterion: 4, name: "Kummer-17 even eights", run: c4_kummer17_even_eights },
        Fixture { criterion: 4, name: "rho = t0 t1 even eights", run: c4_chl_even_eights },
        Fixture { criterion: 4, name: "base-change even eights and pullback tables", run: c4_base_change_even_eight },
        Fixture { criterion: 5, name: "condition-(14) witness for beta = 17/8", run: c5_condition14_witness },
        Fixture { criterion: 5, name: "generic triple certificate is Unknown", run: c5_generic_unknown },
        Fixture { criterion: 5, name: "square certificate over Q(t)", run: c5_square_cert_over_function_field },
        Fixture { criterion: 6, name: "worked Rosenhain/mu chain", run: c6_worked_moduli },
        Fixture { criterion: 6, name: "dual_mu involution on 100 random triples", run: c6_dual_involution_random },
        Fixture { criterion: 6, name: "Y(mu) vs Y(mu-dual) j-map equivalence", run: c6_jmap_duality },
        Fixture { criterion: 7, name: "six-lines intersection table (symbolic)", run: c7_intersection_table },
        Fixture { criterion: 7, name: "conic tangency condition", run: c7_tangency },
        Fixture { criterion: 7, name: "special configuration flips the Y table", run: c7_special2_flip },
        Fixture { criterion: 8, name: "nine-tuple identities (symbolic)", run: c8_symbolic_moduli_identities },
        Fixture { criterion: 8, name: "base-fiber equivalence of the pulled-back family", run: c8_equiv_fibration },
        Fixture { criterion: 8, name: "rational elliptic surface and double fibers", run: c8_rational_surface_j },
        Fixture { criterion: 8, name: "height pairings", run: c8_height_pairing },
        Fixture { criterion: 8, name: "duality report", run: c8_duality_report },
        Fixture { criterion: 9, name: "canonical-form idempotence (10000 cases)", run: c9_canonical_idempotence },
        Fixture { criterion: 9, name: "squarefree reconstruction (10000 cases)", run: c9_squarefree_reconstruction },
        Fixture { criterion: 9, name: "gcd-free basis coprimality and span (10000 cases)", run: c9_gcd_free_basis },
        Fixture { criterion: 9, name: "valuation additivity (10000 cases)", run: c9_valuation_additivity },
        Fixture { criterion: 9, name: "randomized specialization of symbolic identities", run: c9_schwartz_zippel },
    ]
}
