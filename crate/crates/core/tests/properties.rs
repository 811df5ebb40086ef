//! Property tests for the exact-arithmetic engine and the model machinery.

use isofib_core::families::{build_spec, SpecKind};
use isofib_core::fibration::{FibrationModel, ModelKind};
use isofib_core::homog::{valuation_at, HomogPoly, Place};
use isofib_core::isogeny::TwoTorsionCurve;
use isofib_core::rat::Rat;
use isofib_core::unipoly::{gcd_free_basis, poly_is_square, squarefree_decompose, UniPoly};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-60i64..60, 1i64..8).prop_map(|(n, d)| Rat::new(n, d))
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rat_strategy(), 1..=max_deg + 1)
        .prop_map(|coeffs| UniPoly::from_coeffs("t", coeffs))
}

fn nonzero_poly_strategy(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    poly_strategy(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn gcd_divides_both(p in nonzero_poly_strategy(5), q in nonzero_poly_strategy(5)) {
        let g = p.gcd(&q);
        prop_assert!(g.divides(&p));
        prop_assert!(g.divides(&q));
        prop_assert!(g.leading().is_one());
    }

    #[test]
    fn squarefree_reassembles(p in nonzero_poly_strategy(4), q in nonzero_poly_strategy(2), e in 1u32..3) {
        let prod = p.mul(&q.pow(e));
        let dec = squarefree_decompose(&prod).unwrap();
        prop_assert_eq!(dec.reassemble("t"), prod);
    }

    #[test]
    fn square_root_roundtrip(q in nonzero_poly_strategy(8)) {
        // poly_is_square(q^2) recovers q up to sign normalization
        let sq = q.mul(&q);
        let r = poly_is_square(&sq).expect("a square must be recognized");
        prop_assert!(r == q || r == q.neg());
        prop_assert!(!r.leading().is_negative());
    }

    #[test]
    fn gcd_free_basis_is_coprime(
        p in nonzero_poly_strategy(3),
        q in nonzero_poly_strategy(3),
        r in nonzero_poly_strategy(2),
    ) {
        let basis = gcd_free_basis(&[p.mul(&q), q.mul(&r), r.clone()]);
        for (i, a) in basis.iter().enumerate() {
            prop_assert!(a.is_squarefree());
            for b in &basis[i + 1..] {
                prop_assert!(a.gcd(b).is_one());
            }
        }
    }

    #[test]
    fn valuation_additive(
        f in nonzero_poly_strategy(4),
        g in nonzero_poly_strategy(4),
        root in -6i64..6,
        fe in 0u32..3,
        ge in 0u32..3,
    ) {
        let lin = UniPoly::from_coeffs("t", vec![Rat::from_int(-root), Rat::one()]);
        let ff = HomogPoly::exact(f.mul(&lin.pow(fe)));
        let gg = HomogPoly::exact(g.mul(&lin.pow(ge)));
        let place = Place::finite(lin).unwrap();
        let v = valuation_at(&ff.mul(&gg), &place).unwrap();
        prop_assert_eq!(v, valuation_at(&ff, &place).unwrap() + valuation_at(&gg, &place).unwrap());
    }

    #[test]
    fn torsor_discriminants_agree(a in rat_strategy(), b in rat_strategy(), c in rat_strategy()) {
        prop_assume!(!a.is_zero() && !c.is_zero());
        let delta2 = &(&b * &b) - &(&Rat::from_int(4) * &(&a * &c));
        prop_assume!(!delta2.is_zero());
        let e = TwoTorsionCurve::new(a, b, c).unwrap();
        let (t1, t2) = e.torsors();
        let ehat = e.isogenous_curve();
        prop_assert_eq!(t1.discriminant(), t2.discriminant());
        prop_assert_eq!(t1.discriminant(), ehat.discriminant());
        // Delta_Ehat = 16 ac (b^2 - 4ac)^2 exactly
        let expect = &(&Rat::from_int(16) * &e.ac()) * &(&delta2 * &delta2);
        prop_assert_eq!(ehat.discriminant(), expect);
        // j(Jac(Chat)) = j(Ehat) through the quartic-invariant route
        let jac = TwoTorsionCurve::new(t2.q4.clone(), t2.q2.clone(), t2.q0.clone())
            .unwrap()
            .isogenous_curve();
        prop_assert_eq!(jac.j_invariant(), ehat.j_invariant());
        // the double dual is isomorphic to E under (x, y) -> (4x, 8y)
        prop_assert_eq!(ehat.isogenous_curve().j_invariant(), e.j_invariant());
    }
}

#[test]
fn duplication_of_two_torsion_is_signaled() {
    // [2] tau = sigma through the isogeny chain; the affine duplication
    // formulas cannot represent it, so the point lands at infinity
    use isofib_core::isogeny::PointXY;
    let e = TwoTorsionCurve::new(Rat::one(), Rat::zero(), Rat::from_int(4)).unwrap();
    let up = e.map_forward(&e.tau()).unwrap();
    assert_eq!(up, PointXY::Infinity);
    assert_eq!(e.map_dual(&up).unwrap(), PointXY::Infinity);
    // and the symbolic duplication map has a vanishing denominator at y = 0
    use isofib_core::sym::curve::{duplication_map, CurveSpec};
    use isofib_core::sym::SymPoly;
    let curve = CurveSpec::two_torsion("x", "y", &SymPoly::one(), &SymPoly::zero(), &SymPoly::int(4));
    let dup = duplication_map(&curve);
    let mut asg = std::collections::BTreeMap::new();
    asg.insert("x".to_string(), Rat::zero());
    asg.insert("y".to_string(), Rat::zero());
    assert!(dup.eval(&asg).is_none(), "duplication at a two-torsion point must be signaled");
}

#[test]
fn swap_is_an_involution() {
    let fam = build_spec(&SpecKind::SixLinesParams {
        a: Rat::from_int(2),
        b: Rat::from_int(3),
        c: Rat::from_int(5),
        d: Rat::from_int(11),
    })
    .unwrap();
    let once = fam.z.swap_base_fiber("u").unwrap().swapped;
    let twice = once.swap_base_fiber("t").unwrap().swapped;
    // compare the five binary-quartic coefficient slots
    let slots = |m: &FibrationModel| -> Vec<Vec<Rat>> {
        match &m.kind {
            ModelKind::QuarticGenusOne { q4, q2, q0 } => {
                vec![
                    q0.poly.coeffs.clone(),
                    vec![],
                    q2.poly.coeffs.clone(),
                    vec![],
                    q4.poly.coeffs.clone(),
                ]
            }
            ModelKind::GeneralQuartic { coeffs } => {
                coeffs.iter().map(|h| h.poly.coeffs.clone()).collect()
            }
            _ => panic!("expected a quartic model"),
        }
    };
    assert_eq!(slots(&fam.z), slots(&twice));
}

#[test]
fn sixlines_z_swap_is_weierstrass_with_two_torsion() {
    let fam = build_spec(&SpecKind::SixLinesParams {
        a: Rat::from_int(2),
        b: Rat::from_int(3),
        c: Rat::from_int(5),
        d: Rat::from_int(11),
    })
    .unwrap();
    let sw = fam.z.swap_base_fiber("u").unwrap();
    let w = sw.weierstrass.expect("rho = t0 t1 makes the swap Weierstrass-convertible");
    let rep = w.fiber_configuration().unwrap();
    assert_eq!(rep.multiset_string(), "8I2 + 8I1");
    assert_eq!(rep.euler_total, 24);
}

#[test]
fn chl_delta_squarefree_layers() {
    // Delta_X of the rho = t0 t1 family contains the factor (t, 6)
    let fam = build_spec(&SpecKind::CHL14 {
        alpha: HomogPoly::new(UniPoly::from_ints("t", &[1, 0, 2]), 2),
        beta: HomogPoly::new(UniPoly::from_ints("t", &[3, 1, 1]), 2),
        gamma: HomogPoly::new(UniPoly::from_ints("t", &[2, 0, 1]), 2),
    })
    .unwrap();
    let delta = fam.x.delta();
    let dec = squarefree_decompose(&delta.poly).unwrap();
    let t_factor = dec
        .factors
        .iter()
        .find(|f| f.poly == UniPoly::x("t"))
        .expect("t must divide Delta_X");
    assert_eq!(t_factor.multiplicity, 6);
    // and the complementary t1^6 shows up as the degree deficiency
    assert_eq!(delta.val_infinity(), 6);
}

#[test]
fn quartic_bisections() {
    use isofib_core::fibration::branch::bisection_incidence;
    let fam = build_spec(&SpecKind::Generic {
        a: HomogPoly::new(UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]), 4),
        b: HomogPoly::new(UniPoly::from_ints("t", &[0, 0, 0, 0, 1]), 4),
        c: HomogPoly::new(UniPoly::from_ints("t", &[-16, 0, 0, 0, 1]), 4),
    })
    .unwrap();
    let incidences = bisection_incidence(&fam.z).unwrap();
    // over a = 0 the singular point [1:0:0] sits on the W = 0 bisection,
    // over c = 0 the singular point [0:0:1] sits on the U = 0 bisection
    let a = HomogPoly::new(UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]), 4);
    for inc in &incidences {
        let va = valuation_at(&a, &inc.place).unwrap();
        if va > 0 {
            assert_eq!(inc.bisection, "W=0");
            assert_eq!(inc.singular_point, "[1:0:0]");
        } else {
            assert_eq!(inc.bisection, "U=0");
            assert_eq!(inc.singular_point, "[0:0:1]");
        }
    }
    assert_eq!(incidences.len(), 6, "six places over a c = 0");
}

#[test]
fn wire_format_round_trip() {
    // polynomial wire objects re-parse to equal in-memory values
    let h = HomogPoly::new(UniPoly::from_coeffs("t", vec![Rat::new(-1, 2), Rat::zero(), Rat::from_int(3)]), 4);
    let s = serde_json::to_string(&h).unwrap();
    assert_eq!(s, r#"{"var":"t","coeffs":["-1/2","0","3"],"homdeg":4}"#);
    let back: HomogPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, h);
    // family specs round-trip through their tagged representation
    let kind = SpecKind::FourI0star { a: h.clone(), beta: Rat::new(17, 8) };
    let s = serde_json::to_string(&kind).unwrap();
    let back: SpecKind = serde_json::from_str(&s).unwrap();
    let s2 = serde_json::to_string(&back).unwrap();
    assert_eq!(s, s2);
}

#[test]
fn sum_of_squares_cover_of_kummer_y() {
    use isofib_core::families::cover::{base_change_cover, BaseChange};
    use isofib_core::families::kummer::{kummer_models, MuTriple};
    use isofib_core::fibration::parse_multiset;
    let mu = MuTriple::new(Rat::from_int(2), Rat::from_int(3), Rat::from_int(7)).unwrap();
    let km = kummer_models(&mu).unwrap();
    let cover = base_change_cover(&km.y, BaseChange::SumOfSquares, "t").unwrap();
    let rep = cover.model.fiber_configuration().unwrap();
    assert_eq!(rep.multiset(), parse_multiset("2I0* + 6I2").unwrap());
    assert_eq!(rep.euler_total, 24);
    assert_eq!(cover.branch.total, 8);
    // the returned model is minimal: no residual twists anywhere
    assert!(rep.entries.iter().all(|e| e.local.twists_applied == 0));
}
