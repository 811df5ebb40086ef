//! Singular-point incidence of sections and the even-eight branch reports for
//! the double covers between the members of an isogenous triple of families.
//!
//! The component-level statements are inferred the way the proofs do it: from
//! which section passes through the Weierstrass singular point of each bad
//! fiber, together with where the covering involution has its fixed points.
//! For the isogeny cover the fixed locus sits over the odd-valuation part of
//! `a c` (the bisection `[b +- 2 sqrt(ac) : 0 : 1]` ramifies exactly where the
//! local square class of `ac` is nontrivial); for the quartic covers the fixed
//! points `U = 0` and `W = 0` sit over the odd-valuation parts of the outer
//! quartic coefficients.

use super::{FibError, FibrationModel, KodairaType, ModelKind};
use crate::homog::{valuation_at, HomogPoly, Place};
use crate::ratfunc::RatFunc;
use crate::unipoly::UniPoly;
use serde_json::{json, Value};
use std::fmt;

/// Sections of a Weierstrass model usable in incidence queries.
#[derive(Clone, Debug)]
pub enum Section {
    /// The zero section (the point at infinity of each fiber).
    Zero,
    /// The two-torsion section `(0, 0)`.
    TwoTorsion,
    /// An explicit section `t -> (x(t), y(t))`.
    Explicit { x: RatFunc, y: RatFunc },
}

/// Where the fiber's singular point sits and whether the section hits it.
#[derive(Clone, Debug)]
pub struct IncidenceRecord {
    pub place: Place,
    pub fiber: KodairaType,
    /// The singular `x`-coordinate reduced modulo the place (`None` for the
    /// cusp/node at the origin, which is reported exactly).
    pub singular_x: UniPoly,
    pub singular_at_origin: bool,
    pub section_through_singular: bool,
}

/// Compute where the Weierstrass fiber is singular at a reducible place and
/// whether the given section passes through that point.
pub fn section_incidence(
    model: &FibrationModel,
    section: &Section,
    place: &Place,
) -> Result<IncidenceRecord, FibError> {
    let (a, b, c) = match &model.kind {
        ModelKind::WeierstrassTwoTorsion { a, b, c } => (a, b, c),
        _ => {
            return Err(FibError::BadInput(
                "section incidence is defined on Weierstrass models; quartic models carry bisections".into(),
            ))
        }
    };
    let (_, kind) = model.local_kodaira(place)?;
    if kind.euler() == 0 {
        return Err(FibError::BadInput(format!("fiber at {} is smooth", place)));
    }
    let ac = a.mul(c);
    let v_ac = valuation_at(&ac, place).map_err(FibError::Classification)?;
    // singular point of the fiber: (0, 0) when ac vanishes, else (-b/2, 0)
    let (singular_at_origin, singular_x) = if v_ac > 0 {
        (true, UniPoly::zero(&b.poly.var))
    } else {
        let half_b = b.poly.scale(&crate::rat::Rat::new(-1, 2));
        let reduced = match place {
            Place::Finite(p) => half_b.rem(p),
            Place::Infinity => half_b,
        };
        (false, reduced)
    };
    let through = match section {
        Section::Zero => false,
        Section::TwoTorsion => singular_at_origin,
        Section::Explicit { x, y } => match place {
            Place::Finite(p) => {
                let xm = reduce_ratfunc_mod(x, p)?;
                let ym = reduce_ratfunc_mod(y, p)?;
                match (xm, ym) {
                    (Some(xv), Some(yv)) => yv.is_zero() && xv.sub(&singular_x).rem(p).is_zero(),
                    _ => false,
                }
            }
            Place::Infinity => false,
        },
    };
    Ok(IncidenceRecord {
        place: place.clone(),
        fiber: kind,
        singular_x,
        singular_at_origin,
        section_through_singular: through,
    })
}

/// Reduce a rational function modulo a finite place; `None` when the
/// denominator vanishes identically there (the section meets infinity).
fn reduce_ratfunc_mod(f: &RatFunc, p: &UniPoly) -> Result<Option<UniPoly>, FibError> {
    let den_mod = f.den.rem(p);
    if den_mod.is_zero() {
        return Ok(None);
    }
    let inv = poly_inverse_mod(&den_mod, p).ok_or_else(|| {
        FibError::Classification("denominator not invertible modulo a squarefree place".into())
    })?;
    Ok(Some(f.num.rem(p).mul(&inv).rem(p)))
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
fn poly_inverse_mod(a: &UniPoly, m: &UniPoly) -> Option<UniPoly> {
    let var = a.var.clone();
    let (mut r0, mut r1) = (m.clone(), a.rem(m));
    let (mut s0, mut s1) = (UniPoly::zero(&var), UniPoly::one(&var));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.is_constant() && !r0.is_zero() {
        let lead = r0.coeff(0).inv().unwrap();
        Some(s0.scale(&lead).rem(m))
    } else {
        None
    }
}

/// Incidence data for the two tautological bisections `U = 0` and `W = 0` of
/// a quartic genus-one model: over roots of the outer coefficients the fiber
/// is singular, and the singular point lies on one of the bisections
/// (`[1:0:0]` on the `W = 0` bisection over `q4 = 0`, `[0:0:1]` on the
/// `U = 0` bisection over `q0 = 0`).
#[derive(Clone, Debug)]
pub struct BisectionIncidence {
    pub place: Place,
    pub fiber: KodairaType,
    /// `"U=0"` or `"W=0"`
    pub bisection: &'static str,
    /// singular point in `[U : V : W]` coordinates
    pub singular_point: &'static str,
}

/// Where the fibers of a quartic model degenerate onto its two bisections.
pub fn bisection_incidence(model: &FibrationModel) -> Result<Vec<BisectionIncidence>, FibError> {
    let (q4, q0) = match &model.kind {
        ModelKind::QuarticGenusOne { q4, q0, .. } => (q4.clone(), q0.clone()),
        _ => {
            return Err(FibError::BadInput(
                "bisection incidence is defined on quartic genus-one models".into(),
            ))
        }
    };
    let mut out = Vec::new();
    for e in &model.fiber_configuration()?.entries {
        let v4 = valuation_at(&q4, &e.place).map_err(FibError::Classification)?;
        let v0 = valuation_at(&q0, &e.place).map_err(FibError::Classification)?;
        if v4 > 0 {
            out.push(BisectionIncidence {
                place: e.place.clone(),
                fiber: e.kodaira,
                bisection: "W=0",
                singular_point: "[1:0:0]",
            });
        }
        if v0 > 0 {
            out.push(BisectionIncidence {
                place: e.place.clone(),
                fiber: e.kodaira,
                bisection: "U=0",
                singular_point: "[0:0:1]",
            });
        }
    }
    Ok(out)
}

/// Which side of a reducible fiber belongs to an even eight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchSide {
    /// component(s) met by the zero section
    Sigma,
    /// component(s) met by the two-torsion section
    Tau,
    /// both of the above
    SigmaAndTau,
    /// the components meeting neither section
    Neither,
    /// all non-central components (base-change covers)
    AllNonCentral,
}

impl fmt::Display for BranchSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchSide::Sigma => write!(f, "meeting sigma"),
            BranchSide::Tau => write!(f, "meeting tau"),
            BranchSide::SigmaAndTau => write!(f, "meeting sigma or tau"),
            BranchSide::Neither => write!(f, "meeting neither sigma nor tau"),
            BranchSide::AllNonCentral => write!(f, "all non-central components"),
        }
    }
}

/// One place's contribution to an even eight.
#[derive(Clone, Debug)]
pub struct BranchEntry {
    pub place: Place,
    pub fiber: KodairaType,
    pub side: BranchSide,
    /// component description in the fiber-type vocabulary
    pub components: Vec<String>,
    /// number of branch components over one geometric point
    pub per_point: usize,
    /// `per_point * deg(place)`
    pub count: usize,
}

/// An even-eight report for a double cover.
#[derive(Clone, Debug)]
pub struct BranchReport {
    pub cover: String,
    pub entries: Vec<BranchEntry>,
    pub total: usize,
}

impl BranchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "cover": self.cover,
            "entries": self.entries.iter().map(|e| json!({
                "place": e.place.to_string(),
                "fiber": e.fiber.to_string(),
                "side": e.side.to_string(),
                "components": e.components,
                "count": e.count,
            })).collect::<Vec<_>>(),
            "total": self.total,
        })
    }
}

/// The double covers whose even eights this report derives.
#[derive(Clone, Debug)]
pub enum Cover {
    /// The fiberwise-isogeny cover `Phi : Y --> X`, branched on `X`.
    Phi,
    /// A quartic cover `Z --> X` with outer coefficients `(q4, q0)`; the
    /// deck-fixed points over `q4 = 0` land on the sigma side and the ones
    /// over `q0 = 0` on the tau side.
    PsiLike { name: String, q4: HomogPoly, q0: HomogPoly },
}

impl Cover {
    pub fn name(&self) -> String {
        match self {
            Cover::Phi => "Phi".into(),
            Cover::PsiLike { name, .. } => name.clone(),
        }
    }
}

fn components_for(fiber: KodairaType, side: BranchSide) -> Result<(Vec<String>, usize), String> {
    match (fiber, side) {
        (KodairaType::I(2), BranchSide::Sigma) => {
            Ok((vec!["neutral component (met by sigma)".into()], 1))
        }
        (KodairaType::I(2), BranchSide::Tau) => {
            Ok((vec!["non-neutral component (met by tau)".into()], 1))
        }
        (KodairaType::I(4), BranchSide::SigmaAndTau) => Ok((
            vec![
                "component met by sigma".into(),
                "opposite component met by tau".into(),
            ],
            2,
        )),
        (KodairaType::I(4), BranchSide::Neither) => Ok((
            vec!["the two side components meeting neither sigma nor tau".into()],
            2,
        )),
        (KodairaType::Istar(0), BranchSide::SigmaAndTau) => Ok((
            vec![
                "non-central component met by sigma".into(),
                "non-central component met by tau".into(),
            ],
            2,
        )),
        (KodairaType::Istar(0), BranchSide::Neither) => Ok((
            vec!["the two non-central components meeting neither sigma nor tau".into()],
            2,
        )),
        (KodairaType::Istar(0), BranchSide::AllNonCentral) => Ok((
            vec!["all four non-central components".into()],
            4,
        )),
        (f, s) => Err(format!("no component rule for fiber {} with side {}", f, s)),
    }
}

/// Derive the even eight on the Weierstrass target `X` for the given cover.
///
/// At each reducible place the branch side is decided by the parity of the
/// relevant coefficient valuations (see the module documentation); the
/// component inventory is then read off from the fiber type together with the
/// singular-point incidence of `sigma` and `tau`.
pub fn branch_even_eight_report(x_model: &FibrationModel, cover: &Cover) -> Result<BranchReport, FibError> {
    let (a, c) = match &x_model.kind {
        ModelKind::WeierstrassTwoTorsion { a, c, .. } => (a.clone(), c.clone()),
        _ => {
            return Err(FibError::BadInput(
                "even-eight reports are derived on the Weierstrass target model".into(),
            ))
        }
    };
    let ac = a.mul(&c);
    let report = x_model.fiber_configuration()?;
    let mut entries = Vec::new();
    let mut total = 0usize;
    for e in &report.entries {
        let reducible = match e.kodaira {
            KodairaType::I(n) => n >= 2,
            KodairaType::Istar(_) => true,
            _ => false,
        };
        if !reducible {
            continue;
        }
        let side = match cover {
            Cover::Phi => {
                let v = valuation_at(&ac, &e.place).map_err(FibError::Classification)?;
                if v % 2 == 1 {
                    BranchSide::Tau
                } else {
                    BranchSide::Neither
                }
            }
            Cover::PsiLike { q4, q0, .. } => {
                let v4 = valuation_at(q4, &e.place).map_err(FibError::Classification)?;
                let v0 = valuation_at(q0, &e.place).map_err(FibError::Classification)?;
                match (v4 % 2 == 1, v0 % 2 == 1) {
                    (true, true) => BranchSide::SigmaAndTau,
                    (true, false) => BranchSide::Sigma,
                    (false, true) => BranchSide::Tau,
                    (false, false) => BranchSide::Neither,
                }
            }
        };
        let (components, per_point) = components_for(e.kodaira, side)
            .map_err(|why| FibError::Classification(format!("family not recognized at {}: {}", e.place, why)))?;
        let count = per_point * e.degree;
        total += count;
        entries.push(BranchEntry {
            place: e.place.clone(),
            fiber: e.kodaira,
            side,
            components,
            per_point,
            count,
        });
    }
    if total != 8 {
        return Err(FibError::Classification(format!(
            "branch locus has {} components, an even eight needs 8",
            total
        )));
    }
    Ok(BranchReport { cover: cover.name(), entries, total })
}

/// The even eight of a base-change double cover branched over two points: all
/// non-central components of the (necessarily `I0*`) fibers there.
pub fn base_change_branch_report(
    downstairs: &FibrationModel,
    branch_places: &[Place; 2],
    cover_name: &str,
) -> Result<BranchReport, FibError> {
    let mut entries = Vec::new();
    let mut total = 0usize;
    for p in branch_places {
        let (_, kind) = downstairs.local_kodaira(p)?;
        if kind != KodairaType::Istar(0) {
            return Err(FibError::Classification(format!(
                "base-change branch point {} carries fiber {}, expected I0*",
                p, kind
            )));
        }
        let (components, per_point) = components_for(kind, BranchSide::AllNonCentral)
            .map_err(FibError::Classification)?;
        let count = per_point * p.degree();
        total += count;
        entries.push(BranchEntry {
            place: p.clone(),
            fiber: kind,
            side: BranchSide::AllNonCentral,
            components,
            per_point,
            count,
        });
    }
    if total != 8 {
        return Err(FibError::Classification(format!(
            "base-change branch locus has {} components, an even eight needs 8",
            total
        )));
    }
    Ok(BranchReport { cover: cover_name.into(), entries, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homog::HomogPoly;
    use crate::rat::Rat;

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
    fn tau_meets_i2_nodes() {
        let m = generic_x();
        // t = 1 is a root of a, an I2 place; singular point (0,0) lies on tau
        let p = Place::finite(UniPoly::from_ints("t", &[-1, 1])).unwrap();
        let rec = section_incidence(&m, &Section::TwoTorsion, &p).unwrap();
        assert!(rec.singular_at_origin);
        assert!(rec.section_through_singular);
        let rec0 = section_incidence(&m, &Section::Zero, &p).unwrap();
        assert!(!rec0.section_through_singular);
    }

    #[test]
    fn i1_nodes_away_from_tau() {
        let m = generic_x();
        // pick the I1 place: the octic b^2 - 4ac
        let rep = m.fiber_configuration().unwrap();
        let i1_place = rep
            .entries
            .iter()
            .find(|e| e.kodaira == KodairaType::I(1))
            .unwrap()
            .place
            .clone();
        let rec = section_incidence(&m, &Section::TwoTorsion, &i1_place).unwrap();
        assert!(!rec.singular_at_origin);
        assert!(!rec.section_through_singular);
    }

    #[test]
    fn explicit_section_incidence() {
        // a section through (0, 0) identically: x = 0, y = 0 is not on a smooth
        // model, so use the two-torsion point written explicitly
        let m = generic_x();
        let p = Place::finite(UniPoly::from_ints("t", &[-1, 1])).unwrap();
        let sec = Section::Explicit {
            x: RatFunc::constant("t", Rat::zero()),
            y: RatFunc::constant("t", Rat::zero()),
        };
        let rec = section_incidence(&m, &sec, &p).unwrap();
        assert!(rec.section_through_singular);
    }

    #[test]
    fn generic_phi_and_psi_reports() {
        let m = generic_x();
        // Phi: non-neutral components of the eight I2 fibers (v(ac) odd there)
        let phi = branch_even_eight_report(&m, &Cover::Phi).unwrap();
        assert_eq!(phi.total, 8);
        for e in &phi.entries {
            assert_eq!(e.side, BranchSide::Tau);
            assert_eq!(e.fiber, KodairaType::I(2));
        }
        // Psi: neutral over a = 0, non-neutral over c = 0
        let a = h(&[-1, 0, 0, 0, 1], 4);
        let c = h(&[-16, 0, 0, 0, 1], 4);
        let psi = branch_even_eight_report(
            &m,
            &Cover::PsiLike { name: "Psi".into(), q4: a.clone(), q0: c.clone() },
        )
        .unwrap();
        assert_eq!(psi.total, 8);
        for e in &psi.entries {
            let va = valuation_at(&a, &e.place).unwrap();
            if va > 0 {
                assert_eq!(e.side, BranchSide::Sigma, "neutral over a = 0");
            } else {
                assert_eq!(e.side, BranchSide::Tau, "non-neutral over c = 0");
            }
        }
    }
}
