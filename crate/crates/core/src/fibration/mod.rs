//! Elliptic and genus-one fibrations over the projective line with exact
//! Kodaira classification of their singular fibers.
//!
//! A model is either a two-torsion Weierstrass family
//! `y^2 = x (x^2 + b x + a c)`, a biquadratic genus-one family
//! `V^2 = q4 U^4 + q2 U^2 W^2 + q0 W^4`, or a general quartic family (these
//! arise when base and fiber coordinates are interchanged). Genus-one models
//! are classified through their relative Jacobians, whose `(c4, c6, Delta)`
//! come from the classical invariants of the binary quartic.

pub mod branch;
pub mod moebius;

use crate::homog::{cmp_place, valuation_at, HomogPoly, Place};
use crate::rat::Rat;
use crate::unipoly::{gcd_free_basis, UniPoly};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

/// Kodaira type of a singular fiber (residue characteristic zero).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum KodairaType {
    I(usize),
    Istar(usize),
    II,
    III,
    IV,
    IVstar,
    IIIstar,
    IIstar,
}

impl KodairaType {
    /// Euler-number contribution.
    pub fn euler(&self) -> usize {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::Istar(n) => n + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVstar => 8,
            KodairaType::IIIstar => 9,
            KodairaType::IIstar => 10,
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, KodairaType::I(n) if *n > 0)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{}", n),
            KodairaType::Istar(n) => write!(f, "I{}*", n),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IVstar => write!(f, "IV*"),
            KodairaType::IIIstar => write!(f, "III*"),
            KodairaType::IIstar => write!(f, "II*"),
        }
    }
}

/// Valuation data at one place, after minimalization. `None` means the
/// polynomial is identically zero (valuation +infinity).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalInvariants {
    pub v_c4: Option<usize>,
    pub v_c6: Option<usize>,
    pub v_delta: usize,
    pub twists_applied: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FibError {
    DegreeBookkeeping(String),
    SingularFamily(String),
    Classification(String),
    BadInput(String),
}

impl fmt::Display for FibError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibError::DegreeBookkeeping(s) => write!(f, "degree bookkeeping: {}", s),
            FibError::SingularFamily(s) => write!(f, "singular family: {}", s),
            FibError::Classification(s) => write!(f, "classification: {}", s),
            FibError::BadInput(s) => write!(f, "bad input: {}", s),
        }
    }
}

impl std::error::Error for FibError {}

/// The fiber equation of a family over the projective line.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind {
    /// `y^2 = x (x^2 + b x + a c)`
    WeierstrassTwoTorsion { a: HomogPoly, b: HomogPoly, c: HomogPoly },
    /// `V^2 = q4 U^4 + q2 U^2 W^2 + q0 W^4`
    QuarticGenusOne { q4: HomogPoly, q2: HomogPoly, q0: HomogPoly },
    /// `V^2 = sum_i a[i] U^i W^(4-i)` with all five coefficients present.
    GeneralQuartic { coeffs: Box<[HomogPoly; 5]> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FibrationModel {
    pub kind: ModelKind,
    pub label: String,
}

impl FibrationModel {
    /// Weierstrass family; requires balanced degrees `da + dc = 2 db` and a
    /// non-vanishing discriminant.
    pub fn weierstrass(a: HomogPoly, b: HomogPoly, c: HomogPoly, label: &str) -> Result<Self, FibError> {
        if a.is_zero() || c.is_zero() {
            return Err(FibError::SingularFamily("a and c must be nonzero".into()));
        }
        if a.declared_degree + c.declared_degree != 2 * b.declared_degree {
            return Err(FibError::DegreeBookkeeping(format!(
                "declared degrees ({}, {}, {}) are not balanced",
                a.declared_degree, b.declared_degree, c.declared_degree
            )));
        }
        let m = FibrationModel {
            kind: ModelKind::WeierstrassTwoTorsion { a, b, c },
            label: label.into(),
        };
        if m.delta().poly.is_zero() {
            return Err(FibError::SingularFamily("Delta vanishes identically".into()));
        }
        Ok(m)
    }

    /// Biquadratic genus-one family; same balance condition on `(q4, q2, q0)`.
    pub fn quartic(q4: HomogPoly, q2: HomogPoly, q0: HomogPoly, label: &str) -> Result<Self, FibError> {
        if q4.is_zero() || q0.is_zero() {
            return Err(FibError::SingularFamily("q4 and q0 must be nonzero".into()));
        }
        if q4.declared_degree + q0.declared_degree != 2 * q2.declared_degree {
            return Err(FibError::DegreeBookkeeping(format!(
                "declared degrees ({}, {}, {}) are not balanced",
                q4.declared_degree, q2.declared_degree, q0.declared_degree
            )));
        }
        let m = FibrationModel {
            kind: ModelKind::QuarticGenusOne { q4, q2, q0 },
            label: label.into(),
        };
        if m.delta().poly.is_zero() {
            return Err(FibError::SingularFamily("Delta vanishes identically".into()));
        }
        Ok(m)
    }

    /// General quartic family with all declared degrees equal.
    pub fn general_quartic(coeffs: [HomogPoly; 5], label: &str) -> Result<Self, FibError> {
        let d = coeffs[0].declared_degree;
        if coeffs.iter().any(|c| c.declared_degree != d) {
            return Err(FibError::DegreeBookkeeping(
                "general quartic coefficients must share one declared degree".into(),
            ));
        }
        let m = FibrationModel {
            kind: ModelKind::GeneralQuartic { coeffs: Box::new(coeffs) },
            label: label.into(),
        };
        if m.delta().poly.is_zero() {
            return Err(FibError::SingularFamily("Delta vanishes identically".into()));
        }
        Ok(m)
    }

    pub fn base_var(&self) -> String {
        match &self.kind {
            ModelKind::WeierstrassTwoTorsion { b, .. } => b.var().to_string(),
            ModelKind::QuarticGenusOne { q2, .. } => q2.var().to_string(),
            ModelKind::GeneralQuartic { coeffs } => coeffs[0].var().to_string(),
        }
    }

    /// `k` with `deg a = 2k` for the K3-normalized Weierstrass and quartic
    /// K3 families (`deg b = 4`).
    pub fn k(&self) -> Option<usize> {
        let (da, db) = match &self.kind {
            ModelKind::WeierstrassTwoTorsion { a, b, .. } => (a.declared_degree, b.declared_degree),
            ModelKind::QuarticGenusOne { q4, q2, .. } => (q4.declared_degree, q2.declared_degree),
            ModelKind::GeneralQuartic { .. } => return None,
        };
        if db == 4 && da % 2 == 0 && (1..=2).contains(&(da / 2)) {
            Some(da / 2)
        } else {
            None
        }
    }

    /// The binary-quartic coefficients `(a4, a3, a2, a1, a0)` of the fiber
    /// equation, with the Weierstrass cubic embedded as `a4 = 0`.
    fn quartic_coeffs(&self) -> [HomogPoly; 5] {
        match &self.kind {
            ModelKind::WeierstrassTwoTorsion { a, b, c } => {
                // x^3 + b x^2 + (ac) x, padded to a quartic in x
                let var = b.var();
                let d = b.declared_degree;
                let zero4 = HomogPoly::new(UniPoly::zero(var), 2 * d);
                [
                    HomogPoly::new(UniPoly::zero(var), 0),
                    HomogPoly::new(UniPoly::one(var), 0),
                    b.clone(),
                    a.mul(c),
                    zero4,
                ]
            }
            ModelKind::QuarticGenusOne { q4, q2, q0 } => {
                let var = q2.var();
                let d = q2.declared_degree;
                [
                    q4.clone(),
                    HomogPoly::new(UniPoly::zero(var), d),
                    q2.clone(),
                    HomogPoly::new(UniPoly::zero(var), d),
                    q0.clone(),
                ]
            }
            ModelKind::GeneralQuartic { coeffs } => {
                let c = coeffs.as_ref().clone();
                [c[4].clone(), c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()]
            }
        }
    }

    /// `(c4, c6, Delta)` of the family (of the relative Jacobian for
    /// genus-one models), with `1728 Delta = c4^3 - c6^2` exactly.
    pub fn invariants_c4c6delta(&self) -> (HomogPoly, HomogPoly, HomogPoly) {
        match &self.kind {
            ModelKind::WeierstrassTwoTorsion { a, b, c } => {
                let ac = a.mul(c);
                let b2 = b.mul(b);
                let c4 = b2.sub(&ac.scale(&Rat::from_int(3))).scale(&Rat::from_int(16));
                let c6 = b
                    .mul(&b2.scale(&Rat::from_int(2)).sub(&ac.scale(&Rat::from_int(9))))
                    .scale(&Rat::from_int(-32));
                let delta = ac
                    .mul(&ac)
                    .mul(&b2.sub(&ac.scale(&Rat::from_int(4))))
                    .scale(&Rat::from_int(16));
                (c4, c6, delta)
            }
            _ => {
                // binary-quartic invariants I, J of the fiber equation
                let [a4, a3, a2, a1, a0] = self.quartic_coeffs();
                let var = a2.var().to_string();
                let twelve = Rat::from_int(12);
                let i_inv = pad_add(
                    &[
                        a0.mul(&a4).scale(&twelve),
                        a1.mul(&a3).scale(&Rat::from_int(-3)),
                        a2.mul(&a2),
                    ],
                    &var,
                );
                let j_inv = pad_add(
                    &[
                        a0.mul(&a2).mul(&a4).scale(&Rat::from_int(72)),
                        a0.mul(&a3).mul(&a3).scale(&Rat::from_int(-27)),
                        a1.mul(&a1).mul(&a4).scale(&Rat::from_int(-27)),
                        a1.mul(&a2).mul(&a3).scale(&Rat::from_int(9)),
                        a2.mul(&a2).mul(&a2).scale(&Rat::from_int(-2)),
                    ],
                    &var,
                );
                let c4 = i_inv.scale(&Rat::from_int(16));
                let c6 = j_inv.scale(&Rat::from_int(32));
                // Delta = (c4^3 - c6^2)/1728, exact
                let num = c4.mul(&c4).mul(&c4).sub(&c6.mul(&c6));
                let delta = num.scale(&Rat::new(1, 1728));
                (c4, c6, delta)
            }
        }
    }

    pub fn delta(&self) -> HomogPoly {
        self.invariants_c4c6delta().2
    }

    /// The `j`-map `c4^3 / Delta` as a reduced pair of forms of equal degree.
    pub fn jmap(&self) -> moebius::JMap {
        let (c4, _, delta) = self.invariants_c4c6delta();
        moebius::JMap::new(c4.mul(&c4).mul(&c4), delta)
    }

    /// Places of potentially-bad reduction: the refined gcd-free basis of the
    /// structural polynomials and the invariants jointly, with rational roots
    /// split off, plus infinity when `Delta` drops degree there.
    pub fn places(&self) -> Result<Vec<Place>, FibError> {
        let (c4, c6, delta) = self.invariants_c4c6delta();
        let mut inputs: Vec<UniPoly> = Vec::new();
        match &self.kind {
            ModelKind::WeierstrassTwoTorsion { a, b, c } => {
                let ac = a.mul(c);
                let disc2 = b.mul(b).sub(&ac.scale(&Rat::from_int(4)));
                inputs.push(a.poly.clone());
                inputs.push(c.poly.clone());
                inputs.push(disc2.poly);
            }
            ModelKind::QuarticGenusOne { q4, q2, q0 } => {
                let prod = q4.mul(q0);
                let disc2 = q2.mul(q2).sub(&prod.scale(&Rat::from_int(4)));
                inputs.push(q4.poly.clone());
                inputs.push(q0.poly.clone());
                inputs.push(disc2.poly);
            }
            ModelKind::GeneralQuartic { coeffs } => {
                inputs.push(coeffs[4].poly.clone());
                inputs.push(coeffs[0].poly.clone());
            }
        }
        inputs.push(c4.poly.clone());
        if !c6.is_zero() {
            inputs.push(c6.poly.clone());
        }
        inputs.push(delta.poly.clone());
        // refine across the inputs AND across multiplicity layers within each
        // input: a factor shared by two inputs at different multiplicities
        // would otherwise survive unseparated and report mixed fibers
        let basis = crate::unipoly::refined_gcd_free_basis(&inputs).map_err(FibError::Classification)?;
        // split off rational roots so rational fiber locations get their own place
        let mut split: Vec<UniPoly> = Vec::new();
        for b in basis {
            let roots = b.rational_roots();
            let mut rest = b.clone();
            for (r, mult) in &roots {
                debug_assert_eq!(*mult, 1, "basis elements are squarefree");
                let lin = UniPoly::from_coeffs(b.var.as_str(), vec![-r, Rat::one()]);
                rest = rest.exact_div(&lin);
                split.push(lin);
            }
            if !rest.is_constant() {
                split.push(rest.monic());
            }
        }
        let mut places: Vec<Place> = Vec::new();
        for p in split {
            if valuation_at(&delta, &Place::Finite(p.clone())).map_err(FibError::Classification)? > 0 {
                places.push(Place::finite(p).map_err(FibError::Classification)?);
            }
        }
        if delta.val_infinity() > 0 {
            places.push(Place::Infinity);
        }
        places.sort_by(cmp_place);
        Ok(places)
    }

    /// Local valuations, `(4,6,12)`-minimalization, and the Kodaira type.
    pub fn local_kodaira(&self, place: &Place) -> Result<(LocalInvariants, KodairaType), FibError> {
        let (c4, c6, delta) = self.invariants_c4c6delta();
        let v = |h: &HomogPoly| -> Result<Option<usize>, FibError> {
            if h.is_zero() {
                return Ok(None);
            }
            valuation_at(h, place).map(Some).map_err(FibError::Classification)
        };
        let mut v4 = v(&c4)?;
        let mut v6 = v(&c6)?;
        let mut vd = v(&delta)?.expect("Delta is nonzero");
        let mut twists = 0usize;
        while v4.map_or(true, |x| x >= 4) && v6.map_or(true, |x| x >= 6) && vd >= 12 {
            v4 = v4.map(|x| x - 4);
            v6 = v6.map(|x| x - 6);
            vd -= 12;
            twists += 1;
        }
        let inv = LocalInvariants { v_c4: v4, v_c6: v6, v_delta: vd, twists_applied: twists };
        let kind = classify_kodaira(v4, v6, vd).map_err(|e| {
            FibError::Classification(format!("at {}: {}", place, e))
        })?;
        Ok((inv, kind))
    }

    /// Classify every place and assemble the report; errors when the Euler
    /// bookkeeping does not close up.
    pub fn fiber_configuration(&self) -> Result<FiberReport, FibError> {
        let places = self.places()?;
        let delta = self.delta();
        let mut entries = Vec::new();
        let mut euler = 0usize;
        let mut twist_weight = 0usize;
        for p in places {
            let (inv, kind) = self.local_kodaira(&p)?;
            let deg = p.degree();
            euler += kind.euler() * deg;
            twist_weight += inv.twists_applied * deg;
            entries.push(FiberEntry { place: p, local: inv, kodaira: kind, degree: deg });
        }
        let homdeg = delta.declared_degree;
        if euler + 12 * twist_weight != homdeg {
            return Err(FibError::Classification(format!(
                "Euler total {} + 12*{} twists != deg Delta = {} (model {})",
                euler, twist_weight, homdeg, self.label
            )));
        }
        Ok(FiberReport {
            label: self.label.clone(),
            entries,
            euler_total: euler,
            delta_homdeg: homdeg,
        })
    }

    /// Interchange base and fiber coordinates (all coefficient degrees 4).
    ///
    /// Returns the swapped quartic model and, when the swapped fiber equation
    /// is `t * (cubic in t)` so the family is in Weierstrass-convertible form,
    /// the converted two-torsion Weierstrass model as well.
    pub fn swap_base_fiber(&self, new_base_var: &str) -> Result<SwapResult, FibError> {
        if matches!(self.kind, ModelKind::WeierstrassTwoTorsion { .. }) {
            return Err(FibError::BadInput("base-fiber swap is defined on quartic models".into()));
        }
        let [a4, a3, a2, a1, a0] = self.quartic_coeffs();
        // index by fiber-coordinate power: up[i] = coefficient of U^i
        let up = [a0, a1, a2, a3, a4];
        if up.iter().any(|c| !c.is_zero() && c.declared_degree != 4) {
            return Err(FibError::BadInput(
                "base-fiber swap needs all coefficients of declared degree 4 (k = 2)".into(),
            ));
        }
        // grid[i][j]: coefficient of U^i t0^j t1^(4-j) W^(4-i); transposing the
        // grid interchanges the roles of [U : W] and [t0 : t1]
        let mut new_up: Vec<HomogPoly> = Vec::with_capacity(5);
        for j in 0..5usize {
            let col: Vec<Rat> = up.iter().map(|c| c.hcoeff(j)).collect();
            new_up.push(HomogPoly::new(UniPoly::from_coeffs(new_base_var, col), 4));
        }
        let label = format!("{} (base-fiber swapped)", self.label);
        let swapped = if new_up[1].is_zero() && new_up[3].is_zero() {
            FibrationModel::quartic(new_up[4].clone(), new_up[2].clone(), new_up[0].clone(), &label)?
        } else {
            FibrationModel::general_quartic(
                [
                    new_up[0].clone(),
                    new_up[1].clone(),
                    new_up[2].clone(),
                    new_up[3].clone(),
                    new_up[4].clone(),
                ],
                &label,
            )?
        };
        // Weierstrass-convertible: fiber equation is t * (cubic in t), as in
        // the rho = t0 t1 families; then x = a3 t, y = a3 v gives
        // y^2 = x (x^2 + a2 x + a3 a1) with the factorization (a3, a1) kept.
        let weierstrass = if new_up[0].is_zero()
            && new_up[4].is_zero()
            && !new_up[3].is_zero()
            && !new_up[1].is_zero()
        {
            Some(FibrationModel::weierstrass(
                new_up[3].clone(),
                new_up[2].clone(),
                new_up[1].clone(),
                &format!("{} (Weierstrass form)", label),
            )?)
        } else {
            None
        };
        Ok(SwapResult { swapped, weierstrass })
    }

    /// Model echo for reports.
    pub fn to_json(&self) -> Value {
        match &self.kind {
            ModelKind::WeierstrassTwoTorsion { a, b, c } => json!({
                "kind": "weierstrass-two-torsion",
                "equation": "y^2 = x (x^2 + b x + a c)",
                "a": a, "b": b, "c": c,
                "label": self.label,
            }),
            ModelKind::QuarticGenusOne { q4, q2, q0 } => {
                let mut v = json!({
                    "kind": "quartic-genus-one",
                    "equation": "V^2 = q4 U^4 + q2 U^2 W^2 + q0 W^4",
                    "q4": q4, "q2": q2, "q0": q0,
                    "label": self.label,
                });
                // the double-cover projection lands on the Hirzebruch surface
                // of index 2 - k
                if let Some(k) = self.k() {
                    v["hirzebruch_index"] = json!(2 - k);
                }
                v
            }
            ModelKind::GeneralQuartic { coeffs } => json!({
                "kind": "general-quartic",
                "equation": "V^2 = a4 U^4 + a3 U^3 W + a2 U^2 W^2 + a1 U W^3 + a0 W^4",
                "a4": coeffs[4], "a3": coeffs[3], "a2": coeffs[2], "a1": coeffs[1], "a0": coeffs[0],
                "label": self.label,
            }),
        }
    }
}

/// Sum of homogeneous parts; zero entries are skipped, all nonzero entries
/// must share one declared degree.
fn pad_add(parts: &[HomogPoly], var: &str) -> HomogPoly {
    let degree = parts
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.declared_degree)
        .max()
        .unwrap_or(0);
    let mut acc = UniPoly::zero(var);
    for p in parts {
        if p.is_zero() {
            continue;
        }
        assert_eq!(p.declared_degree, degree, "pad_add degree mismatch");
        acc = acc.add(&p.poly);
    }
    HomogPoly::new(acc, degree)
}

/// The swapped model and its Weierstrass conversion when available.
#[derive(Clone, Debug)]
pub struct SwapResult {
    pub swapped: FibrationModel,
    pub weierstrass: Option<FibrationModel>,
}

/// The Kodaira table in residue characteristic zero, after minimalization.
pub fn classify_kodaira(
    v4: Option<usize>,
    v6: Option<usize>,
    vd: usize,
) -> Result<KodairaType, String> {
    let ge = |o: Option<usize>, n: usize| o.map_or(true, |v| v >= n);
    let eq = |o: Option<usize>, n: usize| o == Some(n);
    if vd == 0 {
        return Ok(KodairaType::I(0));
    }
    if eq(v4, 0) {
        return Ok(KodairaType::I(vd));
    }
    let t = if ge(v4, 1) && eq(v6, 1) && vd == 2 {
        KodairaType::II
    } else if eq(v4, 1) && ge(v6, 2) && vd == 3 {
        KodairaType::III
    } else if ge(v4, 2) && eq(v6, 2) && vd == 4 {
        KodairaType::IV
    } else if ge(v4, 2) && ge(v6, 3) && vd == 6 {
        KodairaType::Istar(0)
    } else if eq(v4, 2) && eq(v6, 3) && vd > 6 {
        KodairaType::Istar(vd - 6)
    } else if ge(v4, 3) && eq(v6, 4) && vd == 8 {
        KodairaType::IVstar
    } else if eq(v4, 3) && ge(v6, 5) && vd == 9 {
        KodairaType::IIIstar
    } else if ge(v4, 4) && eq(v6, 5) && vd == 10 {
        KodairaType::IIstar
    } else {
        return Err(format!(
            "valuation triple (v_c4, v_c6, v_Delta) = ({:?}, {:?}, {}) outside the Kodaira table",
            v4, v6, vd
        ));
    };
    Ok(t)
}

/// One classified place.
#[derive(Clone, Debug)]
pub struct FiberEntry {
    pub place: Place,
    pub local: LocalInvariants,
    pub kodaira: KodairaType,
    pub degree: usize,
}

/// The classified singular fibers of a family.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub label: String,
    pub entries: Vec<FiberEntry>,
    pub euler_total: usize,
    pub delta_homdeg: usize,
}

impl FiberReport {
    /// Fiber multiset counted with place degrees (geometric points).
    pub fn multiset(&self) -> BTreeMap<KodairaType, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            if e.kodaira != KodairaType::I(0) {
                *m.entry(e.kodaira).or_insert(0) += e.degree;
            }
        }
        m
    }

    /// The conventional summary string, e.g. `2I0* + 4I2 + 4I1`.
    pub fn multiset_string(&self) -> String {
        let mut items: Vec<(KodairaType, usize)> = self.multiset().into_iter().collect();
        items.sort_by(|a, b| b.0.euler().cmp(&a.0.euler()).then(a.0.cmp(&b.0)));
        let parts: Vec<String> = items
            .iter()
            .map(|(t, n)| if *n == 1 { format!("{}", t) } else { format!("{}{}", n, t) })
            .collect();
        parts.join(" + ")
    }

    pub fn entry_at(&self, place: &Place) -> Option<&FiberEntry> {
        self.entries.iter().find(|e| &e.place == place)
    }

    /// Stable JSON document.
    pub fn to_json(&self, model_echo: Value) -> Value {
        let fibers: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "place": e.place.to_string(),
                    "degree": e.degree,
                    "v_c4": e.local.v_c4,
                    "v_c6": e.local.v_c6,
                    "v_delta": e.local.v_delta,
                    "twists": e.local.twists_applied,
                    "type": e.kodaira.to_string(),
                })
            })
            .collect();
        json!({
            "model": model_echo,
            "fibers": fibers,
            "euler_total": self.euler_total,
            "delta_degree": self.delta_homdeg,
            "summary": self.multiset_string(),
        })
    }
}

/// Parse a fiber multiset expectation like `"2I0* + 4I2 + 4I1"` into a map;
/// used by tests and the verification corpus.
pub fn parse_multiset(s: &str) -> Result<BTreeMap<KodairaType, usize>, String> {
    let mut out = BTreeMap::new();
    for raw in s.split('+') {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        let (count, rest) = {
            let split = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
            if split == 0 {
                (1usize, tok)
            } else {
                (
                    tok[..split].parse::<usize>().map_err(|e| e.to_string())?,
                    &tok[split..],
                )
            }
        };
        let ty = match rest {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "II*" => KodairaType::IIstar,
            "III*" => KodairaType::IIIstar,
            "IV*" => KodairaType::IVstar,
            _ => {
                let star = rest.ends_with('*');
                let core = rest.trim_end_matches('*');
                if let Some(ns) = core.strip_prefix('I') {
                    let n: usize = ns.parse().map_err(|_| format!("bad fiber token {}", tok))?;
                    if star {
                        KodairaType::Istar(n)
                    } else {
                        KodairaType::I(n)
                    }
                } else {
                    return Err(format!("bad fiber token {}", tok));
                }
            }
        };
        *out.entry(ty).or_insert(0) += count;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(coeffs: &[i64], d: usize) -> HomogPoly {
        HomogPoly::new(UniPoly::from_ints("t", coeffs), d)
    }

    fn generic_triple() -> FibrationModel {
        // a = t^4 - 1, b = t^4, c = t^4 - 16
        FibrationModel::weierstrass(
            h(&[-1, 0, 0, 0, 1], 4),
            h(&[0, 0, 0, 0, 1], 4),
            h(&[-16, 0, 0, 0, 1], 4),
            "generic X",
        )
        .unwrap()
    }

    #[test]
    fn weierstrass_invariants_identity() {
        let m = generic_triple();
        let (c4, c6, delta) = m.invariants_c4c6delta();
        // 1728 Delta = c4^3 - c6^2
        let lhs = delta.poly.scale(&Rat::from_int(1728));
        let rhs = c4.poly.pow(3).sub(&c6.poly.pow(2));
        assert_eq!(lhs, rhs);
        assert_eq!(c4.declared_degree, 8);
        assert_eq!(c6.declared_degree, 12);
        assert_eq!(delta.declared_degree, 24);
    }

    #[test]
    fn generic_family_classification() {
        let m = generic_triple();
        let rep = m.fiber_configuration().unwrap();
        assert_eq!(rep.euler_total, 24);
        assert_eq!(rep.multiset(), parse_multiset("8I2 + 8I1").unwrap());
        // 8 I2 at roots of ac (degree total 8), 8 I1 at roots of b^2-4ac
        let i2: usize = rep
            .entries
            .iter()
            .filter(|e| e.kodaira == KodairaType::I(2))
            .map(|e| e.degree)
            .sum();
        assert_eq!(i2, 8);
        // no infinity place: deg Delta = 24 exactly
        assert!(rep.entries.iter().all(|e| e.place != Place::Infinity));
    }

    #[test]
    fn kodaira_table_spot_checks() {
        assert_eq!(classify_kodaira(Some(0), Some(0), 2).unwrap(), KodairaType::I(2));
        assert_eq!(classify_kodaira(Some(2), Some(3), 6).unwrap(), KodairaType::Istar(0));
        assert_eq!(classify_kodaira(Some(2), Some(3), 8).unwrap(), KodairaType::Istar(2));
        assert_eq!(classify_kodaira(Some(1), Some(1), 2).unwrap(), KodairaType::II);
        assert_eq!(classify_kodaira(Some(1), Some(2), 3).unwrap(), KodairaType::III);
        assert_eq!(classify_kodaira(Some(2), Some(2), 4).unwrap(), KodairaType::IV);
        assert_eq!(classify_kodaira(Some(3), Some(4), 8).unwrap(), KodairaType::IVstar);
        assert_eq!(classify_kodaira(Some(3), Some(5), 9).unwrap(), KodairaType::IIIstar);
        assert_eq!(classify_kodaira(Some(4), Some(5), 10).unwrap(), KodairaType::IIstar);
        assert!(classify_kodaira(Some(1), Some(1), 5).is_err());
    }

    #[test]
    fn y_model_swaps_fiber_types() {
        // Y model of the generic triple: (1, -2b, b^2 - 4ac)
        let a = h(&[-1, 0, 0, 0, 1], 4);
        let b = h(&[0, 0, 0, 0, 1], 4);
        let c = h(&[-16, 0, 0, 0, 1], 4);
        let ac = a.mul(&c);
        let disc2 = b.mul(&b).sub(&ac.scale(&Rat::from_int(4)));
        let y = FibrationModel::weierstrass(
            HomogPoly::new(UniPoly::one("t"), 0),
            b.scale(&Rat::from_int(-2)),
            disc2,
            "generic Y",
        )
        .unwrap();
        let rep = y.fiber_configuration().unwrap();
        assert_eq!(rep.multiset(), parse_multiset("8I2 + 8I1").unwrap());
        // I1 now sit over the roots of ac: t = 1 is a root of a
        let at_one = rep
            .entry_at(&Place::finite(UniPoly::from_ints("t", &[-1, 1])).unwrap())
            .unwrap();
        assert_eq!(at_one.kodaira, KodairaType::I(1));
        // and I2 over roots of b^2 - 4ac (swapped relative to the X model)
        let x_rep = generic_triple().fiber_configuration().unwrap();
        let x_at_one = x_rep
            .entry_at(&Place::finite(UniPoly::from_ints("t", &[-1, 1])).unwrap())
            .unwrap();
        assert_eq!(x_at_one.kodaira, KodairaType::I(2));
    }

    #[test]
    fn quartic_model_matches_jacobian() {
        // Z model of the generic triple has the same (c4, c6, Delta)
        // valuations as the Y model
        let a = h(&[-1, 0, 0, 0, 1], 4);
        let b = h(&[0, 0, 0, 0, 1], 4);
        let c = h(&[-16, 0, 0, 0, 1], 4);
        let z = FibrationModel::quartic(a.clone(), b.clone(), c.clone(), "generic Z").unwrap();
        let rep = z.fiber_configuration().unwrap();
        assert_eq!(rep.multiset(), parse_multiset("8I2 + 8I1").unwrap());
        assert_eq!(rep.euler_total, 24);
    }

    #[test]
    fn multiset_parser() {
        let m = parse_multiset("2I0* + 4I2 + 4I1").unwrap();
        assert_eq!(m[&KodairaType::Istar(0)], 2);
        assert_eq!(m[&KodairaType::I(2)], 4);
        assert_eq!(m[&KodairaType::I(1)], 4);
        assert_eq!(parse_multiset("3I0* + I4 + 2I1").unwrap()[&KodairaType::I(4)], 1);
    }
}
