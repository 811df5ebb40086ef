//! The nine-tuple moduli algebra of the `rho = t0 t1` family with quadratic
//! coefficients: the transpose duality, the scaling group action and its
//! normalization, the marked genus-one curves and their isogenous partners,
//! the rational elliptic surface carrying the bundle data, the base-fiber
//! equivalence of the pulled-back torsor family, and the assembled duality
//! report.

use crate::families::{self, SpecKind};
use crate::fibration::{FibError, FiberReport, FibrationModel, ModelKind};
use crate::homog::HomogPoly;
use crate::isogeny::{rational_point_cert, QuarticTorsor, RationalPointCert, TwoTorsionCurve};
use crate::rat::Rat;
use crate::ratfunc::Coeff;
use crate::sym::SymRat;
use crate::unipoly::UniPoly;
use serde_json::{json, Value};

/// The nine moduli `(alpha2, alpha1, alpha0; beta2, beta1, beta0; gamma2,
/// gamma1, gamma0)` of the quadratics
/// `alpha = alpha2 t0^2 + 2 alpha1 t0 t1 + alpha0 t1^2`, etc.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliNine<F: Coeff = Rat> {
    pub entries: [[F; 3]; 3],
}

impl<F: Coeff> ModuliNine<F> {
    /// Rows are `alpha, beta, gamma`; columns are the `t0^2, t0 t1, t1^2`
    /// coefficients in that order (index 0 is the `2`-subscript).
    pub fn new(alpha: [F; 3], beta: [F; 3], gamma: [F; 3]) -> Self {
        ModuliNine { entries: [alpha, beta, gamma] }
    }

    pub fn alpha(&self) -> &[F; 3] {
        &self.entries[0]
    }

    pub fn beta(&self) -> &[F; 3] {
        &self.entries[1]
    }

    pub fn gamma(&self) -> &[F; 3] {
        &self.entries[2]
    }

    /// The transpose duality `alpha2^dual = alpha2, alpha1^dual = beta2, ...`.
    pub fn dual(&self) -> ModuliNine<F> {
        let e = &self.entries;
        ModuliNine {
            entries: [
                [e[0][0].clone(), e[1][0].clone(), e[2][0].clone()],
                [e[0][1].clone(), e[1][1].clone(), e[2][1].clone()],
                [e[0][2].clone(), e[1][2].clone(), e[2][2].clone()],
            ],
        }
    }

    /// The `(lambda, mu, nu)` scaling action on the moduli.
    pub fn scale(&self, s: &ScaleTriple<F>) -> ModuliNine<F> {
        let l = &s.lambda;
        let m = &s.mu;
        let n = &s.nu;
        let e = &self.entries;
        let w = |f: &F, v: F| f.mul(&v);
        ModuliNine {
            entries: [
                [
                    w(&e[0][0], l.mul(m).mul(n)),
                    w(&e[0][1], l.mul(m)),
                    w(&e[0][2], l.mul(m).div(n)),
                ],
                [
                    w(&e[1][0], l.mul(n)),
                    w(&e[1][1], l.clone()),
                    w(&e[1][2], l.div(n)),
                ],
                [
                    w(&e[2][0], l.mul(n).div(m)),
                    w(&e[2][1], l.div(m)),
                    w(&e[2][2], l.div(m).div(n)),
                ],
            ],
        }
    }

    /// The biquadratic coefficient matrix of the pulled-back torsor family
    /// `Vt^2 = alpha(s0^2, s1^2) Ut^4 + 2 beta(...) Ut^2 Wt^2 + gamma(...) Wt^4`:
    /// entry `(i, j)` is the coefficient of `(s0^4, s0^2 s1^2, s1^4)[i]` times
    /// `(U^4, U^2 W^2, W^4)[j]`. Interchanging base and fiber transposes it.
    pub fn ztilde_matrix(&self) -> [[F; 3]; 3] {
        let two = F::from_int(2);
        let four = F::from_int(4);
        let e = &self.entries;
        [
            [e[0][0].clone(), two.mul(&e[1][0]), e[2][0].clone()],
            [two.mul(&e[0][1]), four.mul(&e[1][1]), two.mul(&e[2][1])],
            [e[0][2].clone(), two.mul(&e[1][2]), e[2][2].clone()],
        ]
    }
}

/// A nonzero scaling triple.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleTriple<F: Coeff = Rat> {
    pub lambda: F,
    pub mu: F,
    pub nu: F,
}

impl<F: Coeff> ScaleTriple<F> {
    pub fn new(lambda: F, mu: F, nu: F) -> Result<Self, FibError> {
        if lambda.is_zero() || mu.is_zero() || nu.is_zero() {
            return Err(FibError::BadInput("scale entries must be nonzero".into()));
        }
        Ok(ScaleTriple { lambda, mu, nu })
    }

    pub fn identity() -> Self {
        ScaleTriple { lambda: F::one(), mu: F::one(), nu: F::one() }
    }

    pub fn compose(&self, o: &ScaleTriple<F>) -> ScaleTriple<F> {
        ScaleTriple {
            lambda: self.lambda.mul(&o.lambda),
            mu: self.mu.mul(&o.mu),
            nu: self.nu.mul(&o.nu),
        }
    }

    /// Swap the `mu` and `nu` weights (the dual action).
    pub fn swapped(&self) -> ScaleTriple<F> {
        ScaleTriple { lambda: self.lambda.clone(), mu: self.nu.clone(), nu: self.mu.clone() }
    }
}

/// A fully symbolic nine-tuple, for identity proofs.
pub fn symbolic_nine() -> ModuliNine<SymRat> {
    let v = |n: &str| SymRat::var(n);
    ModuliNine::new(
        [v("a2"), v("a1"), v("a0")],
        [v("b2"), v("b1"), v("b0")],
        [v("g2"), v("g1"), v("g0")],
    )
}

/// `dual . scale(l, m, n) = scale(l, n, m) . dual`, exactly.
pub fn dual_scale_commutation<F: Coeff>(m: &ModuliNine<F>, s: &ScaleTriple<F>) -> bool {
    m.scale(s).dual() == m.dual().scale(&s.swapped())
}

impl ModuliNine<Rat> {
    /// The quadratics `alpha, beta, gamma` as degree-2 forms in `t`.
    pub fn quadratics(&self) -> (HomogPoly, HomogPoly, HomogPoly) {
        let q = |row: &[Rat; 3]| {
            HomogPoly::new(
                UniPoly::from_coeffs(
                    "t",
                    vec![row[2].clone(), &Rat::from_int(2) * &row[1], row[0].clone()],
                ),
                2,
            )
        };
        (q(self.alpha()), q(self.beta()), q(self.gamma()))
    }

    pub fn from_quadratics(alpha: &HomogPoly, beta: &HomogPoly, gamma: &HomogPoly) -> Result<Self, FibError> {
        let row = |h: &HomogPoly| -> Result<[Rat; 3], FibError> {
            if h.declared_degree != 2 {
                return Err(FibError::BadInput("expected a degree-2 form".into()));
            }
            Ok([
                h.poly.coeff(2),
                &h.poly.coeff(1) / &Rat::from_int(2),
                h.poly.coeff(0),
            ])
        };
        Ok(ModuliNine::new(row(alpha)?, row(beta)?, row(gamma)?))
    }

    /// The `SpecKind` input for the `rho = t0 t1` family built from these
    /// moduli.
    pub fn family(&self) -> SpecKind {
        let (a, b, g) = self.quadratics();
        SpecKind::CHL14 { alpha: a, beta: b, gamma: g }
    }

    /// Normalize to `alpha2 = gamma0 = 1` (and `alpha1 = 1` when `alpha1 != 0`,
    /// absorbing the residual action). Undefined when `alpha2 gamma0 = 0`;
    /// over the rationals it also requires `alpha2 gamma0` to be a square,
    /// which is reported as an explicit obstruction.
    pub fn normalize(&self) -> Result<(ModuliNine<Rat>, ScaleTriple<Rat>), FibError> {
        let a2 = &self.entries[0][0];
        let g0 = &self.entries[2][2];
        if a2.is_zero() || g0.is_zero() {
            return Err(FibError::BadInput(
                "normalization undefined: alpha2 = 0 or gamma0 = 0 (t0 t1 divides alpha or gamma)".into(),
            ));
        }
        let prod = a2 * g0;
        let root = prod.sqrt_exact().ok_or_else(|| {
            FibError::BadInput(format!(
                "normalization needs sqrt({}) which is not rational; alpha2 gamma0 must be a square over Q",
                prod
            ))
        })?;
        let lambda = root.inv().unwrap();
        // mu nu = 1/(lambda alpha2); fix alpha1 -> 1 through mu when possible
        let p = (&lambda * a2).inv().unwrap();
        let a1 = &self.entries[0][1];
        let (mu, nu) = if a1.is_zero() {
            (Rat::one(), p)
        } else {
            let mu = (&lambda * a1).inv().unwrap();
            let nu = &p / &mu;
            (mu, nu)
        };
        let scale = ScaleTriple::new(lambda, mu, nu)?;
        let out = self.scale(&scale);
        debug_assert!(out.entries[0][0].is_one());
        debug_assert!(out.entries[2][2].is_one());
        Ok((out, scale))
    }

    /// The curves of the construction: the genus-one curves
    /// `Chat_alpha: V^2 = alpha2 U^4 + 2 alpha1 U^2 + alpha0` and
    /// `Chat_gamma`, the marked elliptic curves
    /// `E_alpha: y^2 = x (x^2 + 2 alpha1 x + alpha2 alpha0)` and `E_gamma`,
    /// and their two-isogenous partners.
    pub fn chl_curves(&self) -> Result<ChlCurves, FibError> {
        let build = |row: &[Rat; 3], name: &str| -> Result<(QuarticTorsor<Rat>, TwoTorsionCurve<Rat>, TwoTorsionCurve<Rat>), FibError> {
            let torsor = QuarticTorsor::new(
                row[0].clone(),
                &Rat::from_int(2) * &row[1],
                row[2].clone(),
            )
            .map_err(|e| FibError::SingularFamily(format!("Chat_{}: {}", name, e)))?;
            let e_curve = TwoTorsionCurve::new(
                row[0].clone(),
                &Rat::from_int(2) * &row[1],
                row[2].clone(),
            )
            .map_err(|e| FibError::SingularFamily(format!("E_{}: {}", name, e)))?;
            let ehat = e_curve.isogenous_curve();
            Ok((torsor, e_curve, ehat))
        };
        let (chat_alpha, e_alpha, ehat_alpha) = build(self.alpha(), "alpha")?;
        let (chat_gamma, e_gamma, ehat_gamma) = build(self.gamma(), "gamma")?;
        Ok(ChlCurves { chat_alpha, chat_gamma, e_alpha, e_gamma, ehat_alpha, ehat_gamma })
    }

    /// The rational elliptic surface `y^2 = x (x^2 + 2 beta x + alpha gamma)`
    /// over `[t0 : t1]` with its fiber report and the two marked double-fiber
    /// curves `E_alpha` (over `[1:0]`) and `E_gamma` (over `[0:1]`).
    pub fn rational_surface_j(&self) -> Result<(FibrationModel, FiberReport, TwoTorsionCurve<Rat>, TwoTorsionCurve<Rat>), FibError> {
        // the family validation is exactly that of the K3 specialization
        families::build_spec(&self.family())?;
        let (alpha, beta, gamma) = self.quadratics();
        let j_model = FibrationModel::weierstrass(
            alpha,
            beta.scale(&Rat::from_int(2)),
            gamma,
            "rational elliptic surface J",
        )?;
        let rep = j_model.fiber_configuration()?;
        let curves = self.chl_curves()?;
        Ok((j_model, rep, curves.e_alpha, curves.e_gamma))
    }
}

/// The curve data of a nine-tuple.
#[derive(Clone, Debug)]
pub struct ChlCurves {
    pub chat_alpha: QuarticTorsor<Rat>,
    pub chat_gamma: QuarticTorsor<Rat>,
    pub e_alpha: TwoTorsionCurve<Rat>,
    pub e_gamma: TwoTorsionCurve<Rat>,
    pub ehat_alpha: TwoTorsionCurve<Rat>,
    pub ehat_gamma: TwoTorsionCurve<Rat>,
}

/// `j` of the Jacobian of a biquadratic torsor, through the binary-quartic
/// invariants (the `C = Ehat` route).
pub fn torsor_jacobian_j(t: &QuarticTorsor<Rat>) -> Rat {
    // Jac(Chat) = Ehat of the curve (q4, q2, q0)
    let e = TwoTorsionCurve::new(t.q4.clone(), t.q2.clone(), t.q0.clone())
        .expect("smooth torsor data");
    e.isogenous_curve().j_invariant()
}

/// Build the pulled-back torsor family `Ztilde(m)` over `s` (with `t = s^2`).
pub fn ztilde_model(m: &ModuliNine<Rat>, var: &str) -> Result<FibrationModel, FibError> {
    let (alpha, beta, gamma) = m.quadratics();
    let sq = |h: &HomogPoly| {
        let s2 = HomogPoly::new(UniPoly::monomial(var, Rat::one(), 2), 2);
        let one = HomogPoly::new(UniPoly::one(var), 2);
        h.subst_forms(&s2, &one)
    };
    FibrationModel::quartic(
        sq(&alpha),
        sq(&beta).scale(&Rat::from_int(2)),
        sq(&gamma),
        "Ztilde",
    )
}

/// Lemma-6.4 check: interchanging base and fiber coordinates of `Ztilde(m)`
/// yields exactly `Ztilde(dual(m))` as polynomial data.
pub fn equiv_fibration_check(m: &ModuliNine<Rat>) -> Result<bool, FibError> {
    let z = ztilde_model(m, "s")?;
    let swapped = z.swap_base_fiber("s")?.swapped;
    let z_dual = ztilde_model(&m.dual(), "s")?;
    let eq = match (&swapped.kind, &z_dual.kind) {
        (
            ModelKind::QuarticGenusOne { q4: a4, q2: a2, q0: a0 },
            ModelKind::QuarticGenusOne { q4: b4, q2: b2, q0: b0 },
        ) => a4 == b4 && a2 == b2 && a0 == b0,
        _ => false,
    };
    Ok(eq)
}

/// The same identity with all nine moduli as free indeterminates: the
/// biquadratic matrix of `Ztilde(m)` transposes into that of the dual tuple.
pub fn equiv_fibration_symbolic() -> bool {
    let m = symbolic_nine();
    let a = m.ztilde_matrix();
    let b = m.dual().ztilde_matrix();
    for i in 0..3 {
        for j in 0..3 {
            if a[i][j] != b[j][i] {
                return false;
            }
        }
    }
    true
}

/// Which half of the `I2` fibers is marked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Alpha,
    Gamma,
}

/// The duality data assembled from a normalized nine-tuple: the marked
/// elliptic curve with its order-two subgroup, the genus-one curve the dual
/// string is compactified on, the isogenous curve, the rational elliptic
/// surface with its double-fiber curves, and the `j`-invariant cross-checks.
#[derive(Clone, Debug)]
pub struct CHLReport {
    pub choice: Choice,
    pub normalized: ModuliNine<Rat>,
    pub scale_used: ScaleTriple<Rat>,
    pub e_choice: TwoTorsionCurve<Rat>,
    pub chat_choice: QuarticTorsor<Rat>,
    pub ehat_choice: TwoTorsionCurve<Rat>,
    pub j_ehat: Rat,
    pub j_jac_chat: Rat,
    pub j_e: Rat,
    /// The closing remark's display `(1/27)(2 alpha0 - 4)^3/(alpha0^2 (alpha0 - 1))`,
    /// when defined under the normalization.
    pub j_formula_value: Option<Rat>,
    pub j_formula_match: Option<bool>,
    pub cert: RationalPointCert<Rat>,
    pub j_surface: FibrationModel,
    pub j_surface_report: FiberReport,
    /// Monodromy metadata, derived rather than computed: the square pullback
    /// of the Weierstrass family carries a two-torsion section and all its
    /// finite singular fibers are multiplicative, which pins the monodromy
    /// into the congruence subgroup of level two.
    pub monodromy_gamma0_2: bool,
}

/// Assemble the duality report for a (normalizable) nine-tuple.
pub fn duality_report(m: &ModuliNine<Rat>, choice: Choice) -> Result<CHLReport, FibError> {
    let (normalized, scale_used) = m.normalize()?;
    let working = match choice {
        Choice::Alpha => normalized.clone(),
        // choosing gamma exchanges alpha_i <-> gamma_i
        Choice::Gamma => ModuliNine::new(
            normalized.gamma().clone(),
            normalized.beta().clone(),
            normalized.alpha().clone(),
        ),
    };
    let curves = working.chl_curves()?;
    let (j_surface, j_surface_report, _, _) = normalized.rational_surface_j()?;
    let e_choice = curves.e_alpha.clone();
    let chat_choice = curves.chat_alpha.clone();
    let ehat_choice = curves.ehat_alpha.clone();
    let j_e = e_choice.j_invariant();
    let j_ehat = ehat_choice.j_invariant();
    let j_jac_chat = torsor_jacobian_j(&chat_choice);
    let a0 = &working.entries[0][2];
    let one = Rat::one();
    let j_formula_value = if !a0.is_zero() && a0 != &one {
        let num = (&(&Rat::from_int(2) * a0) - &Rat::from_int(4)).pow(3);
        let den = &(a0 * a0) * &(a0 - &one);
        Some(&(&num / &den) / &Rat::from_int(27))
    } else {
        None
    };
    let j_formula_match = j_formula_value.as_ref().map(|v| v == &j_e);
    let cert = rational_point_cert(&e_choice, None)
        .map_err(|e| FibError::BadInput(e.to_string()))?;
    // the Gamma_0(2) structure: the square pullback of the K3 family has a
    // two-torsion section by construction; check multiplicativity of all its
    // finite fibers
    let monodromy_gamma0_2 = {
        let fam = families::build_spec(&normalized.family())?;
        let pulled = crate::families::cover::base_change_cover(
            &fam.x,
            crate::families::cover::BaseChange::Square,
            "s",
        )?;
        let rep = pulled.model.fiber_configuration()?;
        rep.entries
            .iter()
            .filter(|e| e.place != crate::homog::Place::Infinity)
            .all(|e| e.kodaira.is_multiplicative())
            && rep
                .entry_at(&crate::homog::Place::Infinity)
                .map_or(true, |e| e.kodaira.is_multiplicative())
    };
    Ok(CHLReport {
        choice,
        normalized,
        scale_used,
        e_choice,
        chat_choice,
        ehat_choice,
        j_ehat,
        j_jac_chat,
        j_e,
        j_formula_value,
        j_formula_match,
        cert,
        j_surface,
        j_surface_report,
        monodromy_gamma0_2,
    })
}

impl CHLReport {
    pub fn to_json(&self) -> Value {
        let nine = |m: &ModuliNine<Rat>| -> Value {
            json!({
                "alpha": m.alpha().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "beta": m.beta().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "gamma": m.gamma().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            })
        };
        let curve = |c: &TwoTorsionCurve<Rat>| -> Value {
            json!({"a": c.a.to_string(), "b": c.b.to_string(), "c": c.c.to_string()})
        };
        json!({
            "choice": match self.choice { Choice::Alpha => "alpha", Choice::Gamma => "gamma" },
            "normalized_moduli": nine(&self.normalized),
            "scale_used": {
                "lambda": self.scale_used.lambda.to_string(),
                "mu": self.scale_used.mu.to_string(),
                "nu": self.scale_used.nu.to_string(),
            },
            "E": curve(&self.e_choice),
            "marked_subgroup": ["sigma (point at infinity)", "tau = (0, 0)"],
            "Chat": {
                "q4": self.chat_choice.q4.to_string(),
                "q2": self.chat_choice.q2.to_string(),
                "q0": self.chat_choice.q0.to_string(),
            },
            "Ehat": curve(&self.ehat_choice),
            "j_E": self.j_e.to_string(),
            "j_Ehat": self.j_ehat.to_string(),
            "j_Jac_Chat": self.j_jac_chat.to_string(),
            "bundle_surface": self.j_surface_report.to_json(self.j_surface.to_json()),
            "flags": {
                "j_jac_matches_ehat": self.j_jac_chat == self.j_ehat,
                "monodromy_gamma0_2": self.monodromy_gamma0_2,
                "j_formula_value": self.j_formula_value.as_ref().map(|r| r.to_string()),
                "j_formula_match": self.j_formula_match,
                "cert": serde_json::to_value(&self.cert).unwrap(),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nine(vals: [[i64; 3]; 3]) -> ModuliNine<Rat> {
        ModuliNine::new(
            vals[0].map(Rat::from_int),
            vals[1].map(Rat::from_int),
            vals[2].map(Rat::from_int),
        )
    }

    #[test]
    fn dual_is_transpose_and_involution() {
        let m = nine([[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let d = m.dual();
        assert_eq!(d.alpha().clone().map(|r| r), [Rat::from_int(1), Rat::from_int(4), Rat::from_int(7)]);
        assert_eq!(d.beta().clone(), [Rat::from_int(2), Rat::from_int(5), Rat::from_int(8)]);
        assert_eq!(d.gamma().clone(), [Rat::from_int(3), Rat::from_int(6), Rat::from_int(9)]);
        assert_eq!(d.dual(), m);
        // symmetric tuple is a fixed point
        let s = nine([[1, 2, 3], [2, 5, 6], [3, 6, 9]]);
        assert_eq!(s.dual(), s);
    }

    #[test]
    fn scaling_group_action() {
        let m = nine([[1, 1, 1], [1, 1, 1], [1, 1, 1]]);
        let s = ScaleTriple::new(Rat::from_int(2), Rat::from_int(3), Rat::from_int(5)).unwrap();
        let scaled = m.scale(&s);
        // weights on the all-ones tuple reproduce the displayed table
        assert_eq!(scaled.alpha().clone(), [Rat::from_int(30), Rat::from_int(6), Rat::new(6, 5)]);
        assert_eq!(scaled.beta().clone(), [Rat::from_int(10), Rat::from_int(2), Rat::new(2, 5)]);
        assert_eq!(scaled.gamma().clone(), [Rat::new(10, 3), Rat::new(2, 3), Rat::new(2, 15)]);
        // identity and group law
        assert_eq!(m.scale(&ScaleTriple::identity()), m);
        let s2 = ScaleTriple::new(Rat::from_int(7), Rat::new(1, 3), Rat::from_int(2)).unwrap();
        assert_eq!(m.scale(&s).scale(&s2), m.scale(&s.compose(&s2)));
    }

    #[test]
    fn dual_scale_commutation_symbolic() {
        let m = symbolic_nine();
        let s = ScaleTriple::new(SymRat::var("l"), SymRat::var("m"), SymRat::var("n")).unwrap();
        assert!(dual_scale_commutation(&m, &s));
    }

    #[test]
    fn normalization() {
        // already normalized (alpha2 = gamma0 = alpha1 = 1) stays put
        let m = nine([[1, 1, 2], [3, 4, 5], [6, 7, 1]]);
        let (out, s) = m.normalize().unwrap();
        assert_eq!(out, m);
        assert_eq!(s, ScaleTriple::identity());
        // (4, ..., 1): lambda mu nu 4 = 1 and lambda/(mu nu) = 1
        let m = nine([[4, 0, 2], [3, 4, 5], [6, 7, 1]]);
        let (out, s) = m.normalize().unwrap();
        assert!(out.entries[0][0].is_one());
        assert!(out.entries[2][2].is_one());
        assert_eq!(m.scale(&s), out);
        // alpha2 = 0 is undefined
        let m = nine([[0, 1, 2], [3, 4, 5], [6, 7, 1]]);
        assert!(m.normalize().is_err());
        // non-square alpha2 gamma0 is an explicit obstruction over Q
        let m = nine([[2, 1, 2], [3, 4, 5], [6, 7, 1]]);
        assert!(m.normalize().is_err());
        // normalization commutes with dual up to swapping mu and nu
        let m = nine([[4, 2, 3], [5, 7, 11], [13, 17, 1]]);
        let (_, s) = m.normalize().unwrap();
        let dual_scaled = m.dual().scale(&s.swapped());
        assert!(dual_scaled.entries[0][0].is_one());
        assert!(dual_scaled.entries[2][2].is_one());
    }

    #[test]
    fn curves_and_isogeny_consistency() {
        // alpha = (1, 1, -1): E_alpha: y^2 = x (x^2 + 2x - 1)
        let m = nine([[1, 1, -1], [2, 3, 5], [7, 11, 1]]);
        let curves = m.chl_curves().unwrap();
        assert_eq!(curves.e_alpha.b, Rat::from_int(2));
        assert_eq!(curves.e_alpha.ac(), Rat::from_int(-1));
        // at alpha2 = 1 the isogenous curve matches the displayed
        // Y^2 = X (X^2 - 4 alpha1 X + 4 (alpha1^2 - alpha0))
        assert_eq!(curves.ehat_alpha.b, Rat::from_int(-4));
        assert_eq!(
            curves.ehat_alpha.ac(),
            Rat::from_int(4) * (Rat::from_int(1) - Rat::from_int(-1))
        );
        // j(Jac(Chat_alpha)) = j(Ehat_alpha)
        assert_eq!(torsor_jacobian_j(&curves.chat_alpha), curves.ehat_alpha.j_invariant());
    }

    #[test]
    fn symbolic_equivalence_of_fibrations() {
        assert!(equiv_fibration_symbolic());
    }

    #[test]
    fn j_formula_cross_check_value() {
        // alpha0 = -1, alpha2 = alpha1 = 1: the displayed formula gives 4
        let a0 = Rat::from_int(-1);
        let num = (&(&Rat::from_int(2) * &a0) - &Rat::from_int(4)).pow(3);
        let den = &(&a0 * &a0) * &(&a0 - &Rat::one());
        let v = &(&num / &den) / &Rat::from_int(27);
        assert_eq!(v, Rat::from_int(4));
        // while the standard j of y^2 = x(x^2 + 2x - 1) is 10976
        let e = TwoTorsionCurve::new(Rat::one(), Rat::from_int(2), Rat::from_int(-1)).unwrap();
        assert_eq!(e.j_invariant(), Rat::from_int(10976));
    }
}
