//! Base-change double covers of families: pull back along `[s0 : s1] ->
//! [s0^2 : s1^2]` or `[t0 : t1] -> [t0^2 + t1^2 : 2 t0 t1]`, reduce the
//! pulled-back model to a minimal one, and report the induced even eight
//! (the non-central components of the two `I0*` fibers over the branch
//! points downstairs).

use crate::fibration::branch::{base_change_branch_report, BranchReport};
use crate::fibration::{FibError, FibrationModel, ModelKind};
use crate::homog::{valuation_at, HomogPoly, Place};
use crate::rat::Rat;
use crate::unipoly::{refined_gcd_free_basis, UniPoly};

/// The two base covers used by the construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseChange {
    /// `[s0 : s1] -> [t0 : t1] = [s0^2 : s1^2]`, branched over `t = 0, oo`.
    Square,
    /// `[t0 : t1] -> [u0 : u1] = [t0^2 + t1^2 : 2 t0 t1]`, branched over `u = +-1`.
    SumOfSquares,
}

impl BaseChange {
    /// The degree-two forms defining the cover, in the upstairs variable.
    fn forms(&self, upstream_var: &str) -> (HomogPoly, HomogPoly) {
        match self {
            BaseChange::Square => (
                HomogPoly::new(UniPoly::monomial(upstream_var, Rat::one(), 2), 2),
                HomogPoly::new(UniPoly::one(upstream_var), 2),
            ),
            BaseChange::SumOfSquares => (
                HomogPoly::new(UniPoly::from_ints(upstream_var, &[1, 0, 1]), 2),
                HomogPoly::new(UniPoly::from_ints(upstream_var, &[0, 2]), 2),
            ),
        }
    }

    /// The branch places downstairs.
    pub fn branch_places(&self) -> [Place; 2] {
        match self {
            BaseChange::Square => [
                Place::Finite(UniPoly::x("t")),
                Place::Infinity,
            ],
            BaseChange::SumOfSquares => [
                Place::Finite(UniPoly::from_ints("u", &[-1, 1])),
                Place::Finite(UniPoly::from_ints("u", &[1, 1])),
            ],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseChange::Square => "square",
            BaseChange::SumOfSquares => "sum-of-squares",
        }
    }
}

/// A pulled-back model together with the even eight of the induced
/// degree-two map and the minimalizing twists that were applied.
#[derive(Clone, Debug)]
pub struct CoverResult {
    pub model: FibrationModel,
    pub branch: BranchReport,
    pub twists: Vec<(Place, usize)>,
}

/// Pull a model back along the cover and reduce it to a minimal model.
pub fn base_change_cover(
    model: &FibrationModel,
    cover: BaseChange,
    upstream_var: &str,
) -> Result<CoverResult, FibError> {
    let (f0, f1) = cover.forms(upstream_var);
    let pulled = match &model.kind {
        ModelKind::WeierstrassTwoTorsion { a, b, c } => FibrationModel::weierstrass(
            a.subst_forms(&f0, &f1),
            b.subst_forms(&f0, &f1),
            c.subst_forms(&f0, &f1),
            &format!("{} ({} pullback)", model.label, cover.name()),
        )?,
        ModelKind::QuarticGenusOne { q4, q2, q0 } => FibrationModel::quartic(
            q4.subst_forms(&f0, &f1),
            q2.subst_forms(&f0, &f1),
            q0.subst_forms(&f0, &f1),
            &format!("{} ({} pullback)", model.label, cover.name()),
        )?,
        ModelKind::GeneralQuartic { .. } => {
            return Err(FibError::BadInput("base change of a general quartic model is not needed".into()))
        }
    };
    let (minimal, twists) = minimalize_model(&pulled)?;
    let branch = base_change_branch_report(model, &cover.branch_places(), cover.name())?;
    Ok(CoverResult { model: minimal, branch, twists })
}

/// Remove all `(4, 6, 12)`-twists from a model: at every place (including
/// infinity) where the coefficients allow it, absorb `pi^2` into the fiber
/// coordinates. For Weierstrass models the factor is split between `a` and
/// `c` as evenly as their valuations allow, keeping the recorded
/// factorization meaningful.
pub fn minimalize_model(model: &FibrationModel) -> Result<(FibrationModel, Vec<(Place, usize)>), FibError> {
    let mut twists: Vec<(Place, usize)> = Vec::new();
    match &model.kind {
        ModelKind::WeierstrassTwoTorsion { a, b, c } => {
            let mut a = a.clone();
            let mut b = b.clone();
            let mut c = c.clone();
            let polys: Vec<UniPoly> = [&a, &b, &c].iter().map(|h| h.poly.clone()).collect();
            let mut places: Vec<Place> = refined_gcd_free_basis(&polys)
                .map_err(FibError::Classification)?
                .into_iter()
                .map(Place::Finite)
                .collect();
            places.push(Place::Infinity);
            for place in places {
                let mut count = 0usize;
                loop {
                    let (va, vb, vc) = (
                        valuation_at(&a, &place).map_err(FibError::Classification)?,
                        if b.is_zero() { usize::MAX } else { valuation_at(&b, &place).map_err(FibError::Classification)? },
                        valuation_at(&c, &place).map_err(FibError::Classification)?,
                    );
                    if vb < 2 || va + vc < 4 {
                        break;
                    }
                    // split pi^4 between a and c: u + w = 4, u <= va, w <= vc,
                    // preferring the balanced split
                    let lo = 4usize.saturating_sub(vc);
                    let hi = va.min(4);
                    if lo > hi {
                        break;
                    }
                    let u = 2usize.clamp(lo, hi);
                    let w = 4 - u;
                    a = divide_power(&a, &place, u);
                    b = divide_power(&b, &place, 2);
                    c = divide_power(&c, &place, w);
                    count += 1;
                }
                if count > 0 {
                    twists.push((place, count));
                }
            }
            let out = FibrationModel::weierstrass(a, b, c, &model.label)?;
            Ok((out, twists))
        }
        ModelKind::QuarticGenusOne { q4, q2, q0 } => {
            let mut q4 = q4.clone();
            let mut q2 = q2.clone();
            let mut q0 = q0.clone();
            let polys: Vec<UniPoly> = [&q4, &q2, &q0].iter().map(|h| h.poly.clone()).collect();
            let mut places: Vec<Place> = refined_gcd_free_basis(&polys)
                .map_err(FibError::Classification)?
                .into_iter()
                .map(Place::Finite)
                .collect();
            places.push(Place::Infinity);
            for place in places {
                let mut count = 0usize;
                loop {
                    let vs: Vec<usize> = [&q4, &q2, &q0]
                        .iter()
                        .map(|h| {
                            if h.is_zero() {
                                Ok(usize::MAX)
                            } else {
                                valuation_at(h, &place).map_err(FibError::Classification)
                            }
                        })
                        .collect::<Result<_, _>>()?;
                    if vs.iter().any(|&v| v < 2) {
                        break;
                    }
                    q4 = divide_power(&q4, &place, 2);
                    q2 = divide_power(&q2, &place, 2);
                    q0 = divide_power(&q0, &place, 2);
                    count += 1;
                }
                if count > 0 {
                    twists.push((place, count));
                }
            }
            let out = FibrationModel::quartic(q4, q2, q0, &model.label)?;
            Ok((out, twists))
        }
        ModelKind::GeneralQuartic { .. } => Ok((model.clone(), twists)),
    }
}

fn divide_power(h: &HomogPoly, place: &Place, e: usize) -> HomogPoly {
    if e == 0 {
        return h.clone();
    }
    let drop = match place {
        Place::Infinity => e,
        Place::Finite(p) => e * p.deg(),
    };
    if h.is_zero() {
        // the declared degree still drops so the balance stays intact
        return HomogPoly::new(h.poly.clone(), h.declared_degree - drop);
    }
    match place {
        Place::Infinity => HomogPoly::new(h.poly.clone(), h.declared_degree - e),
        Place::Finite(p) => {
            let mut q = h.poly.clone();
            for _ in 0..e {
                q = q.exact_div(p);
            }
            HomogPoly::new(q, h.declared_degree - drop)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_spec, SpecKind};
    use crate::fibration::parse_multiset;

    #[test]
    fn square_cover_of_sixlines_y_gives_twelve_i2() {
        // (2, 3, 5, 11) keeps beta^2 - alpha^2 squarefree
        let kind = SpecKind::SixLinesParams {
            a: Rat::from_int(2),
            b: Rat::from_int(3),
            c: Rat::from_int(5),
            d: Rat::from_int(11),
        };
        let fam = build_spec(&kind).unwrap();
        let cover = base_change_cover(&fam.y, BaseChange::Square, "s").unwrap();
        let rep = cover.model.fiber_configuration().unwrap();
        assert_eq!(rep.multiset(), parse_multiset("12I2").unwrap());
        assert_eq!(rep.euler_total, 24);
        // even eight: all non-central components of the two I0* downstairs
        assert_eq!(cover.branch.total, 8);
    }

    #[test]
    fn square_cover_doubles_valuations() {
        let kind = SpecKind::SixLinesParams {
            a: Rat::from_int(2),
            b: Rat::from_int(3),
            c: Rat::from_int(5),
            d: Rat::from_int(7),
        };
        let fam = build_spec(&kind).unwrap();
        // X pulled back along t = s^2 before minimalization: v_0 and v_oo of
        // Delta double
        let (f0, f1) = BaseChange::Square.forms("s");
        let delta = fam.x.delta();
        let pulled = delta.subst_forms(&f0, &f1);
        let v0 = valuation_at(&delta, &Place::Finite(UniPoly::x("t"))).unwrap();
        let v0p = valuation_at(&pulled, &Place::Finite(UniPoly::x("s"))).unwrap();
        assert_eq!(v0p, 2 * v0);
        assert_eq!(pulled.val_infinity(), 2 * delta.val_infinity());
    }

    #[test]
    fn double_square_cover_quadruples() {
        let kind = SpecKind::SixLinesParams {
            a: Rat::from_int(2),
            b: Rat::from_int(3),
            c: Rat::from_int(5),
            d: Rat::from_int(7),
        };
        let fam = build_spec(&kind).unwrap();
        let delta = fam.x.delta();
        let (f0, f1) = BaseChange::Square.forms("s");
        let once = delta.subst_forms(&f0, &f1);
        // compose with a second square cover
        let (g0, g1) = BaseChange::Square.forms("r");
        let g0 = HomogPoly::new(g0.poly, 2);
        let twice = once.subst_forms(&g0, &g1);
        let v0 = valuation_at(&delta, &Place::Finite(UniPoly::x("t"))).unwrap();
        let v0pp = valuation_at(&twice, &Place::Finite(UniPoly::x("r"))).unwrap();
        assert_eq!(v0pp, 4 * v0);
    }
}
