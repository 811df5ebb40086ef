//! Exact-arithmetic machinery for elliptic curves with rational two-torsion,
//! their degree-two isogenies and quartic torsors, and Kodaira classification
//! of the singular fibers of the associated elliptic K3 families over the
//! rational function field, together with the moduli dualities they induce.
//!
//! All arithmetic is exact: arbitrary-precision rationals everywhere, no
//! floating point. Identity proofs are done symbolically, with coefficients as
//! free indeterminates, and are cross-checked at random rational
//! specializations.

pub mod rat;
pub mod unipoly;
pub mod homog;
pub mod ratfunc;
pub mod sym;
pub mod isogeny;
pub mod fibration;
pub mod families;
pub mod chl;
pub mod verify;

pub use homog::{HomogPoly, Place, ProjPoint};
pub use rat::Rat;
pub use ratfunc::{Coeff, RatFunc};
pub use unipoly::{FactorMultiset, UniPoly};
