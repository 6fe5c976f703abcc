//! Exact arithmetic for the base field F and the coefficient rings S.

mod curve;
mod descriptor;
mod field;
mod poly;
mod ratfunc;
mod traits;
mod uni;

pub use curve::{CurveElement, CurveRing};
pub use descriptor::{poly_var_names, render_alg, render_poly, Capabilities, RingDescriptor, RingElement};
pub use field::{BaseField, FieldElement};
pub use poly::{Monomial, Poly, PolyRing, MAX_GCD_VARS};
pub use ratfunc::{RatFunc, RatFuncField};
pub use traits::{Field, Ring};
pub use uni::{UniPoly, UniPolyRing};
