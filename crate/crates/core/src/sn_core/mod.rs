//! Dual systems, homomorphism validation and the coefficient identities
//! behind every solver.

mod coefficients;
mod dual;
mod hom;

pub use coefficients::{
    extract_coefficients, unit_in_span, verify_conjugator, witness, CoefficientTuple, ConjugatorCheck,
};
pub use dual::{CentralSimple, DualSystem};
pub use hom::{validate_hom, validate_hom_with, HomSpec, HomViolation};
