//! Automorphism decomposition, inner-derivation witnesses and the flip test.

mod automorphism;
mod derivation;
mod flip;

pub use automorphism::{
    apply_sigma, decompose_automorphism, generators, invert_sigma, verify_decomposition, AutSpec, Decomposition,
};
pub use derivation::{
    derivation_witness, inner_derivation_witness, module_centralizer, verify_derivation_witness, DerivationSpec,
    DerivationWitness,
};
pub use flip::{flip_innerness_check, verify_flip, FlipDefect, FlipReport};

#[cfg(test)]
mod tests;
