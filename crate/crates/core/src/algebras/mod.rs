//! Finite-dimensional algebras, R⊗S arithmetic and Jacobson radicals.

mod bimodule;
mod radical;
mod structure;
mod tensor;

pub use bimodule::Bimodule;
pub use radical::jacobson_radical;
pub use structure::{AlgElement, StructAlgebra};
pub use tensor::{TensorElement, TensorRing};
