//! Exact arithmetic and solvers for inner conjugators of homomorphisms
//! φ: R → R⊗S, with R central simple and S drawn from a fixed list of
//! coefficient ring families.

pub mod algebras;
pub mod applications;
pub mod backends;
pub mod error;
pub mod ground_rings;
pub mod linalg;
pub mod sn_core;

pub use error::{Error, Result};
