//! Central simple algebras as spanning systems: every linear map R → R is a
//! sum of maps x ↦ w x z.

use std::sync::Arc;

use crate::algebras::{AlgElement, StructAlgebra};
use crate::error::Error;
use crate::ground_rings::{FieldElement, Ring};
use crate::linalg::{self, Matrix, Pivoting};

/// A verified central simple algebra together with the inverse of its
/// d²×d² spanning matrix.
#[derive(Clone, Debug)]
pub struct CentralSimple {
    alg: Arc<StructAlgebra>,
    span_inv: Matrix<FieldElement>,
}

/// Pairs (w_j, z_j) with Σ_j w_j r_k z_j = δ_ik·1 for every k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSystem {
    pub index: usize,
    pub pairs: Vec<(AlgElement, AlgElement)>,
}

impl CentralSimple {
    /// Fails with [`Error::NotCentralSimple`] when the spanning matrix is
    /// singular.
    pub fn new(alg: Arc<StructAlgebra>) -> Result<Self, Error> {
        let f = alg.field();
        let m = alg.spanning_matrix();
        let first = linalg::inverse(&f, &m, Pivoting::FirstNonzero).ok_or(Error::NotCentralSimple)?;
        let last = linalg::inverse(&f, &m, Pivoting::LastNonzero).ok_or(Error::NotCentralSimple)?;
        if first != last {
            return Err(Error::Inconsistent("spanning matrix inverse depends on pivot order".into()));
        }
        Ok(CentralSimple { alg, span_inv: first })
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<StructAlgebra> {
        &self.alg
    }

    /// Given the values T(b_j) of a linear map as a flat vector indexed
    /// (j, m) ↦ j·d + m, returns λ with T = Σ_{p,q} λ_{p·d+q} L_{b_p} R_{b_q}.
    /// Coefficients may live in any ring containing F via `scale`.
    pub fn operator_coefficients<E: Clone>(
        &self,
        rhs: &[E],
        zero: &E,
        add: impl Fn(&E, &E) -> E,
        scale: impl Fn(&FieldElement, &E) -> E,
    ) -> Vec<E> {
        let f = self.alg.field();
        self.span_inv
            .iter()
            .map(|row| {
                row.iter().zip(rhs).fold(
                    zero.clone(),
                    |acc, (c, v)| {
                        if f.is_zero(c) {
                            acc
                        } else {
                            add(&acc, &scale(c, v))
                        }
                    },
                )
            })
            .collect()
    }

    pub fn dual_system(&self, i: usize) -> Result<DualSystem, Error> {
        let a = &*self.alg;
        let f = a.field();
        let d = a.dim();
        if i >= d {
            return Err(Error::Mismatch(format!("basis index {i} out of range")));
        }
        let mut rhs = vec![f.zero(); d * d];
        rhs[i * d..(i + 1) * d].clone_from_slice(a.unit());
        let lambda = self.operator_coefficients(&rhs, &f.zero(), |x, y| f.add(x, y), |c, v| f.mul(c, v));
        let pairs: Vec<(AlgElement, AlgElement)> = (0..d)
            .filter_map(|p| {
                let z =
                    a.linear_combination(&lambda[p * d..(p + 1) * d], &(0..d).map(|q| a.basis(q)).collect::<Vec<_>>());
                (!a.is_zero(&z)).then(|| (a.basis(p), z))
            })
            .collect();
        let system = DualSystem { index: i, pairs };
        system.verify(a)?;
        Ok(system)
    }
}

impl DualSystem {
    /// Checks Σ_j w_j r_k z_j = δ_ik·1 for every basis index k.
    pub fn verify(&self, a: &StructAlgebra) -> Result<(), Error> {
        for k in 0..a.dim() {
            let rk = a.basis(k);
            let total = a.sum(self.pairs.iter().map(|(w, z)| a.mul(&a.mul(w, &rk), z)).collect::<Vec<_>>().iter());
            let expected = if k == self.index { a.one() } else { a.zero() };
            if total != expected {
                return Err(Error::Verification(format!(
                    "dual system for {} fails on {}",
                    a.labels()[self.index],
                    a.labels()[k]
                )));
            }
        }
        Ok(())
    }
}
