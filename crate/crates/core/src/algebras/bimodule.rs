//! Finite-dimensional unital R-bimodules given by action matrices.

use std::sync::Arc;

use super::structure::{AlgElement, StructAlgebra};
use crate::error::Error;
use crate::ground_rings::{FieldElement, Ring};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    r: Arc<StructAlgebra>,
    dim: usize,
    /// left[i] = matrix of v ↦ b_i·v
    left: Vec<Matrix<FieldElement>>,
    /// right[i] = matrix of v ↦ v·b_i
    right: Vec<Matrix<FieldElement>>,
}

impl Bimodule {
    pub fn new(
        r: Arc<StructAlgebra>,
        dim: usize,
        left: Vec<Matrix<FieldElement>>,
        right: Vec<Matrix<FieldElement>>,
    ) -> Result<Self, Error> {
        let d = r.dim();
        if left.len() != d || right.len() != d {
            return Err(Error::InvalidAlgebra("one action matrix per basis element is required".into()));
        }
        for m in left.iter().chain(&right) {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(Error::InvalidAlgebra(format!("action matrices must be {dim}×{dim}")));
            }
        }
        let module = Bimodule { r, dim, left, right };
        module.check_axioms()?;
        Ok(module)
    }

    /// R as a bimodule over itself.
    pub fn regular(r: Arc<StructAlgebra>) -> Self {
        let d = r.dim();
        let left = (0..d).map(|i| r.left_matrix(&r.basis(i))).collect();
        let right = (0..d).map(|i| r.right_matrix(&r.basis(i))).collect();
        Bimodule { r, dim: d, left, right }
    }

    fn check_axioms(&self) -> Result<(), Error> {
        let f = self.r.field();
        let d = self.r.dim();
        let id = linalg::identity(&f, self.dim);
        if self.left_matrix(self.r.unit()) != id || self.right_matrix(self.r.unit()) != id {
            return Err(Error::InvalidAlgebra("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let bij = self.r.basis_product(i, j);
                if self.left_matrix(&bij) != linalg::mat_mul(&f, &self.left[i], &self.left[j]) {
                    return Err(Error::InvalidAlgebra(format!("left action is not multiplicative at ({i}, {j})")));
                }
                if self.right_matrix(&bij) != linalg::mat_mul(&f, &self.right[j], &self.right[i]) {
                    return Err(Error::InvalidAlgebra(format!("right action is not multiplicative at ({i}, {j})")));
                }
                if linalg::mat_mul(&f, &self.left[i], &self.right[j])
                    != linalg::mat_mul(&f, &self.right[j], &self.left[i])
                {
                    return Err(Error::InvalidAlgebra(format!("actions do not commute at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_matrix(&self, x: &AlgElement) -> Matrix<FieldElement> {
        combine(&self.r, x, &self.left, self.dim)
    }

    pub fn right_matrix(&self, x: &AlgElement) -> Matrix<FieldElement> {
        combine(&self.r, x, &self.right, self.dim)
    }

    /// x·v
    pub fn act_left(&self, x: &AlgElement, v: &[FieldElement]) -> Vec<FieldElement> {
        linalg::mat_vec(&self.r.field(), &self.left_matrix(x), v)
    }

    /// v·x
    pub fn act_right(&self, v: &[FieldElement], x: &AlgElement) -> Vec<FieldElement> {
        linalg::mat_vec(&self.r.field(), &self.right_matrix(x), v)
    }

    /// The algebra of matrices [x u; 0 x] with x ∈ R, u ∈ M. Basis: the
    /// basis of R followed by the basis of M.
    pub fn triangular_extension(&self) -> Result<StructAlgebra, Error> {
        let f = self.r.field();
        let (d, m) = (self.r.dim(), self.dim);
        let n = d + m;
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for i in 0..d {
            for j in 0..d {
                table[i][j][..d].clone_from_slice(&self.r.basis_product(i, j));
            }
            for j in 0..m {
                // b_i·v_j and v_j·b_i, columns of the action matrices
                for k in 0..m {
                    table[i][d + j][d + k] = self.left[i][k][j].clone();
                    table[d + j][i][d + k] = self.right[i][k][j].clone();
                }
            }
        }
        let mut unit = vec![f.zero(); n];
        unit[..d].clone_from_slice(self.r.unit());
        let labels = self.r.labels().iter().cloned().chain((1..=m).map(|k| format!("m{k}"))).collect();
        StructAlgebra::new(f, &table, unit, Some(labels))
    }
}

fn combine(r: &StructAlgebra, x: &AlgElement, mats: &[Matrix<FieldElement>], dim: usize) -> Matrix<FieldElement> {
    let f = r.field();
    let mut out = linalg::zeros(&f, dim, dim);
    for (c, m) in x.iter().zip(mats) {
        if f.is_zero(c) {
            continue;
        }
        for (orow, mrow) in out.iter_mut().zip(m) {
            for (o, v) in orow.iter_mut().zip(mrow) {
                *o = f.add(o, &f.mul(c, v));
            }
        }
    }
    out
}
