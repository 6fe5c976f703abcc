//! Finite-dimensional associative unital algebras given by structure constants.

use crate::error::Error;
use crate::ground_rings::{BaseField, FieldElement, Ring};
use crate::linalg::{self, Matrix, Pivoting};

/// Coordinates of an element in the chosen basis.
pub type AlgElement = Vec<FieldElement>;

/// An F-algebra with basis b_1..b_d and b_i·b_j = Σ_k γ_ijk b_k.
///
/// Associativity and the unit laws are verified by every constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    field: BaseField,
    dim: usize,
    /// products[i*d + j] = nonzero (k, γ_ijk)
    products: Vec<Vec<(usize, FieldElement)>>,
    unit: AlgElement,
    labels: Vec<String>,
}

impl StructAlgebra {
    /// Builds an algebra from a dense table `constants[i][j][k] = γ_ijk`.
    pub fn new(
        field: BaseField,
        constants: &[Vec<Vec<FieldElement>>],
        unit: AlgElement,
        labels: Option<Vec<String>>,
    ) -> Result<Self, Error> {
        let dim = constants.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let mut products = Vec::with_capacity(dim * dim);
        for (i, row) in constants.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidAlgebra(format!("row {i} has {} entries", row.len())));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != dim {
                    return Err(Error::InvalidAlgebra(format!("entry ({i},{j}) has {} coordinates", entry.len())));
                }
                products.push(
                    entry.iter().enumerate().filter(|(_, c)| !field.is_zero(c)).map(|(k, c)| (k, c.clone())).collect(),
                );
            }
        }
        Self::from_sparse(field, dim, products, unit, labels)
    }

    fn from_sparse(
        field: BaseField,
        dim: usize,
        products: Vec<Vec<(usize, FieldElement)>>,
        unit: AlgElement,
        labels: Option<Vec<String>>,
    ) -> Result<Self, Error> {
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        let labels = labels.unwrap_or_else(|| (1..=dim).map(|i| format!("b{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let alg = StructAlgebra { field, dim, products, unit, labels };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<(), Error> {
        for i in 0..self.dim {
            let bi = self.basis(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::InvalidAlgebra(format!("unit law fails on {}", self.labels[i])));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let bij = self.basis_product(i, j);
                for l in 0..self.dim {
                    let left = self.mul(&bij, &self.basis(l));
                    let right = self.mul(&self.basis(i), &self.basis_product(j, l));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &AlgElement {
        &self.unit
    }

    /// Sparse γ_ij· list.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.products[i * self.dim + j]
    }

    /// Dense structure constants.
    pub fn constants(&self) -> Vec<Vec<Vec<FieldElement>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect()).collect()
    }

    pub fn basis(&self, i: usize) -> AlgElement {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> AlgElement {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, c) in self.product_terms(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &FieldElement, x: &AlgElement) -> AlgElement {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn from_field(&self, c: &FieldElement) -> AlgElement {
        self.scale(c, &self.unit)
    }

    pub fn linear_combination(&self, coeffs: &[FieldElement], elems: &[AlgElement]) -> AlgElement {
        let mut acc = self.zero();
        for (c, e) in coeffs.iter().zip(elems) {
            if !self.field.is_zero(c) {
                acc = self.add(&acc, &self.scale(c, e));
            }
        }
        acc
    }

    /// Matrix of y ↦ x·y (column j = coordinates of x·b_j).
    pub fn left_matrix(&self, x: &AlgElement) -> Matrix<FieldElement> {
        let cols: Vec<AlgElement> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        linalg::transpose(&cols)
    }

    /// Matrix of y ↦ y·x.
    pub fn right_matrix(&self, x: &AlgElement) -> Matrix<FieldElement> {
        let cols: Vec<AlgElement> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        linalg::transpose(&cols)
    }

    pub fn trace(&self, x: &AlgElement) -> FieldElement {
        let t = self.basis_traces();
        self.field.sum(x.iter().zip(&t).map(|(c, tk)| self.field.mul(c, tk)).collect::<Vec<_>>().iter())
    }

    /// tr(L_{b_k}) = Σ_m γ_kmm for every k.
    pub fn basis_traces(&self) -> Vec<FieldElement> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let diag = (0..d).flat_map(|m| self.product_terms(k, m).iter().filter(move |(i, _)| *i == m));
                self.field.sum(diag.map(|(_, c)| c).collect::<Vec<_>>().into_iter())
            })
            .collect()
    }

    pub fn commutator(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        self.sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<AlgElement> {
        // x central iff x·b_k − b_k·x = 0 for every k
        let d = self.dim;
        let mut rows: Matrix<FieldElement> = Vec::with_capacity(d * d);
        for k in 0..d {
            let bk = self.basis(k);
            let diff = linalg::transpose(&(0..d).map(|j| self.commutator(&self.basis(j), &bk)).collect::<Vec<_>>());
            rows.extend(diff);
        }
        linalg::kernel(&self.field, &rows, d)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Two-sided inverse via the left regular representation.
    pub fn invert(&self, x: &AlgElement) -> Option<AlgElement> {
        let inv = linalg::solve(&self.field, &self.left_matrix(x), &self.unit)?;
        let one = self.one();
        (self.mul(x, &inv) == one && self.mul(&inv, x) == one).then_some(inv)
    }

    /// Matrix whose column (p, q) is vec(x ↦ b_p x b_q); nonsingular iff the
    /// operators L_{b_p} R_{b_q} span End(A).
    pub fn spanning_matrix(&self) -> Matrix<FieldElement> {
        let d = self.dim;
        let mut cols = Vec::with_capacity(d * d);
        for p in 0..d {
            for q in 0..d {
                let mut col = Vec::with_capacity(d * d);
                for j in 0..d {
                    let v = self.mul(&self.basis_product(p, j), &self.basis(q));
                    col.extend(v);
                }
                cols.push(col);
            }
        }
        linalg::transpose(&cols)
    }

    /// True iff the L_w R_z span End(A), i.e. A is central simple.
    pub fn verify_central_simple(&self) -> bool {
        let d = self.dim;
        linalg::rank(&self.field, &self.spanning_matrix()) == d * d
    }

    /// Coordinates of the unit expressed as Σ λ_k b_k; the λ_k.
    pub fn unit_coordinates(&self) -> &AlgElement {
        &self.unit
    }

    /// Basis of the subspace spanned by `elems` (rows in echelon form).
    pub fn span(&self, elems: &[AlgElement]) -> Vec<AlgElement> {
        let mut m: Matrix<FieldElement> = elems.to_vec();
        if m.is_empty() {
            return Vec::new();
        }
        let pivots = linalg::rref(&self.field, &mut m, Pivoting::FirstNonzero);
        m.truncate(pivots.len());
        m
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self, Error> {
        if labels.len() != self.dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        self.labels = labels;
        Ok(self)
    }
}

impl Ring for StructAlgebra {
    type Elem = AlgElement;

    fn zero(&self) -> AlgElement {
        vec![self.field.zero(); self.dim]
    }

    fn one(&self) -> AlgElement {
        self.unit.clone()
    }

    fn add(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn neg(&self, a: &AlgElement) -> AlgElement {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.product_terms(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    fn is_zero(&self, a: &AlgElement) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    fn inverse(&self, a: &AlgElement) -> Option<AlgElement> {
        self.invert(a)
    }
}

/// Builders for the standard algebras.
impl StructAlgebra {
    /// M_n(F) with matrix units e_11, e_12, …, e_nn in row-major order.
    pub fn matrix_algebra(field: BaseField, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        let d = n * n;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // e_ij e_jl = e_il
                    products[(i * n + j) * d + (j * n + l)].push((i * n + l, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
        Self::from_sparse(field, d, products, unit, Some(labels))
    }

    /// (α, β)_F with basis 1, i, j, k.
    pub fn quaternion_algebra(field: BaseField, alpha: FieldElement, beta: FieldElement) -> Result<Self, Error> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidField("quaternion algebras need characteristic ≠ 2".into()));
        }
        if field.is_zero(&alpha) || field.is_zero(&beta) {
            return Err(Error::InvalidAlgebra("quaternion parameters must be nonzero".into()));
        }
        let f = &field;
        let one = f.one();
        let m1 = f.neg(&one);
        let ab = f.mul(&alpha, &beta);
        let neg = |x: &FieldElement| f.neg(x);
        // index: 0 = 1, 1 = i, 2 = j, 3 = k
        let table: [[(usize, FieldElement); 4]; 4] = [
            [(0, one.clone()), (1, one.clone()), (2, one.clone()), (3, one.clone())],
            [(1, one.clone()), (0, alpha.clone()), (3, one.clone()), (2, alpha.clone())],
            [(2, one.clone()), (3, m1.clone()), (0, beta.clone()), (1, neg(&beta))],
            [(3, one.clone()), (2, neg(&alpha)), (1, beta.clone()), (0, neg(&ab))],
        ];
        let products = table.iter().flat_map(|row| row.iter().map(|(k, c)| vec![(*k, c.clone())])).collect();
        let unit = vec![one, f.zero(), f.zero(), f.zero()];
        let labels = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
        Self::from_sparse(field, 4, products, unit, Some(labels))
    }

    /// F^k with componentwise product (idempotent basis).
    pub fn diagonal_algebra(field: BaseField, k: usize) -> Result<Self, Error> {
        let mut products = vec![Vec::new(); k * k];
        for i in 0..k {
            products[i * k + i].push((i, field.one()));
        }
        let unit = vec![field.one(); k];
        let labels = (1..=k).map(|i| format!("p{i}")).collect();
        Self::from_sparse(field, k, products, unit, Some(labels))
    }

    /// F[t]/(t^k) with basis 1, t, …, t^{k−1}.
    pub fn truncated_polynomial(field: BaseField, k: usize) -> Result<Self, Error> {
        let mut products = vec![Vec::new(); k * k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    products[i * k + j].push((i + j, field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); k];
        unit[0] = field.one();
        let labels = (0..k).map(|i| if i == 0 { "1".into() } else { format!("t{i}") }).collect();
        Self::from_sparse(field, k, products, unit, Some(labels))
    }

    /// Upper-triangular n×n matrices, basis e_ij (i ≤ j) in row-major order.
    pub fn upper_triangular(field: BaseField, n: usize) -> Result<Self, Error> {
        let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let d = idx.len();
        let pos = |i: usize, j: usize| idx.iter().position(|&p| p == (i, j));
        let mut products = vec![Vec::new(); d * d];
        for (a, &(i, j)) in idx.iter().enumerate() {
            for (b, &(k, l)) in idx.iter().enumerate() {
                if j == k {
                    products[a * d + b].push((pos(i, l).expect("upper"), field.one()));
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[pos(i, i).expect("diagonal")] = field.one();
        }
        let labels = idx.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)).collect();
        Self::from_sparse(field, d, products, unit, Some(labels))
    }

    /// A ⊗ B with basis a_i ⊗ b_s at index i·dim(B) + s.
    pub fn tensor_product(a: &StructAlgebra, b: &StructAlgebra) -> Result<Self, Error> {
        if a.field != b.field {
            return Err(Error::Mismatch("tensor factors over different fields".into()));
        }
        let f = a.field;
        let (da, db) = (a.dim, b.dim);
        let d = da * db;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..da {
            for s in 0..db {
                for j in 0..da {
                    for t in 0..db {
                        let entry = &mut products[(i * db + s) * d + (j * db + t)];
                        for (k, c) in a.product_terms(i, j) {
                            for (u, e) in b.product_terms(s, t) {
                                entry.push((k * db + u, f.mul(c, e)));
                            }
                        }
                        entry.sort_by_key(|(k, _)| *k);
                    }
                }
            }
        }
        let unit = a.unit.iter().flat_map(|x| b.unit.iter().map(move |y| f.mul(x, y))).collect();
        let labels = a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect();
        // the axioms of both factors imply those of the product
        Ok(StructAlgebra { field: f, dim: d, products, unit, labels })
    }

    /// A × B with A's basis first.
    pub fn direct_product(a: &StructAlgebra, b: &StructAlgebra) -> Result<Self, Error> {
        if a.field != b.field {
            return Err(Error::Mismatch("product factors over different fields".into()));
        }
        let (da, db) = (a.dim, b.dim);
        let d = da + db;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..da {
            for j in 0..da {
                products[i * d + j] = a.product_terms(i, j).to_vec();
            }
        }
        for i in 0..db {
            for j in 0..db {
                products[(da + i) * d + da + j] =
                    b.product_terms(i, j).iter().map(|(k, c)| (da + k, c.clone())).collect();
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        let labels =
            a.labels.iter().map(|l| format!("({l},0)")).chain(b.labels.iter().map(|l| format!("(0,{l})"))).collect();
        Ok(StructAlgebra { field: a.field, dim: d, products, unit, labels })
    }

    /// A/I for a two-sided ideal I given by spanning elements. Returns the
    /// quotient and the projection matrix (quotient coordinates of each b_i).
    pub fn quotient(&self, ideal: &[AlgElement]) -> Result<(StructAlgebra, Matrix<FieldElement>), Error> {
        let f = self.field;
        let d = self.dim;
        let ideal = self.span(ideal);
        for x in &ideal {
            for k in 0..d {
                let bk = self.basis(k);
                for y in [self.mul(x, &bk), self.mul(&bk, x)] {
                    let mut rows = ideal.clone();
                    rows.push(y);
                    if linalg::rank(&f, &rows) != ideal.len() {
                        return Err(Error::InvalidAlgebra("subspace is not a two-sided ideal".into()));
                    }
                }
            }
        }
        // complement: basis vectors not among the ideal's pivot columns
        let pivots: Vec<usize> =
            ideal.iter().map(|row| row.iter().position(|c| !f.is_zero(c)).expect("nonzero row")).collect();
        let keep: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let q = keep.len();
        if q == 0 {
            return Err(Error::InvalidAlgebra("quotient by the whole algebra".into()));
        }
        // reduce x modulo the ideal (rows are in RREF), then read kept coordinates
        let project = |x: &AlgElement| -> AlgElement {
            let mut v = x.clone();
            for (row, &p) in ideal.iter().zip(&pivots) {
                let c = v[p].clone();
                if !f.is_zero(&c) {
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi = f.sub(vi, &f.mul(&c, ri));
                    }
                }
            }
            keep.iter().map(|&i| v[i].clone()).collect()
        };
        let mut products = vec![Vec::new(); q * q];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                let p = project(&self.basis_product(i, j));
                products[a * q + b] = p.into_iter().enumerate().filter(|(_, c)| !f.is_zero(c)).collect();
            }
        }
        let unit = project(&self.unit);
        let labels = keep.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        let projection = (0..d).map(|i| project(&self.basis(i))).collect();
        Ok((Self::from_sparse(f, q, products, unit, Some(labels))?, projection))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn matrix_units_multiply() {
        let m2 = StructAlgebra::matrix_algebra(q(), 2).unwrap();
        assert_eq!(m2.dim(), 4);
        // e12 e21 = e11, e21 e12 = e22
        assert_eq!(m2.mul(&m2.basis(1), &m2.basis(2)), m2.basis(0));
        assert_eq!(m2.mul(&m2.basis(2), &m2.basis(1)), m2.basis(3));
        let m1 = StructAlgebra::matrix_algebra(q(), 1).unwrap();
        assert_eq!(m1.dim(), 1);
        assert!(StructAlgebra::matrix_algebra(q(), 3).is_ok());
    }

    #[test]
    fn quaternion_relations() {
        let h = StructAlgebra::quaternion_algebra(q(), q().from_i64(-1), q().from_i64(-1)).unwrap();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), h.neg(&k));
        assert_eq!(h.mul(&k, &k), h.from_field(&q().from_i64(-1)));
        assert!(StructAlgebra::quaternion_algebra(q(), q().zero(), q().one()).is_err());
    }

    #[test]
    fn central_simplicity() {
        for n in 1..=3 {
            assert!(StructAlgebra::matrix_algebra(q(), n).unwrap().verify_central_simple());
        }
        for (a, b) in [(-1, -1), (1, 1), (2, 3)] {
            let h = StructAlgebra::quaternion_algebra(q(), q().from_i64(a), q().from_i64(b)).unwrap();
            assert!(h.verify_central_simple());
        }
        assert!(!StructAlgebra::diagonal_algebra(q(), 2).unwrap().verify_central_simple());
        assert!(!StructAlgebra::truncated_polynomial(q(), 2).unwrap().verify_central_simple());
        assert!(!StructAlgebra::upper_triangular(q(), 2).unwrap().verify_central_simple());
    }

    #[test]
    fn mutated_tables_are_rejected() {
        let m2 = StructAlgebra::matrix_algebra(q(), 2).unwrap();
        let mut table = m2.constants();
        // e12·e21 := e22 breaks associativity
        table[1][2] = m2.basis(3);
        assert!(StructAlgebra::new(q(), &table, m2.unit().clone(), None).is_err());
        let mut bad_unit = m2.unit().clone();
        bad_unit[3] = q().zero();
        assert!(StructAlgebra::new(q(), &m2.constants(), bad_unit, None).is_err());
    }

    #[test]
    fn centers() {
        let m2 = StructAlgebra::matrix_algebra(q(), 2).unwrap();
        assert_eq!(m2.center().len(), 1);
        assert_eq!(StructAlgebra::diagonal_algebra(q(), 2).unwrap().center().len(), 2);
        assert_eq!(StructAlgebra::upper_triangular(q(), 2).unwrap().center().len(), 1);
    }

    #[test]
    fn tensor_of_matrix_algebras_is_central_simple() {
        let m2 = StructAlgebra::matrix_algebra(q(), 2).unwrap();
        let t = StructAlgebra::tensor_product(&m2, &m2).unwrap();
        assert_eq!(t.dim(), 16);
        t.check_axioms().unwrap();
        assert!(t.verify_central_simple());
        let p = StructAlgebra::direct_product(&m2, &StructAlgebra::truncated_polynomial(q(), 2).unwrap()).unwrap();
        p.check_axioms().unwrap();
    }

    #[test]
    fn inverses_are_two_sided() {
        let m2 = StructAlgebra::matrix_algebra(q(), 2).unwrap();
        let a = m2.add(&m2.one(), &m2.basis(1));
        let inv = m2.invert(&a).unwrap();
        assert_eq!(inv, m2.sub(&m2.one(), &m2.basis(1)));
        assert!(m2.invert(&m2.basis(0)).is_none());
    }
}
