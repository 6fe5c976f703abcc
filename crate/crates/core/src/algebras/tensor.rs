//! R⊗S as coordinate vectors over S indexed by a basis of R.

use std::sync::Arc;

use super::structure::{AlgElement, StructAlgebra};
use crate::error::Error;
use crate::ground_rings::{FieldElement, Ring, RingDescriptor, RingElement};
use crate::linalg::{self, Matrix};

/// Σ_l r_l ⊗ coords[l].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    pub coords: Vec<RingElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRing {
    r: Arc<StructAlgebra>,
    s: RingDescriptor,
    /// n when R is M_n(F) in the matrix-unit basis
    matrix_n: Option<usize>,
}

impl TensorRing {
    pub fn new(r: Arc<StructAlgebra>, s: RingDescriptor) -> Result<Self, Error> {
        if r.field() != s.field() {
            return Err(Error::Mismatch("R and S are defined over different fields".into()));
        }
        let matrix_n = matrix_size(&r);
        Ok(TensorRing { r, s, matrix_n })
    }

    pub fn r(&self) -> &StructAlgebra {
        &self.r
    }

    pub fn r_arc(&self) -> &Arc<StructAlgebra> {
        &self.r
    }

    pub fn s(&self) -> &RingDescriptor {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    /// Same R over another coefficient ring.
    pub fn with_coefficients(&self, s: RingDescriptor) -> TensorRing {
        TensorRing { r: self.r.clone(), s, matrix_n: self.matrix_n }
    }

    pub fn contains(&self, u: &TensorElement) -> bool {
        u.coords.len() == self.dim() && u.coords.iter().all(|c| self.s.contains(c))
    }

    /// x ⊗ s.
    pub fn pure(&self, x: &AlgElement, s: &RingElement) -> TensorElement {
        TensorElement { coords: x.iter().map(|c| self.s.scale(c, s)).collect() }
    }

    /// x ⊗ 1.
    pub fn embed_r(&self, x: &AlgElement) -> TensorElement {
        self.pure(x, &self.s.one())
    }

    /// 1 ⊗ s.
    pub fn embed_s(&self, s: &RingElement) -> TensorElement {
        self.pure(self.r.unit(), s)
    }

    pub fn basis(&self, l: usize) -> TensorElement {
        self.embed_r(&self.r.basis(l))
    }

    pub fn scale(&self, c: &FieldElement, u: &TensorElement) -> TensorElement {
        TensorElement { coords: u.coords.iter().map(|x| self.s.scale(c, x)).collect() }
    }

    /// (1⊗s)·u
    pub fn left_scalar(&self, s: &RingElement, u: &TensorElement) -> TensorElement {
        TensorElement { coords: u.coords.iter().map(|x| self.s.mul(s, x)).collect() }
    }

    /// u·(1⊗s)
    pub fn right_scalar(&self, u: &TensorElement, s: &RingElement) -> TensorElement {
        TensorElement { coords: u.coords.iter().map(|x| self.s.mul(x, s)).collect() }
    }

    /// If u = 1⊗s, returns s.
    pub fn unit_support(&self, u: &TensorElement) -> Option<RingElement> {
        let f = self.r.field();
        let unit = self.r.unit();
        let l = unit.iter().position(|c| !f.is_zero(c))?;
        let inv = f.inverse(&unit[l])?;
        let s = self.s.scale(&inv, &u.coords[l]);
        (self.embed_s(&s) == *u).then_some(s)
    }

    /// Matrix of left multiplication by u on the right S-module with basis
    /// r_1⊗1, …, r_d⊗1: entry (k, j) = Σ_i γ_ijk u_i.
    pub fn regular_representation(&self, u: &TensorElement) -> Matrix<RingElement> {
        let d = self.dim();
        let mut m = linalg::zeros(&self.s, d, d);
        for (i, ui) in u.coords.iter().enumerate() {
            if self.s.is_zero(ui) {
                continue;
            }
            for j in 0..d {
                for (k, g) in self.r.product_terms(i, j) {
                    m[*k][j] = self.s.add(&m[*k][j], &self.s.scale(g, ui));
                }
            }
        }
        m
    }

    /// Inverse with both u·u⁻¹ = 1 and u⁻¹·u = 1 verified.
    pub fn invert(&self, u: &TensorElement) -> Result<TensorElement, Error> {
        let inv = match &self.s {
            RingDescriptor::Product(a, b) => {
                let (ta, tb) = (self.with_coefficients((**a).clone()), self.with_coefficients((**b).clone()));
                let ia = ta.invert(&self.project(u, 0))?;
                let ib = tb.invert(&self.project(u, 1))?;
                self.pair(&ia, &ib)
            }
            RingDescriptor::Series { .. } => self.invert_series(u)?,
            s if s.flat_dim().is_some() => self.invert_flat(u)?,
            RingDescriptor::Matrix { .. } => self.invert_over_matrix_base(u)?,
            _ => self.invert_commutative(u)?,
        };
        let one = self.one();
        if self.mul(u, &inv) != one || self.mul(&inv, u) != one {
            return Err(Error::Inconsistent("computed inverse is not two-sided".into()));
        }
        Ok(inv)
    }

    fn invert_commutative(&self, u: &TensorElement) -> Result<TensorElement, Error> {
        if let Some(n) = self.matrix_n {
            // u is an n×n matrix over S; its determinant is the natural witness
            let m: Matrix<RingElement> = u.coords.chunks(n).map(|row| row.to_vec()).collect();
            let det = linalg::det(&self.s, &m);
            let dinv =
                self.s.inverse(&det).ok_or_else(|| Error::NotInvertible { witness: Some(self.s.render(&det)) })?;
            let adj = linalg::adjugate(&self.s, &m);
            return Ok(TensorElement { coords: adj.iter().flatten().map(|x| self.s.mul(&dinv, x)).collect() });
        }
        let m = self.regular_representation(u);
        let det = linalg::det(&self.s, &m);
        let dinv = self.s.inverse(&det).ok_or_else(|| Error::NotInvertible { witness: Some(self.s.render(&det)) })?;
        let adj = linalg::adjugate(&self.s, &m);
        let unit: Vec<RingElement> = self.r.unit().iter().map(|c| self.s.from_field(c)).collect();
        let t = linalg::mat_vec(&self.s, &adj, &unit);
        Ok(TensorElement { coords: t.iter().map(|x| self.s.mul(&dinv, x)).collect() })
    }

    fn invert_flat(&self, u: &TensorElement) -> Result<TensorElement, Error> {
        let f = self.r.field();
        let n = self.flat_len();
        let cols: Vec<Vec<FieldElement>> = (0..n)
            .map(|idx| {
                let mut e = vec![f.zero(); n];
                e[idx] = f.one();
                self.to_flat(&self.mul(u, &self.from_flat(&e)))
            })
            .collect();
        let m = linalg::transpose(&cols);
        let rhs = self.to_flat(&self.one());
        let t = linalg::solve(&f, &m, &rhs).ok_or(Error::NotInvertible { witness: None })?;
        Ok(self.from_flat(&t))
    }

    /// S = M_n(A) with A commutative: left multiplication is A-linear on
    /// A^{d·n²}, so det/adjugate over A decide invertibility.
    fn invert_over_matrix_base(&self, u: &TensorElement) -> Result<TensorElement, Error> {
        let RingDescriptor::Matrix { base, n } = &self.s else { unreachable!() };
        let (d, n) = (self.dim(), *n);
        let len = d * n * n;
        let to_vec = |t: &TensorElement| -> Vec<RingElement> {
            t.coords
                .iter()
                .flat_map(|c| match c {
                    RingElement::Matrix(m) => m.iter().flatten().cloned().collect::<Vec<_>>(),
                    _ => unreachable!(),
                })
                .collect()
        };
        let from_vec = |v: &[RingElement]| -> TensorElement {
            TensorElement {
                coords: (0..d)
                    .map(|l| {
                        RingElement::Matrix(
                            (0..n).map(|i| v[l * n * n + i * n..l * n * n + (i + 1) * n].to_vec()).collect(),
                        )
                    })
                    .collect(),
            }
        };
        let cols: Vec<Vec<RingElement>> = (0..len)
            .map(|idx| {
                let mut e = vec![base.zero(); len];
                e[idx] = base.one();
                to_vec(&self.mul(u, &from_vec(&e)))
            })
            .collect();
        let m = linalg::transpose(&cols);
        let det = linalg::det(base.as_ref(), &m);
        let dinv = base.inverse(&det).ok_or_else(|| Error::NotInvertible { witness: Some(base.render(&det)) })?;
        let adj = linalg::adjugate(base.as_ref(), &m);
        let t = linalg::mat_vec(base.as_ref(), &adj, &to_vec(&self.one()));
        Ok(from_vec(&t.iter().map(|x| base.mul(&dinv, x)).collect::<Vec<_>>()))
    }

    fn invert_series(&self, u: &TensorElement) -> Result<TensorElement, Error> {
        let RingDescriptor::Series { base, order } = &self.s else { unreachable!() };
        let t0 = self.with_coefficients((**base).clone());
        let parts = self.series_parts(u);
        let v0 = t0.invert(&parts[0])?;
        let mut v = vec![v0.clone()];
        for m in 1..*order {
            let mut acc = t0.zero();
            for i in 1..=m {
                if !t0.is_zero(&parts[i]) {
                    acc = t0.add(&acc, &t0.mul(&parts[i], &v[m - i]));
                }
            }
            v.push(t0.neg(&t0.mul(&v0, &acc)));
        }
        Ok(self.from_series_parts(&v))
    }

    // Coefficient-ring decompositions.

    /// u = Σ_i u_i ξ^i with u_i over the base ring.
    pub fn series_parts(&self, u: &TensorElement) -> Vec<TensorElement> {
        let RingDescriptor::Series { order, .. } = &self.s else { panic!("coefficient ring is not a series ring") };
        (0..*order)
            .map(|i| TensorElement { coords: u.coords.iter().map(|c| self.s.series_coeffs(c)[i].clone()).collect() })
            .collect()
    }

    pub fn from_series_parts(&self, parts: &[TensorElement]) -> TensorElement {
        let d = self.dim();
        TensorElement {
            coords: (0..d).map(|l| RingElement::Series(parts.iter().map(|p| p.coords[l].clone()).collect())).collect(),
        }
    }

    pub fn project(&self, u: &TensorElement, factor: usize) -> TensorElement {
        TensorElement { coords: u.coords.iter().map(|c| self.s.project(c, factor)).collect() }
    }

    pub fn pair(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        TensorElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| RingElement::Pair(Box::new(x.clone()), Box::new(y.clone())))
                .collect(),
        }
    }

    /// Length of the F-coordinate vector when S is finite-dimensional.
    pub fn flat_len(&self) -> usize {
        self.dim() * self.s.flat_dim().expect("finite-dimensional S")
    }

    /// F-coordinates, index l·dim(S) + m.
    pub fn to_flat(&self, u: &TensorElement) -> Vec<FieldElement> {
        u.coords.iter().flat_map(|c| self.s.to_flat(c)).collect()
    }

    pub fn from_flat(&self, v: &[FieldElement]) -> TensorElement {
        let ds = self.s.flat_dim().expect("finite-dimensional S");
        TensorElement { coords: v.chunks(ds).map(|c| self.s.from_flat(c)).collect() }
    }

    pub fn render(&self, u: &TensorElement) -> String {
        let parts: Vec<String> = u
            .coords
            .iter()
            .zip(self.r.labels())
            .filter(|(c, _)| !self.s.is_zero(c))
            .map(|(c, l)| format!("{l}⊗({})", self.s.render(c)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn matrix_size(r: &StructAlgebra) -> Option<usize> {
    let n = (1..=r.dim()).find(|n| n * n >= r.dim())?;
    if n * n != r.dim() {
        return None;
    }
    let m = StructAlgebra::matrix_algebra(r.field(), n).ok()?;
    (m.constants() == r.constants() && m.unit() == r.unit()).then_some(n)
}

impl Ring for TensorRing {
    type Elem = TensorElement;

    fn zero(&self) -> TensorElement {
        TensorElement { coords: vec![self.s.zero(); self.dim()] }
    }

    fn one(&self) -> TensorElement {
        self.embed_r(self.r.unit())
    }

    fn add(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        TensorElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| self.s.add(x, y)).collect() }
    }

    fn neg(&self, a: &TensorElement) -> TensorElement {
        TensorElement { coords: a.coords.iter().map(|x| self.s.neg(x)).collect() }
    }

    fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = self.zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if self.s.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                let terms = self.r.product_terms(i, j);
                if terms.is_empty() || self.s.is_zero(bj) {
                    continue;
                }
                let prod = self.s.mul(ai, bj);
                for (k, g) in terms {
                    out.coords[*k] = self.s.add(&out.coords[*k], &self.s.scale(g, &prod));
                }
            }
        }
        out
    }

    fn is_zero(&self, a: &TensorElement) -> bool {
        a.coords.iter().all(|c| self.s.is_zero(c))
    }

    fn inverse(&self, a: &TensorElement) -> Option<TensorElement> {
        self.invert(a).ok()
    }
}
