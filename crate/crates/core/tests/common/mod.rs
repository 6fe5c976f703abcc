#![allow(dead_code)]

use std::sync::Arc;

use snforge_core::algebras::{StructAlgebra, TensorElement, TensorRing};
use snforge_core::ground_rings::{
    BaseField, CurveRing, FieldElement, Poly, PolyRing, Ring, RingDescriptor, RingElement, UniPoly, UniPolyRing,
};
use snforge_core::sn_core::HomSpec;

pub const Q: BaseField = BaseField::Rationals;

pub fn fp() -> BaseField {
    BaseField::prime(10007).unwrap()
}

/// Small integers drawn in order; zeros once exhausted, so shrinking a pool
/// shrinks the elements built from it.
pub struct Pool<'a> {
    data: &'a [i64],
    at: usize,
}

impl<'a> Pool<'a> {
    pub fn new(data: &'a [i64]) -> Self {
        Pool { data, at: 0 }
    }

    pub fn next(&mut self) -> i64 {
        let v = self.data.get(self.at).copied().unwrap_or(0);
        self.at += 1;
        v
    }

    pub fn below(&mut self, n: i64) -> i64 {
        self.next().rem_euclid(n)
    }
}

pub fn scalar(f: BaseField, pool: &mut Pool) -> FieldElement {
    let n = pool.next();
    match f {
        BaseField::Rationals => f.from_ratio(n, 1 + pool.below(3)).unwrap(),
        _ => f.from_i64(n),
    }
}

pub fn uni(f: BaseField, max_deg: usize, pool: &mut Pool) -> UniPoly {
    let len = pool.below(max_deg as i64 + 2) as usize;
    UniPolyRing::new(f).from_coeffs((0..len).map(|_| scalar(f, pool)).collect())
}

pub fn poly(pr: &PolyRing, max_exp: i64, pool: &mut Pool) -> Poly {
    let n = pool.below(4) as usize;
    let terms: Vec<(Vec<u32>, FieldElement)> = (0..n)
        .map(|_| ((0..pr.nvars).map(|_| pool.below(max_exp + 1) as u32).collect(), scalar(pr.field, pool)))
        .collect();
    pr.from_terms(terms).unwrap()
}

pub fn element(s: &RingDescriptor, pool: &mut Pool) -> RingElement {
    match s {
        RingDescriptor::Field(f) => RingElement::Scalar(scalar(*f, pool)),
        RingDescriptor::Poly(pr) => RingElement::Poly(poly(pr, 2, pool)),
        RingDescriptor::Curve(c) => RingElement::Curve(c.element(uni(c.field, 2, pool), uni(c.field, 2, pool))),
        RingDescriptor::Series { base, order } => {
            RingElement::Series((0..*order).map(|_| element(base, pool)).collect())
        }
        RingDescriptor::Product(a, b) => RingElement::Pair(Box::new(element(a, pool)), Box::new(element(b, pool))),
        RingDescriptor::FinDim(a) => RingElement::Alg((0..a.dim()).map(|_| scalar(a.field(), pool)).collect()),
        RingDescriptor::Matrix { base, n } => {
            RingElement::Matrix((0..*n).map(|_| (0..*n).map(|_| element(base, pool)).collect()).collect())
        }
    }
}

pub fn tensor(t: &TensorRing, pool: &mut Pool) -> TensorElement {
    TensorElement { coords: (0..t.dim()).map(|_| element(t.s(), pool)).collect() }
}

/// Every supported family, with a short name.
pub fn families() -> Vec<(&'static str, RingDescriptor)> {
    let ut = Arc::new(StructAlgebra::upper_triangular(Q, 2).unwrap());
    let dual = Arc::new(StructAlgebra::truncated_polynomial(Q, 2).unwrap());
    let h = Arc::new(StructAlgebra::quaternion_algebra(Q, Q.from_i64(-1), Q.from_i64(-1)).unwrap());
    let q_xi = RingDescriptor::Poly(PolyRing::new(Q, 1));
    vec![
        ("rationals", RingDescriptor::Field(Q)),
        ("F_10007", RingDescriptor::Field(fp())),
        ("Q[ξ]", q_xi.clone()),
        ("Q[ξ,η]", RingDescriptor::Poly(PolyRing::new(Q, 2))),
        ("F_10007[ξ,η,ζ]", RingDescriptor::Poly(PolyRing::new(fp(), 3))),
        ("curve", RingDescriptor::Curve(CurveRing::elliptic(Q).unwrap())),
        ("Q[[ξ]]/ξ⁵", RingDescriptor::series(RingDescriptor::Field(Q), 5).unwrap()),
        ("(Q[t]/t²)[[ξ]]/ξ³", RingDescriptor::series(RingDescriptor::FinDim(dual.clone()), 3).unwrap()),
        ("Q × Q[ξ]", RingDescriptor::product(RingDescriptor::Field(Q), q_xi.clone()).unwrap()),
        ("upper-triangular", RingDescriptor::FinDim(ut)),
        ("quaternions", RingDescriptor::FinDim(h)),
        ("M₂(Q[ξ])", RingDescriptor::matrix(q_xi, 2).unwrap()),
    ]
}

pub fn m(n: usize) -> Arc<StructAlgebra> {
    m_over(Q, n)
}

pub fn m_over(f: BaseField, n: usize) -> Arc<StructAlgebra> {
    Arc::new(StructAlgebra::matrix_algebra(f, n).unwrap())
}

pub fn quaternions_over(f: BaseField) -> Arc<StructAlgebra> {
    Arc::new(StructAlgebra::quaternion_algebra(f, f.from_i64(-1), f.from_i64(-1)).unwrap())
}

/// The commutative families, usable as coefficient rings S.
pub fn commutative_families() -> Vec<(&'static str, RingDescriptor)> {
    families().into_iter().filter(|(n, _)| !["upper-triangular", "quaternions", "M₂(Q[ξ])"].contains(n)).collect()
}

pub fn quaternions() -> Arc<StructAlgebra> {
    Arc::new(StructAlgebra::quaternion_algebra(Q, Q.from_i64(-1), Q.from_i64(-1)).unwrap())
}

/// A random finite-dimensional algebra of dimension ≤ `max_dim`, built from
/// triangular, truncated, diagonal, product and tensor constructions.
pub fn random_findim(f: BaseField, max_dim: usize, pool: &mut Pool) -> StructAlgebra {
    let atom = |k: i64| match k {
        0 => StructAlgebra::diagonal_algebra(f, 1).unwrap(),
        1 => StructAlgebra::truncated_polynomial(f, 2).unwrap(),
        2 => StructAlgebra::upper_triangular(f, 2).unwrap(),
        3 => StructAlgebra::truncated_polynomial(f, 3).unwrap(),
        _ => StructAlgebra::diagonal_algebra(f, 2).unwrap(),
    };
    let mut a = atom(pool.below(5));
    while a.dim() > max_dim {
        a = atom(pool.below(3));
    }
    for _ in 0..3 {
        let b = atom(pool.below(5));
        let combined = if pool.below(2) == 0 {
            StructAlgebra::direct_product(&a, &b).unwrap()
        } else {
            StructAlgebra::tensor_product(&a, &b).unwrap()
        };
        if combined.dim() <= max_dim {
            a = combined;
        }
    }
    a
}

/// Σ_i e_ii ⊗ 1 + Σ_{i≠j} e_ij ⊗ p_ij built as a product of elementary
/// matrices, so it is invertible over any commutative S.
pub fn elementary_product(t: &TensorRing, n: usize, entries: &[RingElement]) -> TensorElement {
    let mut a = t.one();
    let mut it = entries.iter().cycle();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let e = t.pure(&t.r().basis(i * n + j), it.next().unwrap());
                a = t.mul(&a, &t.add(&t.one(), &e));
            }
        }
    }
    a
}

pub fn conjugation(t: &TensorRing, a: &TensorElement) -> HomSpec {
    let a_inv = t.invert(a).expect("invertible conjugator");
    HomSpec::conjugation(t.clone(), a, &a_inv).expect("valid conjugation")
}

/// c⁻¹·c′ when its R-coordinates are supported on the unit: the S-coefficient.
pub fn central_quotient(t: &TensorRing, c: &TensorElement, c2: &TensorElement) -> Option<RingElement> {
    let q = t.mul(&t.invert(c).ok()?, c2);
    t.unit_support(&q)
}

/// φ(r_k)·c = c·r_k for every basis element, checked from scratch.
pub fn intertwines(phi: &HomSpec, c: &TensorElement) -> bool {
    let t = phi.ring();
    (0..t.dim()).all(|k| t.mul(&phi.images()[k], c) == t.mul(c, &t.basis(k)))
}

/// Two-sided inverse, checked from scratch.
pub fn two_sided<R: Ring>(r: &R, u: &R::Elem, v: &R::Elem) -> bool {
    r.mul(u, v) == r.one() && r.mul(v, u) == r.one()
}

/// A random unit of R⊗S: q⊗1 for an invertible q ∈ R, times a product of
/// elementary matrices when R = M_n.
pub fn random_unit(t: &TensorRing, pool: &mut Pool) -> TensorElement {
    let r = t.r();
    let f = r.field();
    let q = loop {
        let x: Vec<FieldElement> = (0..r.dim()).map(|_| scalar(f, pool)).collect();
        let x = r.add(&x, r.unit());
        if r.invert(&x).is_some() {
            break x;
        }
    };
    let a = t.embed_r(&q);
    let n = (1..=4).find(|n| n * n == r.dim() && r.labels()[0] == "e11");
    match n {
        Some(n) if n > 1 => {
            let entries: Vec<RingElement> = (0..n * n).map(|_| element(t.s(), pool)).collect();
            t.mul(&a, &elementary_product(t, n, &entries))
        }
        _ => a,
    }
}
