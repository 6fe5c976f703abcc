//! Runtime-selected coefficient rings S and their elements.

use std::fmt::Write as _;
use std::sync::Arc;

use super::curve::{CurveElement, CurveRing};
use super::field::{BaseField, FieldElement};
use super::poly::{Poly, PolyRing};
use super::traits::Ring;
use crate::algebras::{AlgElement, StructAlgebra};
use crate::error::Error;
use crate::linalg;

/// Capability flags the backends dispatch on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Capabilities {
    pub is_field: bool,
    pub has_gcd: bool,
    pub is_pid: bool,
    pub is_findim: bool,
    pub is_series: bool,
    pub is_product: bool,
    pub is_matrix: bool,
    pub is_commutative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    /// S = F.
    Field(BaseField),
    Poly(PolyRing),
    Curve(CurveRing),
    /// S₀[[ξ]] truncated at ξ^order.
    Series {
        base: Box<RingDescriptor>,
        order: usize,
    },
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
    FinDim(Arc<StructAlgebra>),
    /// M_n(S₀).
    Matrix {
        base: Box<RingDescriptor>,
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    Scalar(FieldElement),
    Poly(Poly),
    Curve(CurveElement),
    /// Exactly `order` coefficients, index = power of ξ.
    Series(Vec<RingElement>),
    Pair(Box<RingElement>, Box<RingElement>),
    Alg(AlgElement),
    /// Row-major n×n.
    Matrix(Vec<Vec<RingElement>>),
}

macro_rules! expect_variant {
    ($e:expr, $variant:path) => {
        match $e {
            $variant(inner) => inner,
            other => panic!("element {:?} does not belong to this ring", other),
        }
    };
}

impl RingDescriptor {
    pub fn series(base: RingDescriptor, order: usize) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::InvalidAlgebra("truncation order must be at least 1".into()));
        }
        Ok(RingDescriptor::Series { base: Box::new(base), order })
    }

    pub fn product(a: RingDescriptor, b: RingDescriptor) -> Result<Self, Error> {
        if a.field() != b.field() {
            return Err(Error::Mismatch("product factors over different fields".into()));
        }
        Ok(RingDescriptor::Product(Box::new(a), Box::new(b)))
    }

    pub fn matrix(base: RingDescriptor, n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        if !base.capabilities().is_commutative {
            return Err(Error::Unsupported("matrix rings need a commutative base".into()));
        }
        Ok(RingDescriptor::Matrix { base: Box::new(base), n })
    }

    pub fn field(&self) -> BaseField {
        match self {
            RingDescriptor::Field(f) => *f,
            RingDescriptor::Poly(p) => p.field,
            RingDescriptor::Curve(c) => c.field,
            RingDescriptor::Series { base, .. } | RingDescriptor::Matrix { base, .. } => base.field(),
            RingDescriptor::Product(a, _) => a.field(),
            RingDescriptor::FinDim(a) => a.field(),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            RingDescriptor::Field(_) => "field",
            RingDescriptor::Poly(_) => "poly",
            RingDescriptor::Curve(_) => "curve",
            RingDescriptor::Series { .. } => "series",
            RingDescriptor::Product(..) => "product",
            RingDescriptor::FinDim(_) => "findim",
            RingDescriptor::Matrix { .. } => "matrix",
        }
    }

    pub fn capabilities(&self) -> Capabilities {
        match self {
            RingDescriptor::Field(_) => {
                Capabilities { is_field: true, is_findim: true, is_commutative: true, ..Default::default() }
            }
            RingDescriptor::Poly(p) => {
                Capabilities { has_gcd: true, is_pid: p.nvars == 1, is_commutative: true, ..Default::default() }
            }
            RingDescriptor::Curve(_) => Capabilities { is_commutative: true, ..Default::default() },
            RingDescriptor::Series { base, .. } => Capabilities {
                is_series: true,
                is_commutative: base.capabilities().is_commutative,
                ..Default::default()
            },
            RingDescriptor::Product(a, b) => Capabilities {
                is_product: true,
                is_commutative: a.capabilities().is_commutative && b.capabilities().is_commutative,
                ..Default::default()
            },
            RingDescriptor::FinDim(a) => {
                Capabilities { is_findim: true, is_commutative: a.is_commutative(), ..Default::default() }
            }
            RingDescriptor::Matrix { base, n } => Capabilities {
                is_matrix: true,
                is_findim: base.flat_dim().is_some(),
                is_commutative: *n == 1,
                ..Default::default()
            },
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    /// λ·1
    pub fn from_field(&self, c: &FieldElement) -> RingElement {
        self.scale(c, &self.one())
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        self.from_field(&self.field().from_i64(n))
    }

    /// F-scalar multiple.
    pub fn scale(&self, c: &FieldElement, e: &RingElement) -> RingElement {
        match (self, e) {
            (RingDescriptor::Field(f), RingElement::Scalar(a)) => RingElement::Scalar(f.mul(c, a)),
            (RingDescriptor::Poly(p), RingElement::Poly(a)) => RingElement::Poly(p.scale(c, a)),
            (RingDescriptor::Curve(s), RingElement::Curve(a)) => RingElement::Curve(s.scale(c, a)),
            (RingDescriptor::Series { base, .. }, RingElement::Series(v)) => {
                RingElement::Series(v.iter().map(|x| base.scale(c, x)).collect())
            }
            (RingDescriptor::Product(a, b), RingElement::Pair(x, y)) => {
                RingElement::Pair(Box::new(a.scale(c, x)), Box::new(b.scale(c, y)))
            }
            (RingDescriptor::FinDim(a), RingElement::Alg(x)) => RingElement::Alg(a.scale(c, x)),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => {
                RingElement::Matrix(m.iter().map(|row| row.iter().map(|x| base.scale(c, x)).collect()).collect())
            }
            (_, e) => panic!("element {e:?} does not belong to {}", self.family()),
        }
    }

    /// Whether `e` is a well-formed element of this ring.
    pub fn contains(&self, e: &RingElement) -> bool {
        match (self, e) {
            (RingDescriptor::Field(_), RingElement::Scalar(_)) => true,
            (RingDescriptor::Poly(p), RingElement::Poly(a)) => a.terms().all(|(m, _)| m.0.len() == p.nvars),
            (RingDescriptor::Curve(_), RingElement::Curve(_)) => true,
            (RingDescriptor::Series { base, order }, RingElement::Series(v)) => {
                v.len() == *order && v.iter().all(|x| base.contains(x))
            }
            (RingDescriptor::Product(a, b), RingElement::Pair(x, y)) => a.contains(x) && b.contains(y),
            (RingDescriptor::FinDim(a), RingElement::Alg(x)) => x.len() == a.dim(),
            (RingDescriptor::Matrix { base, n }, RingElement::Matrix(m)) => {
                m.len() == *n && m.iter().all(|row| row.len() == *n && row.iter().all(|x| base.contains(x)))
            }
            _ => false,
        }
    }

    /// Dimension over F when S is finite-dimensional with a fixed basis.
    pub fn flat_dim(&self) -> Option<usize> {
        match self {
            RingDescriptor::Field(_) => Some(1),
            RingDescriptor::FinDim(a) => Some(a.dim()),
            RingDescriptor::Matrix { base, n } => base.flat_dim().map(|d| d * n * n),
            _ => None,
        }
    }

    /// Coordinates over F in the fixed basis (see [`Self::flat_dim`]).
    pub fn to_flat(&self, e: &RingElement) -> Vec<FieldElement> {
        match (self, e) {
            (RingDescriptor::Field(_), RingElement::Scalar(a)) => vec![a.clone()],
            (RingDescriptor::FinDim(_), RingElement::Alg(x)) => x.clone(),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => {
                m.iter().flatten().flat_map(|x| base.to_flat(x)).collect()
            }
            _ => panic!("{} is not finite-dimensional", self.family()),
        }
    }

    pub fn from_flat(&self, coords: &[FieldElement]) -> RingElement {
        match self {
            RingDescriptor::Field(_) => RingElement::Scalar(coords[0].clone()),
            RingDescriptor::FinDim(_) => RingElement::Alg(coords.to_vec()),
            RingDescriptor::Matrix { base, n } => {
                let bd = base.flat_dim().expect("finite-dimensional base");
                RingElement::Matrix(
                    (0..*n)
                        .map(|i| {
                            (0..*n)
                                .map(|j| {
                                    let at = (i * n + j) * bd;
                                    base.from_flat(&coords[at..at + bd])
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            _ => panic!("{} is not finite-dimensional", self.family()),
        }
    }

    /// The structure-constant algebra of a finite-dimensional S.
    pub fn as_struct_algebra(&self) -> Result<StructAlgebra, Error> {
        match self {
            RingDescriptor::Field(f) => StructAlgebra::matrix_algebra(*f, 1),
            RingDescriptor::FinDim(a) => Ok((**a).clone()),
            RingDescriptor::Matrix { base, n } => {
                let m = StructAlgebra::matrix_algebra(self.field(), *n)?;
                StructAlgebra::tensor_product(&m, &base.as_struct_algebra()?)
            }
            _ => Err(Error::Unsupported(format!("{} is not finite-dimensional", self.family()))),
        }
    }

    // Series helpers.

    pub fn series_coeffs<'a>(&self, e: &'a RingElement) -> &'a [RingElement] {
        expect_variant!(e, RingElement::Series)
    }

    /// Truncate a series of this ring to `order` terms.
    pub fn truncate(&self, e: &RingElement, order: usize) -> RingElement {
        let v = self.series_coeffs(e);
        RingElement::Series(v[..order.min(v.len())].to_vec())
    }

    /// Embed a base element as a constant series.
    pub fn series_constant(&self, c: &RingElement) -> RingElement {
        match self {
            RingDescriptor::Series { base, order } => {
                let mut v = vec![base.zero(); *order];
                v[0] = c.clone();
                RingElement::Series(v)
            }
            _ => panic!("not a series ring"),
        }
    }

    // Product helpers.

    pub fn project(&self, e: &RingElement, factor: usize) -> RingElement {
        let RingElement::Pair(a, b) = e else { panic!("not a product element") };
        if factor == 0 {
            (**a).clone()
        } else {
            (**b).clone()
        }
    }

    /// Human-readable rendering.
    pub fn render(&self, e: &RingElement) -> String {
        match (self, e) {
            (RingDescriptor::Field(_), RingElement::Scalar(a)) => a.to_string(),
            (RingDescriptor::Poly(p), RingElement::Poly(a)) => render_poly(a, &poly_var_names(p.nvars)),
            (RingDescriptor::Curve(_), RingElement::Curve(c)) => {
                let r = PolyRing::new(self.field(), 2);
                let terms: Vec<_> = [(&c.a, 0), (&c.b, 1)]
                    .into_iter()
                    .flat_map(|(u, e)| u.coeffs().iter().enumerate().map(move |(i, k)| (vec![i as u32, e], k.clone())))
                    .collect();
                render_poly(&r.from_terms(terms).expect("two variables"), &["x".into(), "y".into()])
            }
            (RingDescriptor::Series { base, .. }, RingElement::Series(v)) => {
                let n = v.len();
                if let RingDescriptor::Field(f) = &**base {
                    let r = PolyRing::new(*f, 1);
                    let terms: Vec<_> = v
                        .iter()
                        .enumerate()
                        .filter_map(|(i, c)| match c {
                            RingElement::Scalar(a) => Some((vec![i as u32], a.clone())),
                            _ => None,
                        })
                        .collect();
                    let p = r.from_terms(terms).expect("one variable");
                    return if p.is_zero() {
                        "0".into()
                    } else {
                        format!("{} + O(ξ^{n})", render_poly(&p, &["ξ".into()]))
                    };
                }
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !base.is_zero(c))
                    .map(|(i, c)| match i {
                        0 => format!("({})", base.render(c)),
                        1 => format!("({})*ξ", base.render(c)),
                        _ => format!("({})*ξ^{i}", base.render(c)),
                    })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    format!("{} + O(ξ^{n})", parts.join(" + "))
                }
            }
            (RingDescriptor::Product(a, b), RingElement::Pair(x, y)) => {
                format!("({}, {})", a.render(x), b.render(y))
            }
            (RingDescriptor::FinDim(a), RingElement::Alg(x)) => render_alg(a, x),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|row| format!("[{}]", row.iter().map(|x| base.render(x)).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("[{}]", rows.join(", "))
            }
            _ => format!("{e:?}"),
        }
    }
}

pub fn poly_var_names(nvars: usize) -> Vec<String> {
    const NAMES: [&str; 3] = ["ξ", "η", "ζ"];
    if nvars <= 3 {
        NAMES[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("ξ{i}")).collect()
    }
}

pub fn render_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let mono: Vec<String> =
            m.0.iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
        let coef = c.to_string();
        let (neg, mag) = match coef.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coef),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                let _ = write!(out, "{mag}*");
            }
            out.push_str(&mono.join("*"));
        }
    }
    out
}

pub fn render_alg(a: &StructAlgebra, x: &AlgElement) -> String {
    let f = a.field();
    let mut out = String::new();
    for (c, l) in x.iter().zip(a.labels()).filter(|(c, _)| !f.is_zero(c)) {
        let coef = c.to_string();
        let (neg, mag) = match coef.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coef),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mag != "1" {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(l);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl Ring for RingDescriptor {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        match self {
            RingDescriptor::Field(f) => RingElement::Scalar(f.zero()),
            RingDescriptor::Poly(p) => RingElement::Poly(p.zero()),
            RingDescriptor::Curve(c) => RingElement::Curve(c.zero()),
            RingDescriptor::Series { base, order } => RingElement::Series(vec![base.zero(); *order]),
            RingDescriptor::Product(a, b) => RingElement::Pair(Box::new(a.zero()), Box::new(b.zero())),
            RingDescriptor::FinDim(a) => RingElement::Alg(a.zero()),
            RingDescriptor::Matrix { base, n } => RingElement::Matrix(vec![vec![base.zero(); *n]; *n]),
        }
    }

    fn one(&self) -> RingElement {
        match self {
            RingDescriptor::Field(f) => RingElement::Scalar(f.one()),
            RingDescriptor::Poly(p) => RingElement::Poly(p.one()),
            RingDescriptor::Curve(c) => RingElement::Curve(c.one()),
            RingDescriptor::Series { base, .. } => self.series_constant(&base.one()),
            RingDescriptor::Product(a, b) => RingElement::Pair(Box::new(a.one()), Box::new(b.one())),
            RingDescriptor::FinDim(a) => RingElement::Alg(a.one()),
            RingDescriptor::Matrix { base, n } => RingElement::Matrix(
                (0..*n).map(|i| (0..*n).map(|j| if i == j { base.one() } else { base.zero() }).collect()).collect(),
            ),
        }
    }

    fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        match (self, x, y) {
            (RingDescriptor::Field(f), RingElement::Scalar(a), RingElement::Scalar(b)) => {
                RingElement::Scalar(f.add(a, b))
            }
            (RingDescriptor::Poly(p), RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(p.add(a, b)),
            (RingDescriptor::Curve(c), RingElement::Curve(a), RingElement::Curve(b)) => RingElement::Curve(c.add(a, b)),
            (RingDescriptor::Series { base, .. }, RingElement::Series(a), RingElement::Series(b)) => {
                RingElement::Series(a.iter().zip(b).map(|(u, v)| base.add(u, v)).collect())
            }
            (RingDescriptor::Product(r1, r2), RingElement::Pair(a1, a2), RingElement::Pair(b1, b2)) => {
                RingElement::Pair(Box::new(r1.add(a1, b1)), Box::new(r2.add(a2, b2)))
            }
            (RingDescriptor::FinDim(a), RingElement::Alg(u), RingElement::Alg(v)) => RingElement::Alg(a.add(u, v)),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(a), RingElement::Matrix(b)) => {
                RingElement::Matrix(
                    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| base.add(u, v)).collect()).collect(),
                )
            }
            _ => panic!("operands {x:?}, {y:?} do not belong to {}", self.family()),
        }
    }

    fn neg(&self, x: &RingElement) -> RingElement {
        self.scale(&self.field().from_i64(-1), x)
    }

    fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        match (self, x, y) {
            (RingDescriptor::Field(f), RingElement::Scalar(a), RingElement::Scalar(b)) => {
                RingElement::Scalar(f.mul(a, b))
            }
            (RingDescriptor::Poly(p), RingElement::Poly(a), RingElement::Poly(b)) => RingElement::Poly(p.mul(a, b)),
            (RingDescriptor::Curve(c), RingElement::Curve(a), RingElement::Curve(b)) => RingElement::Curve(c.mul(a, b)),
            (RingDescriptor::Series { base, order }, RingElement::Series(a), RingElement::Series(b)) => {
                let mut out = vec![base.zero(); *order];
                for (i, u) in a.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in b.iter().enumerate().take(order - i) {
                        if !base.is_zero(v) {
                            out[i + j] = base.add(&out[i + j], &base.mul(u, v));
                        }
                    }
                }
                RingElement::Series(out)
            }
            (RingDescriptor::Product(r1, r2), RingElement::Pair(a1, a2), RingElement::Pair(b1, b2)) => {
                RingElement::Pair(Box::new(r1.mul(a1, b1)), Box::new(r2.mul(a2, b2)))
            }
            (RingDescriptor::FinDim(a), RingElement::Alg(u), RingElement::Alg(v)) => RingElement::Alg(a.mul(u, v)),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(a), RingElement::Matrix(b)) => {
                RingElement::Matrix(linalg::mat_mul(base.as_ref(), a, b))
            }
            _ => panic!("operands {x:?}, {y:?} do not belong to {}", self.family()),
        }
    }

    fn is_zero(&self, x: &RingElement) -> bool {
        match (self, x) {
            (RingDescriptor::Field(f), RingElement::Scalar(a)) => f.is_zero(a),
            (RingDescriptor::Poly(_), RingElement::Poly(a)) => a.is_zero(),
            (RingDescriptor::Curve(c), RingElement::Curve(a)) => c.is_zero(a),
            (RingDescriptor::Series { base, .. }, RingElement::Series(v)) => v.iter().all(|c| base.is_zero(c)),
            (RingDescriptor::Product(r1, r2), RingElement::Pair(a, b)) => r1.is_zero(a) && r2.is_zero(b),
            (RingDescriptor::FinDim(a), RingElement::Alg(u)) => a.is_zero(u),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => {
                m.iter().flatten().all(|c| base.is_zero(c))
            }
            _ => panic!("element {x:?} does not belong to {}", self.family()),
        }
    }

    fn inverse(&self, x: &RingElement) -> Option<RingElement> {
        let inv = match (self, x) {
            (RingDescriptor::Field(f), RingElement::Scalar(a)) => RingElement::Scalar(f.inverse(a)?),
            (RingDescriptor::Poly(p), RingElement::Poly(a)) => RingElement::Poly(p.inverse(a)?),
            (RingDescriptor::Curve(c), RingElement::Curve(a)) => RingElement::Curve(c.inverse(a)?),
            (RingDescriptor::Series { .. }, RingElement::Series(_)) => self.series_inverse(x).ok()?,
            (RingDescriptor::Product(r1, r2), RingElement::Pair(a, b)) => {
                RingElement::Pair(Box::new(r1.inverse(a)?), Box::new(r2.inverse(b)?))
            }
            (RingDescriptor::FinDim(a), RingElement::Alg(u)) => RingElement::Alg(a.invert(u)?),
            (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => {
                let d = linalg::det(base.as_ref(), m);
                let dinv = base.inverse(&d)?;
                let adj = linalg::adjugate(base.as_ref(), m);
                RingElement::Matrix(adj.iter().map(|row| row.iter().map(|c| base.mul(&dinv, c)).collect()).collect())
            }
            _ => panic!("element {x:?} does not belong to {}", self.family()),
        };
        // sound unit detection: only hand back verified two-sided inverses
        let one = self.one();
        (self.mul(x, &inv) == one && self.mul(&inv, x) == one).then_some(inv)
    }
}

impl RingDescriptor {
    /// Inverse of a truncated series by order-by-order recursion.
    pub fn series_inverse(&self, u: &RingElement) -> Result<RingElement, Error> {
        let RingDescriptor::Series { base, order } = self else {
            return Err(Error::Mismatch("not a series ring".into()));
        };
        let coeffs = self.series_coeffs(u);
        let v0 =
            base.inverse(&coeffs[0]).ok_or_else(|| Error::NotInvertible { witness: Some(base.render(&coeffs[0])) })?;
        let mut v = vec![v0.clone()];
        for m in 1..*order {
            let mut acc = base.zero();
            for i in 1..=m {
                if !base.is_zero(&coeffs[i]) {
                    acc = base.add(&acc, &base.mul(&coeffs[i], &v[m - i]));
                }
            }
            v.push(base.neg(&base.mul(&v0, &acc)));
        }
        Ok(RingElement::Series(v))
    }
}
