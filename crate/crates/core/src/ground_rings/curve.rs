//! The coordinate ring F[x, y]/(y² − g(x)), by default g = x³ + x.
//!
//! Every element has a unique representative a(x) + b(x)·y.

use super::field::{BaseField, FieldElement};
use super::traits::Ring;
use super::uni::{UniPoly, UniPolyRing};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveElement {
    pub a: UniPoly,
    pub b: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveRing {
    pub field: BaseField,
    g: UniPoly,
}

impl CurveRing {
    /// The elliptic curve ring with g = x³ + x.
    pub fn elliptic(field: BaseField) -> Result<Self, Error> {
        let g = UniPolyRing::new(field).from_i64s(&[0, 1, 0, 1]);
        Self::with_rhs(field, g)
    }

    /// y² = g(x). The refutation logic is only claimed for squarefree g of odd
    /// degree ≥ 3.
    pub fn with_rhs(field: BaseField, g: UniPoly) -> Result<Self, Error> {
        if field.characteristic() == 2 {
            return Err(Error::InvalidField("the curve ring requires characteristic different from 2".into()));
        }
        match g.degree() {
            Some(d) if d >= 3 && d % 2 == 1 => Ok(CurveRing { field, g }),
            _ => Err(Error::Unsupported("curve right-hand side must have odd degree at least 3".into())),
        }
    }

    pub fn rhs(&self) -> &UniPoly {
        &self.g
    }

    pub fn uni(&self) -> UniPolyRing {
        UniPolyRing::new(self.field)
    }

    pub fn element(&self, a: UniPoly, b: UniPoly) -> CurveElement {
        CurveElement { a, b }
    }

    /// The element x.
    pub fn x(&self) -> CurveElement {
        CurveElement { a: self.uni().x(), b: self.uni().zero() }
    }

    /// The element y.
    pub fn y(&self) -> CurveElement {
        CurveElement { a: self.uni().zero(), b: self.uni().one() }
    }

    pub fn from_uni(&self, a: UniPoly) -> CurveElement {
        CurveElement { a, b: self.uni().zero() }
    }

    pub fn scale(&self, c: &FieldElement, u: &CurveElement) -> CurveElement {
        let p = self.uni();
        CurveElement { a: p.scale(c, &u.a), b: p.scale(c, &u.b) }
    }

    /// Norm a² − b²·g, multiplicative from S to F[x].
    pub fn norm(&self, u: &CurveElement) -> UniPoly {
        let p = self.uni();
        p.sub(&p.mul(&u.a, &u.a), &p.mul(&p.mul(&u.b, &u.b), &self.g))
    }

    pub fn conjugate(&self, u: &CurveElement) -> CurveElement {
        CurveElement { a: u.a.clone(), b: self.uni().neg(&u.b) }
    }

    /// Units are exactly the nonzero constants; detected through the norm.
    pub fn is_unit(&self, u: &CurveElement) -> bool {
        let n = self.norm(u);
        n.degree() == Some(0)
    }

    /// Solves `den · q = num` in S. `Ok(None)` when no quotient exists in S.
    pub fn divide(&self, num: &CurveElement, den: &CurveElement) -> Result<Option<CurveElement>, Error> {
        if self.is_zero(den) {
            return Err(Error::DivisionByZero);
        }
        let p = self.uni();
        // [da  db·g] [qa]   [na]
        // [db  da  ] [qb] = [nb]
        let det = self.norm(den);
        let bg = p.mul(&den.b, &self.g);
        let qa_num = p.sub(&p.mul(&num.a, &den.a), &p.mul(&bg, &num.b));
        let qb_num = p.sub(&p.mul(&den.a, &num.b), &p.mul(&den.b, &num.a));
        match (p.div_exact(&qa_num, &det), p.div_exact(&qb_num, &det)) {
            (Some(a), Some(b)) => Ok(Some(CurveElement { a, b })),
            _ => Ok(None),
        }
    }
}

impl Ring for CurveRing {
    type Elem = CurveElement;

    fn zero(&self) -> CurveElement {
        CurveElement { a: self.uni().zero(), b: self.uni().zero() }
    }

    fn one(&self) -> CurveElement {
        CurveElement { a: self.uni().one(), b: self.uni().zero() }
    }

    fn add(&self, u: &CurveElement, v: &CurveElement) -> CurveElement {
        let p = self.uni();
        CurveElement { a: p.add(&u.a, &v.a), b: p.add(&u.b, &v.b) }
    }

    fn neg(&self, u: &CurveElement) -> CurveElement {
        let p = self.uni();
        CurveElement { a: p.neg(&u.a), b: p.neg(&u.b) }
    }

    fn mul(&self, u: &CurveElement, v: &CurveElement) -> CurveElement {
        let p = self.uni();
        let bb = p.mul(&p.mul(&u.b, &v.b), &self.g);
        CurveElement { a: p.add(&p.mul(&u.a, &v.a), &bb), b: p.add(&p.mul(&u.a, &v.b), &p.mul(&v.a, &u.b)) }
    }

    fn is_zero(&self, u: &CurveElement) -> bool {
        u.a.is_zero() && u.b.is_zero()
    }

    fn inverse(&self, u: &CurveElement) -> Option<CurveElement> {
        let n = self.norm(u);
        if n.degree() != Some(0) {
            return None;
        }
        let inv = self.field.inverse(&n.coeffs()[0])?;
        Some(self.scale(&inv, &self.conjugate(u)))
    }
}
