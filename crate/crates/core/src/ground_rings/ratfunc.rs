//! The rational function field K = F(ξ), used to solve over the fraction
//! field of F[ξ] before clearing denominators.

use super::field::{BaseField, FieldElement};
use super::traits::{Field, Ring};
use super::uni::{UniPoly, UniPolyRing};

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: UniPoly,
    pub den: UniPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    pub field: BaseField,
}

impl RatFuncField {
    pub fn new(field: BaseField) -> Self {
        RatFuncField { field }
    }

    pub fn uni(&self) -> UniPolyRing {
        UniPolyRing::new(self.field)
    }

    /// Reduced fraction; `None` when den = 0.
    pub fn fraction(&self, num: &UniPoly, den: &UniPoly) -> Option<RatFunc> {
        let p = self.uni();
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = p.gcd(num, den);
        let mut n = p.div_exact(num, &g)?;
        let mut d = p.div_exact(den, &g)?;
        let lc = d.leading()?.clone();
        let inv = self.field.inverse(&lc)?;
        n = p.scale(&inv, &n);
        d = p.scale(&inv, &d);
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(&self, p: &UniPoly) -> RatFunc {
        RatFunc { num: p.clone(), den: self.uni().one() }
    }

    pub fn from_scalar(&self, c: &FieldElement) -> RatFunc {
        self.from_poly(&self.uni().constant(c.clone()))
    }

    /// The polynomial, when the denominator is 1.
    pub fn as_poly<'a>(&self, r: &'a RatFunc) -> Option<&'a UniPoly> {
        r.den.is_constant().then_some(&r.num)
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: self.uni().zero(), den: self.uni().one() }
    }

    fn one(&self) -> RatFunc {
        RatFunc { num: self.uni().one(), den: self.uni().one() }
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let p = self.uni();
        if a.den == b.den {
            return self.fraction(&p.add(&a.num, &b.num), &a.den).expect("nonzero");
        }
        let num = p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den));
        self.fraction(&num, &p.mul(&a.den, &b.den)).expect("nonzero")
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.uni().neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let p = self.uni();
        self.fraction(&p.mul(&a.num, &b.num), &p.mul(&a.den, &b.den)).expect("nonzero")
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn inverse(&self, a: &RatFunc) -> Option<RatFunc> {
        self.fraction(&a.den, &a.num)
    }
}

impl Field for RatFuncField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_arithmetic() {
        let k = RatFuncField::new(BaseField::Rationals);
        let p = k.uni();
        let x = p.x();
        let one_over_x = k.fraction(&p.one(), &x).unwrap();
        let sum = k.add(&one_over_x, &one_over_x);
        assert_eq!(sum, k.fraction(&p.from_i64s(&[2]), &x).unwrap());
        assert_eq!(k.mul(&one_over_x, &k.from_poly(&x)), k.one());
        let q = k.fraction(&p.from_i64s(&[-1, 0, 1]), &p.from_i64s(&[1, 1])).unwrap();
        assert_eq!(q, k.from_poly(&p.from_i64s(&[-1, 1])));
        assert!(k.inverse(&k.zero()).is_none());
    }
}
