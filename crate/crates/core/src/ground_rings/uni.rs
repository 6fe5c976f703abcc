//! Dense univariate polynomials over the base field.
//!
//! Used internally wherever a Euclidean domain is needed: the curve ring,
//! rational functions, Hermite reduction and square testing.

use super::field::{BaseField, FieldElement};
use super::traits::Ring;

/// Coefficients in ascending degree; empty for zero, last entry nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&FieldElement> {
        self.coeffs.get(i)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniPolyRing {
    pub field: BaseField,
}

impl UniPolyRing {
    pub fn new(field: BaseField) -> Self {
        UniPolyRing { field }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<FieldElement>) -> UniPoly {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> UniPoly {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn constant(&self, c: FieldElement) -> UniPoly {
        self.from_coeffs(vec![c])
    }

    /// c·x^k
    pub fn monomial(&self, c: FieldElement, k: usize) -> UniPoly {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn x(&self) -> UniPoly {
        self.monomial(self.field.one(), 1)
    }

    pub fn scale(&self, c: &FieldElement, p: &UniPoly) -> UniPoly {
        self.from_coeffs(p.coeffs.iter().map(|a| self.field.mul(c, a)).collect())
    }

    pub fn monic(&self, p: &UniPoly) -> UniPoly {
        match p.leading() {
            None => p.clone(),
            Some(lc) => {
                let inv = self.field.inverse(lc).expect("nonzero leading coefficient");
                self.scale(&inv, p)
            }
        }
    }

    pub fn eval(&self, p: &UniPoly, x: &FieldElement) -> FieldElement {
        p.coeffs.iter().rev().fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn derivative(&self, p: &UniPoly) -> UniPoly {
        self.from_coeffs(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
                .collect(),
        )
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, a: &UniPoly, b: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let db = b.degree()?;
        let lc_inv = self.field.inverse(b.leading()?)?;
        let mut rem = a.coeffs.clone();
        let Some(da) = a.degree() else {
            return Some((self.zero(), self.zero()));
        };
        if da < db {
            return Some((self.zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); da - db + 1];
        for i in (db..=da).rev() {
            let coef = self.field.mul(&rem[i], &lc_inv);
            if self.field.is_zero(&coef) {
                continue;
            }
            let shift = i - db;
            for (j, bj) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(&coef, bj);
                rem[shift + j] = self.field.sub(&rem[shift + j], &t);
            }
            quot[shift] = coef;
        }
        rem.truncate(db);
        Some((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
        self.div_rem(a, b).map(|(_, r)| r)
    }

    /// `Some(q)` with `b·q = a`, `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(a, b)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &UniPoly, a: &UniPoly) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.rem(a, b).is_some_and(|r| r.is_zero())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` and `g` monic.
    pub fn ext_gcd(&self, a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inverse(lc).expect("nonzero");
                (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &t0))
            }
        }
    }

    pub fn lcm(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.div_exact(a, &g).expect("gcd divides");
        self.monic(&self.mul(&q, b))
    }

    /// Composition p(q(x)).
    pub fn compose(&self, p: &UniPoly, q: &UniPoly) -> UniPoly {
        p.coeffs.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, q), &self.constant(c.clone())))
    }

    /// Monic square root by top-down coefficient matching: for monic `h` of
    /// even degree, the unique monic `s` with `s² = h`, if it exists.
    /// Requires characteristic ≠ 2.
    pub fn monic_sqrt(&self, h: &UniPoly) -> Option<UniPoly> {
        let f = self.field;
        let n = h.degree()?;
        if n % 2 == 1 || !f.is_one(h.leading()?) {
            return None;
        }
        let m = n / 2;
        let two_inv = f.inverse(&f.from_i64(2))?;
        // s = x^m + s_{m-1} x^{m-1} + ... + s_0
        let mut s = vec![f.zero(); m + 1];
        s[m] = f.one();
        for k in (0..m).rev() {
            // coefficient of x^{m+k} in s² equals h[m+k]
            let mut acc = f.zero();
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc = f.add(&acc, &f.mul(&s[i], &s[j]));
                }
            }
            let rest = f.sub(&h.coeffs[m + k], &acc);
            s[k] = f.mul(&rest, &two_inv);
        }
        let s = self.from_coeffs(s);
        (self.mul(&s, &s) == *h).then_some(s)
    }
}

impl Ring for UniPolyRing {
    type Elem = UniPoly;

    fn zero(&self) -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    fn one(&self) -> UniPoly {
        self.from_i64s(&[1])
    }

    fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        self.from_coeffs(
            (0..n)
                .map(|i| self.field.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    fn neg(&self, a: &UniPoly) -> UniPoly {
        UniPoly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    fn is_zero(&self, a: &UniPoly) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &UniPoly) -> Option<UniPoly> {
        if a.degree() == Some(0) {
            Some(self.constant(self.field.inverse(&a.coeffs[0])?))
        } else {
            None
        }
    }
}
