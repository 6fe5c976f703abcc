//! Sparse multivariate polynomials over the base field, graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::field::{BaseField, FieldElement};
use super::traits::Ring;
use super::uni::{UniPoly, UniPolyRing};
use crate::error::Error;

/// Largest variable count for which GCDs are computed.
pub const MAX_GCD_VARS: usize = 3;

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Poly {
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Degree in variable `v`.
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Option<&FieldElement> {
        self.terms.iter().next().filter(|(m, _)| m.degree() == 0).map(|(_, c)| c)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }
}

/// F[ξ_1, …, ξ_s].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: BaseField,
    pub nvars: usize,
}

impl PolyRing {
    pub fn new(field: BaseField, nvars: usize) -> Self {
        PolyRing { field, nvars }
    }

    pub fn from_terms<I>(&self, terms: I) -> Result<Poly, Error>
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let mut out = Poly::default();
        for (exps, c) in terms {
            if exps.len() != self.nvars {
                return Err(Error::Mismatch(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    exps.len(),
                    self.nvars
                )));
            }
            self.add_term(&mut out, Monomial(exps), c);
        }
        Ok(out)
    }

    fn add_term(&self, p: &mut Poly, m: Monomial, c: FieldElement) {
        if self.field.is_zero(&c) {
            return;
        }
        match p.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    p.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                p.terms.insert(m, c);
            }
        }
    }

    pub fn constant(&self, c: FieldElement) -> Poly {
        let mut p = Poly::default();
        self.add_term(&mut p, Monomial::one(self.nvars), c);
        p
    }

    pub fn from_i64(&self, c: i64) -> Poly {
        self.constant(self.field.from_i64(c))
    }

    /// The variable ξ_v.
    pub fn var(&self, v: usize) -> Poly {
        let mut e = vec![0; self.nvars];
        e[v] = 1;
        let mut p = Poly::default();
        p.terms.insert(Monomial(e), self.field.one());
        p
    }

    pub fn monomial(&self, exps: Vec<u32>, c: FieldElement) -> Poly {
        let mut p = Poly::default();
        self.add_term(&mut p, Monomial(exps), c);
        p
    }

    pub fn scale(&self, c: &FieldElement, p: &Poly) -> Poly {
        if self.field.is_zero(c) {
            return Poly::default();
        }
        Poly { terms: p.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(c, a))).collect() }
    }

    fn mul_term(&self, p: &Poly, m: &Monomial, c: &FieldElement) -> Poly {
        Poly { terms: p.terms.iter().map(|(pm, a)| (pm.mul(m), self.field.mul(a, c))).collect() }
    }

    /// Monic in the leading monomial; zero stays zero.
    pub fn normalize(&self, p: &Poly) -> Poly {
        match p.leading_term() {
            None => p.clone(),
            Some((_, lc)) => {
                let inv = self.field.inverse(lc).expect("nonzero coefficient");
                self.scale(&inv, p)
            }
        }
    }

    /// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let (lm, lc) = b.leading_term()?;
        let lc_inv = self.field.inverse(lc)?;
        let mut rem = a.clone();
        let mut quot = Poly::default();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(lm)?;
            let c = self.field.mul(rc, &lc_inv);
            let sub = self.mul_term(b, &m, &c);
            rem = self.sub(&rem, &sub);
            self.add_term(&mut quot, m, c);
        }
        Some(quot)
    }

    pub fn divides(&self, b: &Poly, a: &Poly) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.div_exact(a, b).is_some()
    }

    /// Evaluates ξ_v ↦ images[v] inside any ring `ring` that contains F via `embed`.
    pub fn eval_in<R: Ring>(
        &self,
        p: &Poly,
        ring: &R,
        embed: impl Fn(&FieldElement) -> R::Elem,
        images: &[R::Elem],
    ) -> R::Elem {
        let mut acc = ring.zero();
        for (m, c) in p.terms() {
            let mut t = embed(c);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(&images[v], e));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    pub fn to_uni(&self, p: &Poly, v: usize) -> UniPoly {
        let uni = UniPolyRing::new(self.field);
        let deg = p.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in p.terms() {
            debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0));
            coeffs[m.0[v] as usize] = c.clone();
        }
        uni.from_coeffs(coeffs)
    }

    pub fn from_uni(&self, u: &UniPoly, v: usize) -> Poly {
        let mut p = Poly::default();
        for (i, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; self.nvars];
            e[v] = i as u32;
            self.add_term(&mut p, Monomial(e), c.clone());
        }
        p
    }

    /// Coefficients of `p` as a polynomial in ξ_v (index = power of ξ_v).
    fn coefficients_in(&self, p: &Poly, v: usize) -> Vec<Poly> {
        let deg = p.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Poly::default(); deg + 1];
        for (m, c) in p.terms() {
            let mut e = m.clone();
            let k = e.0[v] as usize;
            e.0[v] = 0;
            self.add_term(&mut out[k], e, c.clone());
        }
        out
    }

    fn highest_var(&self, p: &Poly) -> Option<usize> {
        p.terms().flat_map(|(m, _)| m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)).max()
    }

    /// Normalized GCD. Univariate inputs use the Euclidean algorithm;
    /// multivariate inputs use primitive-part recursion on the highest variable.
    pub fn gcd(&self, p: &Poly, q: &Poly) -> Result<Poly, Error> {
        if self.nvars > MAX_GCD_VARS {
            return Err(Error::Unsupported(format!("polynomial gcd is limited to {MAX_GCD_VARS} variables")));
        }
        Ok(self.normalize(&self.gcd_rec(p, q)))
    }

    fn gcd_rec(&self, p: &Poly, q: &Poly) -> Poly {
        if p.is_zero() {
            return self.normalize(q);
        }
        if q.is_zero() {
            return self.normalize(p);
        }
        let v = match (self.highest_var(p), self.highest_var(q)) {
            (None, _) | (_, None) => return self.from_i64(1),
            (Some(a), Some(b)) => a.max(b),
        };
        if v == 0 {
            let uni = UniPolyRing::new(self.field);
            let g = uni.gcd(&self.to_uni(p, 0), &self.to_uni(q, 0));
            return self.from_uni(&g, 0);
        }
        let (cp, pp) = self.content_split(p, v);
        let (cq, qq) = self.content_split(q, v);
        let content = self.gcd_rec(&cp, &cq);
        let (mut a, mut b) = if pp.degree_in(v) >= qq.degree_in(v) { (pp, qq) } else { (qq, pp) };
        while b.degree_in(v).unwrap_or(0) > 0 {
            let r = self.pseudo_rem(&a, &b, v);
            if r.is_zero() {
                break;
            }
            a = b;
            b = self.content_split(&r, v).1;
        }
        if b.degree_in(v).unwrap_or(0) == 0 {
            // primitive of degree 0 in ξ_v: a unit up to content
            return self.normalize(&content);
        }
        self.normalize(&self.mul(&content, &b))
    }

    /// (content, primitive part) of `p` viewed in ξ_v over F[ξ_0..ξ_{v-1}].
    fn content_split(&self, p: &Poly, v: usize) -> (Poly, Poly) {
        let coeffs = self.coefficients_in(p, v);
        let content = coeffs.iter().fold(Poly::default(), |g, c| self.gcd_rec(&g, c));
        let content = self.normalize(&content);
        let prim = self.div_exact(p, &content).expect("content divides every coefficient");
        (content, prim)
    }

    fn pseudo_rem(&self, a: &Poly, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v).unwrap_or(0);
        let bcoef = self.coefficients_in(b, v);
        let lb = bcoef.last().cloned().unwrap_or_default();
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
            let dr = r.degree_in(v).unwrap_or(0);
            let lr = self.coefficients_in(&r, v).pop().unwrap_or_default();
            let mut shift = vec![0; self.nvars];
            shift[v] = dr - db;
            let t = self.mul(&self.mul(&lr, &self.monomial(shift, self.field.one())), b);
            r = self.sub(&self.mul(&lb, &r), &t);
        }
        r
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::default()
    }

    fn one(&self) -> Poly {
        self.from_i64(1)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (m, c) in b.terms() {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term(&mut out, ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &Poly) -> Option<Poly> {
        if a.len() == 1 && a.is_constant() {
            let c = a.constant_term()?;
            Some(self.constant(self.field.inverse(c)?))
        } else {
            None
        }
    }
}
