//! The base field F: the rationals or a prime field.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::traits::{Field, Ring};
use crate::error::Error;

/// Which ground field all algebras in a problem live over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    /// F_p for a prime p < 2^63.
    Prime(u64),
}

/// An element of a [`BaseField`].
///
/// Rationals are kept reduced with positive denominator (guaranteed by
/// `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u64),
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue(r) => write!(f, "{r}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(BaseField::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<u64> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(*p),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => FieldElement::Residue(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &self.from_i64(den)).ok_or(Error::DivisionByZero)
    }

    fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            BaseField::Prime(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                FieldElement::Residue(r.to_u64().expect("residue below modulus"))
            }
        }
    }

    /// Parses `"n"` or `"n/d"`. Over F_p the fraction is evaluated mod p.
    pub fn parse(&self, text: &str) -> Result<FieldElement, Error> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let parse_int =
            |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid field literal {text:?}")));
        let num = parse_int(num)?;
        let den = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_bigint(&num);
        let d = self.from_bigint(&den);
        self.div(&n, &d).ok_or(Error::DivisionByZero)
    }

    /// Canonical textual form, the inverse of [`BaseField::parse`].
    pub fn literal(&self, a: &FieldElement) -> String {
        a.to_string()
    }

    pub fn as_rational<'a>(&self, a: &'a FieldElement) -> Option<&'a BigRational> {
        match a {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue(_) => None,
        }
    }

    fn residue(&self, a: &FieldElement) -> u64 {
        match a {
            FieldElement::Residue(r) => *r,
            FieldElement::Rational(_) => panic!("rational element used in a prime field"),
        }
    }

    fn rational<'a>(&self, a: &'a FieldElement) -> &'a BigRational {
        match a {
            FieldElement::Rational(q) => q,
            FieldElement::Residue(_) => panic!("residue used in the rational field"),
        }
    }

    fn pow_mod(base: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u128;
        let mut b = base as u128 % p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        acc as u64
    }
}

impl Ring for BaseField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(self.rational(a) + self.rational(b)),
            BaseField::Prime(p) => {
                let s = self.residue(a) as u128 + self.residue(b) as u128;
                FieldElement::Residue((s % *p as u128) as u64)
            }
        }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(-self.rational(a)),
            BaseField::Prime(p) => {
                let r = self.residue(a);
                FieldElement::Residue(if r == 0 { 0 } else { p - r })
            }
        }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match self {
            BaseField::Rationals => FieldElement::Rational(self.rational(a) * self.rational(b)),
            BaseField::Prime(p) => {
                let m = self.residue(a) as u128 * self.residue(b) as u128;
                FieldElement::Residue((m % *p as u128) as u64)
            }
        }
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue(r) => *r == 0,
        }
    }

    fn inverse(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        Some(match self {
            BaseField::Rationals => FieldElement::Rational(self.rational(a).recip()),
            BaseField::Prime(p) => FieldElement::Residue(Self::pow_mod(self.residue(a), p - 2, *p)),
        })
    }
}

impl Field for BaseField {}
