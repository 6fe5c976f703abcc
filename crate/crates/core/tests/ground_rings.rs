mod common;

use common::{element, families, poly, scalar, uni, Pool, Q};
use proptest::prelude::*;
use snforge_core::ground_rings::{
    BaseField, CurveElement, CurveRing, Field, FieldElement, Poly, PolyRing, Ring, RingDescriptor, RingElement,
    UniPoly, UniPolyRing,
};
use snforge_core::linalg;

fn pool() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..6, 0..40)
}

fn p(pr: &PolyRing, terms: &[(&[u32], i64)]) -> Poly {
    pr.from_terms(terms.iter().map(|(e, c)| (e.to_vec(), pr.field.from_i64(*c))).collect::<Vec<_>>()).unwrap()
}

fn upoly(c: &[i64]) -> UniPoly {
    UniPolyRing::new(Q).from_i64s(c)
}

/// Integer roots in [-10, 10] with multiplicities, by evaluation and
/// repeated synthetic division.
fn integer_roots(u: &UniPoly) -> Vec<(i64, usize)> {
    let r = UniPolyRing::new(Q);
    let mut out = Vec::new();
    for x in -10..=10 {
        let lin = r.from_i64s(&[-x, 1]);
        let mut q = u.clone();
        let mut mult = 0;
        while !q.is_zero() && Q.is_zero(&r.eval(&q, &Q.from_i64(x))) {
            q = r.div_exact(&q, &lin).unwrap();
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
    }
    out
}

#[test]
fn gcd_matches_root_oracle() {
    let r = UniPolyRing::new(Q);
    let (a, b) = (upoly(&[-1, 0, 1]), upoly(&[1, -2, 1]));
    let (ra, rb) = (integer_roots(&a), integer_roots(&b));
    let mut expected = r.one();
    for (x, ma) in &ra {
        if let Some((_, mb)) = rb.iter().find(|(y, _)| y == x) {
            for _ in 0..*ma.min(mb) {
                expected = r.mul(&expected, &r.from_i64s(&[-x, 1]));
            }
        }
    }
    assert_eq!(expected, upoly(&[-1, 1]));
    let pr = PolyRing::new(Q, 1);
    assert_eq!(pr.gcd(&pr.from_uni(&a, 0), &pr.from_uni(&b, 0)).unwrap(), pr.from_uni(&expected, 0));
}

#[test]
fn bivariate_gcd_divides_exactly() {
    let pr = PolyRing::new(Q, 2);
    // x·y + y and x² − 1
    let a = p(&pr, &[(&[1, 1], 1), (&[0, 1], 1)]);
    let b = p(&pr, &[(&[2, 0], 1), (&[0, 0], -1)]);
    let g = pr.gcd(&a, &b).unwrap();
    assert_eq!(g, p(&pr, &[(&[1, 0], 1), (&[0, 0], 1)]));
    assert!(pr.div_exact(&a, &g).is_some() && pr.div_exact(&b, &g).is_some());
}

#[test]
fn gcd_with_zero_is_normalized_input() {
    let pr = PolyRing::new(Q, 2);
    let a = p(&pr, &[(&[1, 1], 3), (&[0, 0], 6)]);
    assert_eq!(pr.gcd(&a, &pr.zero()).unwrap(), pr.normalize(&a));
    assert!(PolyRing::new(Q, 4).gcd(&a, &a).is_err() || a.terms().all(|(m, _)| m.0.len() == 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gcd_divides_and_scales(nvars in 1usize..3, a in pool(), b in pool(), c in pool()) {
        let pr = PolyRing::new(Q, nvars);
        let (x, y, r) = (poly(&pr, 2, &mut Pool::new(&a)), poly(&pr, 2, &mut Pool::new(&b)), poly(&pr, 1, &mut Pool::new(&c)));
        let g = pr.gcd(&x, &y).unwrap();
        if !g.is_zero() {
            prop_assert!(pr.div_exact(&x, &g).is_some());
            prop_assert!(pr.div_exact(&y, &g).is_some());
            prop_assert_eq!(&g, &pr.normalize(&g));
        }
        prop_assume!(!r.is_zero());
        let scaled = pr.gcd(&pr.mul(&x, &r), &pr.mul(&y, &r)).unwrap();
        prop_assert_eq!(scaled, pr.normalize(&pr.mul(&r, &g)));
    }

    #[test]
    fn common_divisors_divide_the_gcd(a in pool(), b in pool(), c in pool()) {
        let pr = PolyRing::new(Q, 2);
        let (x, y, d) = (poly(&pr, 2, &mut Pool::new(&a)), poly(&pr, 2, &mut Pool::new(&b)), poly(&pr, 2, &mut Pool::new(&c)));
        prop_assume!(!d.is_zero());
        let g = pr.gcd(&pr.mul(&x, &d), &pr.mul(&y, &d)).unwrap();
        prop_assert!(pr.div_exact(&g, &d).is_some());
    }

    #[test]
    fn univariate_gcd_is_bezout(a in pool(), b in pool()) {
        let r = UniPolyRing::new(Q);
        let (x, y) = (uni(Q, 4, &mut Pool::new(&a)), uni(Q, 4, &mut Pool::new(&b)));
        let (g, s, t) = r.ext_gcd(&x, &y);
        prop_assert_eq!(r.add(&r.mul(&s, &x), &r.mul(&t, &y)), g.clone());
        prop_assert_eq!(g, r.gcd(&x, &y));
    }
}

fn curve() -> CurveRing {
    CurveRing::elliptic(Q).unwrap()
}

/// Independent oracle: is there q = (qa, qb) with deg ≤ bound and den·q = num?
/// Solves the F-linear system on coefficients.
fn oracle_divisible(s: &CurveRing, num: &CurveElement, den: &CurveElement, bound: usize) -> bool {
    let unknowns = 2 * (bound + 1);
    let basis: Vec<CurveElement> = (0..=bound)
        .map(|i| s.element(UniPolyRing::new(Q).monomial(Q.one(), i), UniPolyRing::new(Q).zero()))
        .chain((0..=bound).map(|i| s.element(UniPolyRing::new(Q).zero(), UniPolyRing::new(Q).monomial(Q.one(), i))))
        .collect();
    let images: Vec<CurveElement> = basis.iter().map(|e| s.mul(den, e)).collect();
    let len = images
        .iter()
        .chain(std::iter::once(num))
        .map(|e| e.a.coeffs().len().max(e.b.coeffs().len()))
        .max()
        .unwrap_or(0);
    let flat = |e: &CurveElement| -> Vec<FieldElement> {
        (0..len)
            .map(|i| e.a.coeff(i).cloned().unwrap_or(Q.zero()))
            .chain((0..len).map(|i| e.b.coeff(i).cloned().unwrap_or(Q.zero())))
            .collect()
    };
    let cols: Vec<Vec<FieldElement>> = images.iter().map(flat).collect();
    assert_eq!(cols.len(), unknowns);
    if len == 0 {
        return true;
    }
    linalg::solve(&Q, &linalg::transpose(&cols), &flat(num)).is_some()
}

#[test]
fn curve_examples() {
    let s = curve();
    let r = UniPolyRing::new(Q);
    let (x, y) = (s.x(), s.y());
    assert_eq!(s.mul(&y, &y), s.element(r.from_i64s(&[0, 1, 0, 1]), r.zero()));
    assert_eq!(s.mul(&y, &x), s.element(r.zero(), r.from_i64s(&[0, 1])));
    assert!(s.is_unit(&s.one()));
    assert!(!s.is_unit(&x) && !s.is_unit(&y));
    assert_eq!(s.norm(&x), r.from_i64s(&[0, 0, 1]));
    assert_eq!(s.divide(&s.mul(&x, &y), &x).unwrap(), Some(y.clone()));
    assert_eq!(s.divide(&y, &x).unwrap(), None);
    assert!(!oracle_divisible(&s, &y, &x, 4));
    assert_eq!(s.divide(&s.element(r.from_i64s(&[0, 1, 0, 1]), r.zero()), &y).unwrap(), Some(y.clone()));
    assert!(s.divide(&y, &s.zero()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn curve_divide_is_exact(a in pool(), b in pool()) {
        let s = curve();
        let (num, den) = (element_of(&s, &a), element_of(&s, &b));
        prop_assume!(!s.is_zero(&den));
        match s.divide(&num, &den).unwrap() {
            Some(q) => prop_assert_eq!(s.mul(&den, &q), num),
            None => {
                let bound = s.mul(&s.conjugate(&den), &num).a.coeffs().len().max(s.mul(&s.conjugate(&den), &num).b.coeffs().len());
                prop_assert!(!oracle_divisible(&s, &num, &den, bound));
            }
        }
    }

    #[test]
    fn curve_divide_recovers_factors(a in pool(), b in pool()) {
        let s = curve();
        let (q, den) = (element_of(&s, &a), element_of(&s, &b));
        prop_assume!(!s.is_zero(&den));
        prop_assert_eq!(s.divide(&s.mul(&den, &q), &den).unwrap(), Some(q));
    }
}

fn element_of(s: &CurveRing, data: &[i64]) -> CurveElement {
    let mut pool = Pool::new(data);
    s.element(uni(Q, 3, &mut pool), uni(Q, 2, &mut pool))
}

#[test]
fn series_examples() {
    let s = RingDescriptor::series(RingDescriptor::Field(Q), 4).unwrap();
    let ser = |c: &[i64]| {
        RingElement::Series((0..4).map(|i| RingElement::Scalar(Q.from_i64(*c.get(i).unwrap_or(&0)))).collect())
    };
    assert_eq!(s.inverse(&ser(&[1, -1])).unwrap(), ser(&[1, 1, 1, 1]));
    assert_eq!(s.inverse(&ser(&[1])).unwrap(), ser(&[1]));
    assert!(s.inverse(&ser(&[0, 1])).is_none());
    let s2 = RingDescriptor::series(RingDescriptor::Field(Q), 2).unwrap();
    let two_xi = RingElement::Series(vec![RingElement::Scalar(Q.from_i64(2)), RingElement::Scalar(Q.one())]);
    let inv = s2.inverse(&two_xi).unwrap();
    assert_eq!(
        inv,
        RingElement::Series(vec![
            RingElement::Scalar(Q.from_ratio(1, 2).unwrap()),
            RingElement::Scalar(Q.from_ratio(-1, 4).unwrap())
        ])
    );
    assert_eq!(s2.mul(&two_xi, &inv), s2.one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn series_operations_commute_with_truncation(a in pool(), b in pool(), m in 1usize..7, base_dual in any::<bool>()) {
        let base = if base_dual {
            RingDescriptor::FinDim(std::sync::Arc::new(snforge_core::algebras::StructAlgebra::truncated_polynomial(Q, 2).unwrap()))
        } else {
            RingDescriptor::Field(Q)
        };
        let n = 6;
        let big = RingDescriptor::series(base.clone(), n).unwrap();
        let small = RingDescriptor::series(base.clone(), m).unwrap();
        let (f, g) = (element(&big, &mut Pool::new(&a)), element(&big, &mut Pool::new(&b)));
        let t = |e: &RingElement| big.truncate(e, m);
        prop_assert_eq!(t(&big.add(&f, &g)), small.add(&t(&f), &t(&g)));
        prop_assert_eq!(t(&big.mul(&f, &g)), small.mul(&t(&f), &t(&g)));
        match big.inverse(&f) {
            Some(inv) => prop_assert_eq!(Some(t(&inv)), small.inverse(&t(&f))),
            None => prop_assert!(small.inverse(&t(&f)).is_none()),
        }
    }

    #[test]
    fn unit_detection_is_sound(a in pool(), idx in 0usize..12) {
        let (name, s) = families().swap_remove(idx % families().len());
        let u = element(&s, &mut Pool::new(&a));
        if s.is_unit(&u) {
            let inv = s.inverse(&u).unwrap();
            prop_assert!(common::two_sided(&s, &u, &inv), "{}", name);
        }
    }

    #[test]
    fn constructed_units_are_detected(a in pool(), b in pool(), idx in 0usize..12) {
        // a product of units is a unit; build one from a nonzero scalar and a known unit
        let (name, s) = families().swap_remove(idx % families().len());
        let mut pool = Pool::new(&a);
        let c = scalar(s.field(), &mut pool);
        prop_assume!(!s.field().is_zero(&c));
        let v = element(&s, &mut Pool::new(&b));
        let u = s.scale(&c, &s.one());
        prop_assert!(s.is_unit(&u), "{}", name);
        if let Some(inv) = s.inverse(&v) {
            let w = s.mul(&u, &v);
            let w_inv = s.mul(&inv, &s.inverse(&u).unwrap());
            prop_assert!(common::two_sided(&s, &w, &w_inv), "{}", name);
            prop_assert!(s.is_unit(&w), "{}", name);
        }
    }
}

#[test]
fn unit_examples_by_family() {
    let q = RingDescriptor::Field(Q);
    assert!(q.is_unit(&RingElement::Scalar(Q.from_i64(5))));
    let pr = PolyRing::new(Q, 1);
    assert!(!RingDescriptor::Poly(pr.clone()).is_unit(&RingElement::Poly(pr.var(0))));
    let qq = RingDescriptor::product(q.clone(), q.clone()).unwrap();
    let e = RingElement::Pair(Box::new(RingElement::Scalar(Q.one())), Box::new(RingElement::Scalar(Q.zero())));
    assert!(!qq.is_unit(&e));
    // (1,0) is a zero divisor
    let f = RingElement::Pair(Box::new(RingElement::Scalar(Q.zero())), Box::new(RingElement::Scalar(Q.one())));
    assert!(qq.is_zero(&qq.mul(&e, &f)));
}

#[test]
fn field_literals_are_canonical() {
    assert_eq!(Q.parse("6/-4").unwrap(), Q.from_ratio(-3, 2).unwrap());
    assert_eq!(Q.literal(&Q.parse("6/-4").unwrap()), "-3/2");
    assert!(Q.parse("1/0").is_err());
    let f7 = BaseField::prime(7).unwrap();
    assert_eq!(f7.parse("-1").unwrap(), f7.from_i64(6));
    assert_eq!(f7.div(&f7.one(), &f7.from_i64(3)), Some(f7.from_i64(5)));
    assert!(BaseField::prime(9).is_err());
}
