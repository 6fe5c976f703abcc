use std::sync::Arc;

use super::*;
use crate::algebras::{StructAlgebra, TensorRing};
use crate::backends::DEFAULT_TRIALS;
use crate::ground_rings::{BaseField, PolyRing, Ring, RingDescriptor, RingElement};

const Q: BaseField = BaseField::Rationals;

fn m2() -> Arc<StructAlgebra> {
    Arc::new(StructAlgebra::matrix_algebra(Q, 2).unwrap())
}

#[test]
fn inner_automorphism_has_trivial_sigma() {
    let pr = PolyRing::new(Q, 1);
    let t = TensorRing::new(m2(), RingDescriptor::Poly(pr.clone())).unwrap();
    let a = t.add(&t.one(), &t.pure(&t.r().basis(1), &RingElement::Poly(pr.var(0))));
    let xi = RingElement::Poly(pr.var(0));
    let psi = AutSpec::from_parts(t, &a, &[xi.clone()]).unwrap();
    let dec = decompose_automorphism(&psi, 1, DEFAULT_TRIALS).unwrap();
    assert_eq!(dec.sigma, vec![xi]);
}

#[test]
fn shift_roundtrip() {
    let pr = PolyRing::new(Q, 1);
    let t = TensorRing::new(m2(), RingDescriptor::Poly(pr.clone())).unwrap();
    let a = t.add(&t.one(), &t.pure(&t.r().basis(1), &RingElement::Poly(pr.var(0))));
    let shifted = RingElement::Poly(pr.add(&pr.var(0), &pr.one()));
    let psi = AutSpec::from_parts(t.clone(), &a, &[shifted.clone()]).unwrap();
    assert!(psi.inverse.is_some());
    let dec = decompose_automorphism(&psi, 2, DEFAULT_TRIALS).unwrap();
    assert_eq!(dec.sigma, vec![shifted]);
    assert!(dec.inverse_supplied);
    assert_eq!(dec.sigma_inverse, vec![RingElement::Poly(pr.sub(&pr.var(0), &pr.one()))]);
}

#[test]
fn scaling_has_central_conjugator() {
    let pr = PolyRing::new(Q, 1);
    let t = TensorRing::new(m2(), RingDescriptor::Poly(pr.clone())).unwrap();
    let doubled = RingElement::Poly(pr.scale(&Q.from_i64(2), &pr.var(0)));
    let psi = AutSpec::from_parts(t.clone(), &t.one(), &[doubled.clone()]).unwrap();
    let dec = decompose_automorphism(&psi, 3, DEFAULT_TRIALS).unwrap();
    assert!(t.unit_support(&dec.c).is_some());
    assert_eq!(dec.sigma, vec![doubled]);
}

#[test]
fn dual_numbers_automorphism() {
    let s_alg = Arc::new(StructAlgebra::truncated_polynomial(Q, 2).unwrap());
    let s = RingDescriptor::FinDim(s_alg.clone());
    let t = TensorRing::new(m2(), s.clone()).unwrap();
    // σ(1) = 1, σ(t) = 3t
    let sigma = vec![s.one(), s.from_flat(&[Q.zero(), Q.from_i64(3)])];
    let tt = s.from_flat(&[Q.zero(), Q.one()]);
    let a = t.add(&t.one(), &t.pure(&t.r().basis(2), &tt));
    let psi = AutSpec::from_parts(t, &a, &sigma).unwrap();
    let dec = decompose_automorphism(&psi, 4, DEFAULT_TRIALS).unwrap();
    assert_eq!(dec.sigma, sigma);
}

#[test]
fn non_surjective_endomorphism_is_rejected() {
    let pr = PolyRing::new(Q, 1);
    let t = TensorRing::new(m2(), RingDescriptor::Poly(pr.clone())).unwrap();
    // ξ ↦ ξ² is not onto, and no inverse can be supplied or computed
    let sq = RingElement::Poly(pr.mul(&pr.var(0), &pr.var(0)));
    let psi = AutSpec::from_parts(t.clone(), &t.one(), &[sq]).unwrap();
    assert!(psi.inverse.is_none());
    assert!(decompose_automorphism(&psi, 0, DEFAULT_TRIALS).is_err());
}

#[test]
fn derivation_ad_e12() {
    let r = m2();
    let e12 = r.basis(1);
    let d = DerivationSpec::inner(r.clone(), &e12).unwrap();
    let w = derivation_witness(&d, 5).unwrap();
    let diff: Vec<_> = w.w.iter().zip(&e12).map(|(a, b)| Q.sub(a, b)).collect();
    assert!((0..4).all(|k| r.commutator(&diff, &r.basis(k)).iter().all(|x| Q.is_zero(x))));
}

#[test]
fn zero_derivation_normalizes_to_zero() {
    let r = m2();
    let d = DerivationSpec::inner(r.clone(), &r.one()).unwrap();
    let w = derivation_witness(&d, 6).unwrap();
    assert!(w.w.iter().all(|x| Q.is_zero(x)));
    assert_eq!(w.centralizer.len(), 1);
}

#[test]
fn derivation_quaternion() {
    let h = Arc::new(StructAlgebra::quaternion_algebra(Q, Q.from_i64(-1), Q.from_i64(-1)).unwrap());
    let i = h.basis(1);
    let d = DerivationSpec::inner(h.clone(), &i).unwrap();
    let w = derivation_witness(&d, 7).unwrap();
    let diff: Vec<_> = w.w.iter().zip(&i).map(|(a, b)| Q.sub(a, b)).collect();
    assert!((0..4).all(|k| h.commutator(&diff, &h.basis(k)).iter().all(|x| Q.is_zero(x))));
}

#[test]
fn leibniz_violation_rejected() {
    let r = m2();
    let mut values: Vec<Vec<_>> = (0..4).map(|_| vec![Q.zero(); 4]).collect();
    values[0][1] = Q.one();
    assert!(DerivationSpec::new(crate::algebras::Bimodule::regular(r), values).is_err());
}

#[test]
fn flip_cases() {
    let yes = [
        StructAlgebra::matrix_algebra(Q, 2).unwrap(),
        StructAlgebra::quaternion_algebra(Q, Q.from_i64(-1), Q.from_i64(-1)).unwrap(),
        StructAlgebra::matrix_algebra(Q, 1).unwrap(),
    ];
    for r in &yes {
        let rep = flip_innerness_check(r, 9, DEFAULT_TRIALS).unwrap();
        assert!(rep.inner);
    }
    let qq = StructAlgebra::diagonal_algebra(Q, 2).unwrap();
    let rep = flip_innerness_check(&qq, 9, DEFAULT_TRIALS).unwrap();
    assert!(!rep.inner);
    assert!(matches!(rep.defect, Some(FlipDefect::Center { dim: 2, .. })));
    let ut = StructAlgebra::upper_triangular(Q, 2).unwrap();
    let rep = flip_innerness_check(&ut, 9, DEFAULT_TRIALS).unwrap();
    assert!(!rep.inner);
    assert!(matches!(rep.defect, Some(FlipDefect::Ideal { .. })));
}
