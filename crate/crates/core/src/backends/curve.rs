//! Negative certifier for S = F[x, y]/(y² − g).
//!
//! φ is presented by a ∈ M₂(S) with φ(x)·a = a·x and δ = det(a) ≠ 0. φ is
//! inner over S iff δ = γ·f² with γ ∈ F^× and f ∈ S dividing every entry of
//! a; then c = a/f. With f = p + q·y we have f² = (p² + q²g) + 2pq·y, and the
//! cases q = 0, p = 0 and pq ≠ 0 are decided separately.

use std::fmt;

use super::{Backend, Certificate, SolveRequest};
use crate::algebras::TensorElement;
use crate::error::Error;
use crate::ground_rings::{
    CurveElement, CurveRing, FieldElement, Ring, RingDescriptor, RingElement, UniPoly, UniPolyRing,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// f = p
    QZero,
    /// f = q·y
    PZero,
    /// p, q both nonzero
    Mixed,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::QZero => "q=0",
            Branch::PZero => "p=0",
            Branch::Mixed => "pq!=0",
        }
    }

    pub fn parse(s: &str) -> Option<Branch> {
        [Branch::QZero, Branch::PZero, Branch::Mixed].into_iter().find(|b| b.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationReason {
    /// The branch forces the y-component of δ to vanish, but it does not.
    ComponentNonzero,
    /// 2γpq ≠ 0 but δ has no y-component.
    ComponentZero,
    /// Under the weights deg x = 2, deg y = deg g the leading term of δ lies
    /// in its y-component, impossible for γ·f².
    LeadingTermInY,
    /// The polynomial that must be γ·(square) has odd degree.
    OddDegree { degree: usize },
    /// γq²g has degree at least deg g.
    DegreeMismatch { degree: usize, minimum: usize },
    /// `divisor` does not divide `dividend` in F[x].
    NotDivisible { dividend: UniPoly, divisor: UniPoly },
    /// The monic polynomial is not a square in F[x].
    NotSquare { monic: UniPoly },
    /// δ = γf², but f does not divide entry (row, col) of a.
    ConjugatorNotDivisible { f: CurveElement, gamma: FieldElement, row: usize, col: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchRefutation {
    pub branch: Branch,
    pub reason: RefutationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRefutation {
    pub delta: CurveElement,
    pub branches: Vec<BranchRefutation>,
}

fn deg(p: &UniPoly) -> String {
    p.degree().map_or("-∞".into(), |d| d.to_string())
}

impl fmt::Display for BranchRefutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "branch {}: ", self.branch.name())?;
        match &self.reason {
            RefutationReason::ComponentNonzero => {
                write!(f, "requires the y-component of det(a) to vanish")
            }
            RefutationReason::ComponentZero => write!(f, "2γpq ≠ 0 but det(a) has no y-component"),
            RefutationReason::LeadingTermInY => {
                write!(f, "the leading term of det(a) lies in its y-component")
            }
            RefutationReason::OddDegree { degree } => {
                write!(f, "needs a square of odd degree {degree}")
            }
            RefutationReason::DegreeMismatch { degree, minimum } => {
                write!(f, "γq²g has degree ≥ {minimum}, but the target has degree {degree}")
            }
            RefutationReason::NotDivisible { dividend, divisor } => {
                write!(
                    f,
                    "a divisor of degree {} does not divide a polynomial of degree {}",
                    deg(divisor),
                    deg(dividend)
                )
            }
            RefutationReason::NotSquare { monic } => {
                write!(f, "a monic polynomial of degree {} is not a square", deg(monic))
            }
            RefutationReason::ConjugatorNotDivisible { row, col, .. } => {
                write!(f, "det(a) = γf² but f does not divide entry ({}, {}) of a", row + 1, col + 1)
            }
        }
    }
}

/// The ring data the certifier and the recheck share.
pub(crate) struct CurveProblem<'a> {
    pub s: &'a CurveRing,
    /// a as a row-major 2×2 matrix over S
    pub a: [[CurveElement; 2]; 2],
}

pub(crate) fn curve_problem<'a>(
    req_s: &'a RingDescriptor,
    r_is_m2: bool,
    a: &TensorElement,
) -> Result<CurveProblem<'a>, String> {
    let RingDescriptor::Curve(s) = req_s else {
        return Err("coefficient ring is not the curve ring".into());
    };
    if !r_is_m2 {
        return Err("the curve certifier requires R = M₂(F)".into());
    }
    let entry = |i: usize| match &a.coords[i] {
        RingElement::Curve(c) => Ok(c.clone()),
        _ => Err("presentation entries must be curve-ring elements".to_string()),
    };
    Ok(CurveProblem { s, a: [[entry(0)?, entry(1)?], [entry(2)?, entry(3)?]] })
}

impl CurveProblem<'_> {
    pub fn det(&self) -> CurveElement {
        let s = self.s;
        s.sub(&s.mul(&self.a[0][0], &self.a[1][1]), &s.mul(&self.a[0][1], &self.a[1][0]))
    }
}

/// Outcome of deciding δ = γf².
enum Decision {
    Square { gamma: FieldElement, f: CurveElement },
    Refuted(Vec<BranchRefutation>),
}

fn monic_split(p: &UniPolyRing, h: &UniPoly) -> (FieldElement, UniPoly) {
    let lc = h.leading().expect("nonzero").clone();
    (lc.clone(), p.monic(h))
}

fn decide(s: &CurveRing, delta: &CurveElement) -> Decision {
    let p = s.uni();
    let f = s.field;
    let g = s.rhs();
    let dg = g.degree().expect("nonzero g");
    let (big_p, big_q) = (&delta.a, &delta.b);
    let mut refutations = Vec::new();
    let refute = |branch, reason| BranchRefutation { branch, reason };

    if big_q.is_zero() {
        // q = 0: γp² = P
        let dp = big_p.degree().expect("δ ≠ 0");
        if dp % 2 == 1 {
            refutations.push(refute(Branch::QZero, RefutationReason::OddDegree { degree: dp }));
        } else {
            let (gamma, monic) = monic_split(&p, big_p);
            match p.monic_sqrt(&monic) {
                Some(root) => return Decision::Square { gamma, f: s.from_uni(root) },
                None => refutations.push(refute(Branch::QZero, RefutationReason::NotSquare { monic })),
            }
        }
        // p = 0: γq²g = P
        if dp < dg {
            refutations.push(refute(Branch::PZero, RefutationReason::DegreeMismatch { degree: dp, minimum: dg }));
        } else {
            match p.div_exact(big_p, g) {
                None => refutations.push(refute(
                    Branch::PZero,
                    RefutationReason::NotDivisible { dividend: big_p.clone(), divisor: g.clone() },
                )),
                Some(quot) => {
                    let dq = quot.degree().expect("nonzero");
                    if dq % 2 == 1 {
                        refutations.push(refute(Branch::PZero, RefutationReason::OddDegree { degree: dq }));
                    } else {
                        let (gamma, monic) = monic_split(&p, &quot);
                        match p.monic_sqrt(&monic) {
                            Some(root) => return Decision::Square { gamma, f: CurveElement { a: p.zero(), b: root } },
                            None => refutations.push(refute(Branch::PZero, RefutationReason::NotSquare { monic })),
                        }
                    }
                }
            }
        }
        refutations.push(refute(Branch::Mixed, RefutationReason::ComponentZero));
        return Decision::Refuted(refutations);
    }

    refutations.push(refute(Branch::QZero, RefutationReason::ComponentNonzero));
    refutations.push(refute(Branch::PZero, RefutationReason::ComponentNonzero));
    let dp = big_p.degree().map_or(0, |d| 2 * d);
    let dq = 2 * big_q.degree().expect("nonzero") + dg;
    if big_p.is_zero() || dp <= dq {
        refutations.push(refute(Branch::Mixed, RefutationReason::LeadingTermInY));
        return Decision::Refuted(refutations);
    }
    let d_big = big_p.degree().expect("nonzero");
    // normalize the leading part of f to be monic, which fixes γ
    let odd = d_big % 2 == 1;
    let lc_p = big_p.leading().expect("nonzero").clone();
    let gamma = if odd { f.mul(&lc_p, &f.inverse(g.leading().expect("nonzero")).expect("nonzero")) } else { lc_p };
    let gamma_inv = f.inverse(&gamma).expect("nonzero");
    let target = s.scale(&gamma_inv, delta);
    // N(f) = h with h² = N(δ/γ); lc(h) = 1 when p leads, −lc(g) when q·y leads
    let norm = s.norm(&target);
    let (norm_lc, norm_monic) = monic_split(&p, &norm);
    let Some(root) = p.monic_sqrt(&norm_monic) else {
        refutations.push(refute(Branch::Mixed, RefutationReason::NotSquare { monic: norm_monic }));
        return Decision::Refuted(refutations);
    };
    let h_lc = if odd { f.neg(g.leading().expect("nonzero")) } else { f.one() };
    debug_assert_eq!(f.mul(&h_lc, &h_lc), norm_lc);
    let h = p.scale(&h_lc, &root);
    let two_inv = f.inverse(&f.from_i64(2)).expect("char ≠ 2");
    let half_sum = p.scale(&two_inv, &p.add(&target.a, &h));
    let half_diff = p.scale(&two_inv, &p.sub(&target.a, &h));
    let candidate = if odd {
        // q² = (P' − h)/(2g), then p = Q'/(2q)
        let Some(q2) = p.div_exact(&half_diff, g) else {
            refutations.push(refute(
                Branch::Mixed,
                RefutationReason::NotDivisible { dividend: half_diff, divisor: g.clone() },
            ));
            return Decision::Refuted(refutations);
        };
        let Some(q) = p.monic_sqrt(&q2) else {
            refutations.push(refute(Branch::Mixed, RefutationReason::NotSquare { monic: q2 }));
            return Decision::Refuted(refutations);
        };
        let two_q = p.scale(&f.from_i64(2), &q);
        let Some(pp) = p.div_exact(&target.b, &two_q) else {
            refutations.push(refute(
                Branch::Mixed,
                RefutationReason::NotDivisible { dividend: target.b.clone(), divisor: two_q },
            ));
            return Decision::Refuted(refutations);
        };
        CurveElement { a: pp, b: q }
    } else {
        let Some(pp) = p.monic_sqrt(&half_sum) else {
            refutations.push(refute(Branch::Mixed, RefutationReason::NotSquare { monic: half_sum }));
            return Decision::Refuted(refutations);
        };
        let two_p = p.scale(&f.from_i64(2), &pp);
        let Some(q) = p.div_exact(&target.b, &two_p) else {
            refutations.push(refute(
                Branch::Mixed,
                RefutationReason::NotDivisible { dividend: target.b.clone(), divisor: two_p },
            ));
            return Decision::Refuted(refutations);
        };
        CurveElement { a: pp, b: q }
    };
    debug_assert_eq!(s.mul(&candidate, &candidate), target);
    Decision::Square { gamma, f: candidate }
}

pub fn certify_not_inner_curve(req: &SolveRequest) -> Result<Certificate, Error> {
    let phi = &req.hom;
    let Some(a) = &req.presentation else {
        return Ok(Certificate::unsupported(
            Backend::Curve,
            req.seed,
            "the curve certifier needs φ presented by a fraction-field conjugator a",
        ));
    };
    let r_is_m2 = *phi.r() == crate::algebras::StructAlgebra::matrix_algebra(phi.r().field(), 2)?;
    let problem = match curve_problem(phi.s(), r_is_m2, a) {
        Ok(p) => p,
        Err(reason) => return Ok(Certificate::unsupported(Backend::Curve, req.seed, &reason)),
    };
    if let Err(k) = phi.intertwines(a) {
        return Err(Error::InvalidHom(format!(
            "the presentation does not satisfy φ(x)·a = a·x at {}",
            phi.r().labels()[k]
        )));
    }
    let s = problem.s;
    let delta = problem.det();
    if s.is_zero(&delta) {
        return Err(Error::InvalidHom("det(a) = 0, so a is not invertible over the fraction field".into()));
    }
    match decide(s, &delta) {
        Decision::Refuted(branches) => Ok(Certificate::not_inner(req.seed, CurveRefutation { delta, branches })),
        Decision::Square { gamma, f } => {
            let mut c = Vec::with_capacity(4);
            for (i, row) in problem.a.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    match s.divide(entry, &f)? {
                        Some(q) => c.push(RingElement::Curve(q)),
                        None => {
                            let branch = branch_of(&f);
                            let reason = RefutationReason::ConjugatorNotDivisible { f, gamma, row: i, col: j };
                            return Ok(Certificate::not_inner(
                                req.seed,
                                CurveRefutation { delta, branches: vec![BranchRefutation { branch, reason }] },
                            ));
                        }
                    }
                }
            }
            let check = crate::sn_core::verify_conjugator(phi, &TensorElement { coords: c })?;
            let mut cert = Certificate::inner(Backend::Curve, req.seed, check, 0);
            cert.trace.push(format!("det(a) = γ·f² with γ = {gamma}"));
            Ok(cert)
        }
    }
}

pub(crate) fn branch_of(f: &CurveElement) -> Branch {
    match (f.a.is_zero(), f.b.is_zero()) {
        (_, true) => Branch::QZero,
        (true, false) => Branch::PZero,
        (false, false) => Branch::Mixed,
    }
}

/// φ(x) = a·x·a⁻¹ for a ∈ M₂(S) invertible over Frac(S), computed as
/// a·x·adj(a)/det(a). Fails when an image leaves M₂(S).
pub fn curve_conjugation(
    ring: crate::algebras::TensorRing,
    a: &TensorElement,
) -> Result<crate::sn_core::HomSpec, Error> {
    let r_is_m2 = *ring.r() == crate::algebras::StructAlgebra::matrix_algebra(ring.r().field(), 2)?;
    let problem = curve_problem(ring.s(), r_is_m2, a).map_err(Error::Unsupported)?;
    let s = problem.s;
    let delta = problem.det();
    if s.is_zero(&delta) {
        return Err(Error::NotInvertible { witness: Some("det(a) = 0".into()) });
    }
    let [[p, q], [r, t]] = &problem.a;
    let adj = TensorElement {
        coords: [t.clone(), s.neg(q), s.neg(r), p.clone()].into_iter().map(RingElement::Curve).collect(),
    };
    let mut images = Vec::with_capacity(4);
    for k in 0..4 {
        let num = ring.mul(&ring.mul(a, &ring.basis(k)), &adj);
        let mut coords = Vec::with_capacity(4);
        for x in &num.coords {
            let RingElement::Curve(x) = x else { unreachable!("curve entries") };
            match s.divide(x, &delta)? {
                Some(q) => coords.push(RingElement::Curve(q)),
                None => return Err(Error::InvalidHom(format!("a·{}·a⁻¹ has entries outside S", ring.r().labels()[k]))),
            }
        }
        images.push(TensorElement { coords });
    }
    Ok(crate::sn_core::validate_hom(ring, images)?)
}
