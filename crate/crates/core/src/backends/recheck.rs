//! Independent re-verification of certificates.
//!
//! Positive certificates are checked by plain multiplication. Negative ones
//! recompute det(a) and re-derive every branch claim, using Yun's squarefree
//! decomposition for the square tests instead of the square-root routine the
//! certifier uses.

use std::collections::HashSet;

use super::curve::{branch_of, curve_problem, Branch, RefutationReason};
use super::{Certificate, Status};
use crate::algebras::{StructAlgebra, TensorElement};
use crate::error::Error;
use crate::ground_rings::{CurveElement, CurveRing, Field, Ring, UniPoly, UniPolyRing};
use crate::sn_core::HomSpec;

/// Squarefree factors (a₁, a₂, …) with h = lc·a₁·a₂²·a₃³⋯, or `None` when
/// the characteristic is positive and not larger than deg h.
pub fn squarefree_decomposition(p: &UniPolyRing, h: &UniPoly) -> Option<Vec<UniPoly>> {
    let n = h.degree()?;
    let char_p = p.field.characteristic();
    if char_p != 0 && n as u64 >= char_p {
        return None;
    }
    let a = p.monic(h);
    if n == 0 {
        return Some(Vec::new());
    }
    let mut c = p.gcd(&a, &p.derivative(&a));
    let mut w = p.div_exact(&a, &c)?;
    let mut out = Vec::new();
    while w.degree() != Some(0) {
        let y = p.gcd(&w, &c);
        out.push(p.div_exact(&w, &y)?);
        c = p.div_exact(&c, &y)?;
        w = y;
    }
    Some(out)
}

/// Whether monic `h` is a square in F[x], via the squarefree decomposition;
/// falls back to coefficient matching when the decomposition is unavailable.
pub fn is_square_yun(p: &UniPolyRing, h: &UniPoly) -> bool {
    if h.is_zero() {
        return true;
    }
    if !p.field.is_one(h.leading().expect("nonzero")) {
        return false;
    }
    match squarefree_decomposition(p, h) {
        Some(parts) => parts.iter().step_by(2).all(|a| a.degree() == Some(0)),
        None => p.monic_sqrt(h).is_some(),
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Re-verifies `cert` for `hom`. Returns the list of checks performed.
/// Unsupported and exhausted certificates claim nothing and pass trivially.
pub fn recheck(hom: &HomSpec, presentation: Option<&TensorElement>, cert: &Certificate) -> Result<Vec<String>, Error> {
    match cert.status {
        Status::Inner => recheck_inner(hom, cert),
        Status::NotInner => recheck_not_inner(hom, presentation, cert),
        Status::Unsupported | Status::Exhausted => {
            Ok(vec![format!("{} certificate: nothing to verify", cert.status.name())])
        }
    }
}

fn recheck_inner(hom: &HomSpec, cert: &Certificate) -> Result<Vec<String>, Error> {
    let (Some(c), Some(c_inv)) = (cert.c(), cert.c_inv()) else {
        return Err(fail("inner certificate without a conjugator"));
    };
    let ring = hom.ring();
    if !ring.contains(c) || !ring.contains(c_inv) {
        return Err(fail("conjugator is not an element of R⊗S"));
    }
    let one = ring.one();
    let mut log = Vec::new();
    if ring.mul(c, c_inv) != one {
        return Err(fail("c·c⁻¹ ≠ 1"));
    }
    log.push("c·c⁻¹ = 1".to_string());
    if ring.mul(c_inv, c) != one {
        return Err(fail("c⁻¹·c ≠ 1"));
    }
    log.push("c⁻¹·c = 1".to_string());
    for (k, img) in hom.images().iter().enumerate() {
        let label = &hom.r().labels()[k];
        let rk = ring.basis(k);
        if ring.mul(img, c) != ring.mul(c, &rk) {
            return Err(fail(format!("φ({label})·c ≠ c·{label}")));
        }
        log.push(format!("φ({label})·c = c·{label}"));
    }
    Ok(log)
}

fn recheck_not_inner(
    hom: &HomSpec,
    presentation: Option<&TensorElement>,
    cert: &Certificate,
) -> Result<Vec<String>, Error> {
    let Some(refutation) = &cert.refutation else {
        return Err(fail("not-inner certificate without a refutation"));
    };
    let Some(a) = presentation else {
        return Err(fail("a negative certificate can only be rechecked against its presentation a"));
    };
    let r_is_m2 = *hom.r() == StructAlgebra::matrix_algebra(hom.r().field(), 2)?;
    let problem = curve_problem(hom.s(), r_is_m2, a).map_err(fail)?;
    let s = problem.s;
    let ring = hom.ring();
    let mut log = Vec::new();
    for (k, img) in hom.images().iter().enumerate() {
        let label = &hom.r().labels()[k];
        if ring.mul(img, a) != ring.mul(a, &ring.basis(k)) {
            return Err(fail(format!("presentation fails φ({label})·a = a·{label}")));
        }
    }
    log.push("φ(x)·a = a·x on every basis element".to_string());
    let [[a11, a12], [a21, a22]] = &problem.a;
    let delta = s.sub(&s.mul(a11, a22), &s.mul(a12, a21));
    if delta != refutation.delta || s.is_zero(&delta) {
        return Err(fail("recorded det(a) does not match the presentation"));
    }
    log.push("det(a) recomputed".to_string());

    let single = matches!(
        refutation.branches.as_slice(),
        [b] if matches!(b.reason, RefutationReason::ConjugatorNotDivisible { .. })
    );
    if !single {
        let seen: HashSet<Branch> = refutation.branches.iter().map(|b| b.branch).collect();
        if seen.len() != 3 || refutation.branches.len() != 3 {
            return Err(fail("the refutation must cover the branches q=0, p=0 and pq!=0 exactly once"));
        }
    }
    for b in &refutation.branches {
        check_branch(s, &problem.a, &delta, b.branch, &b.reason)?;
        log.push(format!("{b}: confirmed"));
    }
    Ok(log)
}

/// The mixed-branch quantities, recomputed from δ.
struct Mixed {
    norm_monic: UniPoly,
    half_sum: UniPoly,
    half_diff: UniPoly,
    odd: bool,
    target: CurveElement,
}

fn mixed_quantities(s: &CurveRing, delta: &CurveElement) -> Option<Mixed> {
    let p = s.uni();
    let f = s.field;
    let g = s.rhs();
    let d_big = delta.a.degree()?;
    let odd = d_big % 2 == 1;
    let lc_p = delta.a.leading()?.clone();
    let gamma = if odd { f.div(&lc_p, g.leading()?)? } else { lc_p };
    let target = s.scale(&f.inverse(&gamma)?, delta);
    let norm = s.norm(&target);
    let norm_monic = p.monic(&norm);
    let h = if is_square_yun(&p, &norm_monic) {
        let root = p.monic_sqrt(&norm_monic)?;
        let lc = if odd { f.neg(g.leading()?) } else { f.one() };
        p.scale(&lc, &root)
    } else {
        p.zero()
    };
    let two_inv = f.inverse(&f.from_i64(2))?;
    Some(Mixed {
        norm_monic,
        half_sum: p.scale(&two_inv, &p.add(&target.a, &h)),
        half_diff: p.scale(&two_inv, &p.sub(&target.a, &h)),
        odd,
        target,
    })
}

fn check_branch(
    s: &CurveRing,
    a: &[[CurveElement; 2]; 2],
    delta: &CurveElement,
    branch: Branch,
    reason: &RefutationReason,
) -> Result<(), Error> {
    let p = s.uni();
    let g = s.rhs();
    let (big_p, big_q) = (&delta.a, &delta.b);
    let claim = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(fail(format!("branch {}: {what}", branch.name())))
        }
    };
    match (branch, reason) {
        (Branch::QZero | Branch::PZero, RefutationReason::ComponentNonzero) => claim(!big_q.is_zero(), "claimed Q ≠ 0"),
        (Branch::Mixed, RefutationReason::ComponentZero) => claim(big_q.is_zero(), "claimed Q = 0"),
        (Branch::Mixed, RefutationReason::LeadingTermInY) => {
            let ok = !big_q.is_zero()
                && match big_p.degree() {
                    None => true,
                    Some(dp) => 2 * dp <= 2 * big_q.degree().unwrap_or(0) + g.degree().unwrap_or(0),
                };
            claim(ok, "claimed the y-component leads")
        }
        (Branch::QZero, RefutationReason::OddDegree { degree }) => {
            claim(big_q.is_zero() && big_p.degree() == Some(*degree) && degree % 2 == 1, "claimed odd deg P")
        }
        (Branch::QZero, RefutationReason::NotSquare { monic }) => claim(
            big_q.is_zero() && *monic == p.monic(big_p) && !is_square_yun(&p, monic),
            "claimed P/lc(P) is not a square",
        ),
        (Branch::PZero, RefutationReason::DegreeMismatch { degree, minimum }) => claim(
            big_q.is_zero() && big_p.degree() == Some(*degree) && g.degree() == Some(*minimum) && degree < minimum,
            "claimed deg P < deg g",
        ),
        (Branch::PZero, RefutationReason::NotDivisible { dividend, divisor }) => {
            claim(big_q.is_zero() && dividend == big_p && divisor == g && !p.divides(g, big_p), "claimed g ∤ P")
        }
        (Branch::PZero, RefutationReason::OddDegree { degree }) => {
            let quot = p.div_exact(big_p, g);
            claim(
                big_q.is_zero() && quot.and_then(|q| q.degree()) == Some(*degree) && degree % 2 == 1,
                "claimed odd deg(P/g)",
            )
        }
        (Branch::PZero, RefutationReason::NotSquare { monic }) => {
            let quot = p.div_exact(big_p, g);
            claim(
                big_q.is_zero() && quot.map(|q| p.monic(&q)).as_ref() == Some(monic) && !is_square_yun(&p, monic),
                "claimed P/g is not γ times a square",
            )
        }
        (Branch::Mixed, RefutationReason::NotSquare { monic }) => {
            let m = mixed_quantities(s, delta).ok_or_else(|| fail("branch pq!=0: degenerate δ"))?;
            let expected = if !is_square_yun(&p, &m.norm_monic) {
                m.norm_monic.clone()
            } else if m.odd {
                p.div_exact(&m.half_diff, g).ok_or_else(|| fail("branch pq!=0: g ∤ (P' − h)/2"))?
            } else {
                m.half_sum.clone()
            };
            claim(*monic == expected && !is_square_yun(&p, monic), "claimed a non-square")
        }
        (Branch::Mixed, RefutationReason::NotDivisible { dividend, divisor }) => {
            let m = mixed_quantities(s, delta).ok_or_else(|| fail("branch pq!=0: degenerate δ"))?;
            let root = if m.odd {
                p.div_exact(&m.half_diff, g).and_then(|q2| p.monic_sqrt(&q2))
            } else {
                p.monic_sqrt(&m.half_sum)
            };
            let two_root = root.map(|r| p.scale(&s.field.from_i64(2), &r));
            let relevant = (m.odd && *dividend == m.half_diff && divisor == g)
                || (*dividend == m.target.b && two_root.as_ref() == Some(divisor));
            claim(relevant && !p.divides(divisor, dividend), "claimed a non-divisibility")
        }
        (_, RefutationReason::ConjugatorNotDivisible { f, gamma, row, col }) => {
            let sq = s.scale(gamma, &s.mul(f, f));
            let entry = a.get(*row).and_then(|r| r.get(*col)).ok_or_else(|| fail("entry index out of range"))?;
            // f | e iff N(f) divides both components of e·conj(f)
            let n = s.norm(f);
            let t = s.mul(entry, &s.conjugate(f));
            let divides = p.divides(&n, &t.a) && p.divides(&n, &t.b);
            claim(
                sq == *delta && branch == branch_of(f) && !s.is_zero(f) && !divides,
                "claimed det(a) = γf² with f ∤ a",
            )
        }
        _ => Err(fail(format!("branch {}: reason does not apply to this branch", branch.name()))),
    }
}
