//! Coefficient extraction φ(x) = Σ_k c_k x r_k, witnesses b_kl, and
//! conjugator verification.

use super::hom::HomSpec;
use crate::algebras::TensorElement;
use crate::error::Error;
use crate::ground_rings::{FieldElement, Ring, RingElement};
use crate::linalg;

/// c_k = Σ_l r_l ⊗ s[k][l].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTuple {
    pub c: Vec<TensorElement>,
    pub s: Vec<Vec<RingElement>>,
    /// Basis labels of R the coefficients refer to.
    pub labels: Vec<String>,
}

/// Solves φ(b_p) = Σ_k c_k b_p r_k for all p and asserts
/// (a) that identity, (b) φ(x)c_k = c_k x, and (c) Σ_k c_k r_k = 1.
pub fn extract_coefficients(phi: &HomSpec) -> Result<CoefficientTuple, Error> {
    let cs = phi.require_central_simple()?;
    let ring = phi.ring();
    let s = ring.s();
    let r = phi.r();
    let d = r.dim();
    // rhs index (p, m): m-th coordinate of φ(b_p)
    let rhs: Vec<RingElement> = phi.images().iter().flat_map(|img| img.coords.iter().cloned()).collect();
    let sol = cs.operator_coefficients(&rhs, &s.zero(), |x, y| s.add(x, y), |c, v| s.scale(c, v));
    // solution index (l, k) ↔ operator x ↦ r_l x r_k
    let coeffs: Vec<Vec<RingElement>> = (0..d).map(|k| (0..d).map(|l| sol[l * d + k].clone()).collect()).collect();
    let c: Vec<TensorElement> = coeffs.iter().map(|row| TensorElement { coords: row.clone() }).collect();

    for p in 0..d {
        let bp = r.basis(p);
        let total = ring.sum(
            c.iter()
                .enumerate()
                .map(|(k, ck)| ring.mul(ck, &ring.embed_r(&r.mul(&bp, &r.basis(k)))))
                .collect::<Vec<_>>()
                .iter(),
        );
        if total != phi.images()[p] {
            return Err(Error::Inconsistent(format!("condition (a) fails on {}", r.labels()[p])));
        }
    }
    for (k, ck) in c.iter().enumerate() {
        if let Err(p) = phi.intertwines(ck) {
            return Err(Error::InvalidHom(format!(
                "condition (b) fails for c_{} on {}; the images are not multiplicative",
                k + 1,
                r.labels()[p]
            )));
        }
    }
    let sum = ring.sum(c.iter().enumerate().map(|(k, ck)| ring.mul(ck, &ring.basis(k))).collect::<Vec<_>>().iter());
    if sum != ring.one() {
        return Err(Error::InvalidHom("condition (c) fails: Σ c_k r_k ≠ 1".into()));
    }
    Ok(CoefficientTuple { c, s: coeffs, labels: r.labels().to_vec() })
}

/// b_kl = Σ_j w_j φ(z_j) for the dual system of coordinate l; asserts
/// b_kl·c_k = 1⊗s_kl.
pub fn witness(phi: &HomSpec, ct: &CoefficientTuple, k: usize, l: usize) -> Result<TensorElement, Error> {
    let cs = phi.require_central_simple()?;
    let ring = phi.ring();
    let ds = cs.dual_system(l)?;
    let b =
        ring.sum(ds.pairs.iter().map(|(w, z)| ring.mul(&ring.embed_r(w), &phi.apply(z))).collect::<Vec<_>>().iter());
    if ring.mul(&b, &ct.c[k]) != ring.embed_s(&ct.s[k][l]) {
        return Err(Error::Verification(format!("b_{}{}·c_{} ≠ 1⊗s_{}{}", k + 1, l + 1, k + 1, k + 1, l + 1)));
    }
    Ok(b)
}

/// When S is finite-dimensional, λ with 1 = Σ λ_kl s_kl (flattened k·d + l).
pub fn unit_in_span(phi: &HomSpec, ct: &CoefficientTuple) -> Option<Vec<FieldElement>> {
    let s = phi.s();
    s.flat_dim()?;
    let f = s.field();
    let cols: Vec<Vec<FieldElement>> = ct.s.iter().flatten().map(|x| s.to_flat(x)).collect();
    linalg::solve(&f, &linalg::transpose(&cols), &s.to_flat(&s.one()))
}

/// A checked conjugator: φ(x) = c x c⁻¹ on every basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatorCheck {
    pub c: TensorElement,
    pub c_inv: TensorElement,
    pub transcript: Vec<String>,
}

pub fn verify_conjugator(phi: &HomSpec, c: &TensorElement) -> Result<ConjugatorCheck, Error> {
    let ring = phi.ring();
    let c_inv = ring.invert(c)?;
    let mut transcript = vec!["c·c⁻¹ = 1".to_string(), "c⁻¹·c = 1".to_string()];
    if let Err(index) = phi.intertwines(c) {
        return Err(Error::ConjugationMismatch { index, label: phi.r().labels()[index].clone() });
    }
    transcript.extend(phi.r().labels().iter().map(|l| format!("φ({l})·c = c·{l}")));
    Ok(ConjugatorCheck { c: c.clone(), c_inv, transcript })
}
