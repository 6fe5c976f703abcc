//! Truncated power series over a supported base ring.

use super::{dispatch, Backend, Certificate, SolveRequest, Status};
use crate::error::Error;
use crate::ground_rings::{Ring, RingDescriptor};
use crate::sn_core::{extract_coefficients, verify_conjugator};

pub fn solve_power_series(req: &SolveRequest) -> Result<Certificate, Error> {
    let phi = &req.hom;
    let RingDescriptor::Series { base, .. } = phi.s() else {
        return Ok(Certificate::unsupported(Backend::Series, req.seed, "coefficient ring is not a series ring"));
    };
    if phi.central_simple().is_none() {
        return Ok(Certificate::unsupported(Backend::Series, req.seed, "R is not central simple"));
    }
    let tr = phi.ring();
    let base_cert = dispatch(&req.derive(phi.constant_term()?))?;
    if base_cert.status != Status::Inner {
        let mut cert = base_cert.clone().nested("constant term");
        cert.backend = Some(Backend::Series);
        cert.reason = Some(format!(
            "constant-term solve failed: {}",
            base_cert.reason.as_deref().unwrap_or(base_cert.status.name())
        ));
        return Ok(cert);
    }
    // a, a⁻¹ as constant series
    let lift = |u: &crate::algebras::TensorElement| crate::algebras::TensorElement {
        coords: u.coords.iter().map(|c| phi.s().series_constant(c)).collect(),
    };
    let a = lift(base_cert.c().expect("inner"));
    let a_inv = lift(base_cert.c_inv().expect("inner"));
    let reduced = phi.conjugate_back(&a, &a_inv)?;
    let ct = extract_coefficients(&reduced)?;
    // c_k0 = λ_k·1 with 1 = Σ λ_k r_k; take the smallest k with λ_k ≠ 0
    let r = phi.r();
    let f = r.field();
    let t0 = tr.with_coefficients((**base).clone());
    let mut chosen = None;
    for (k, ck) in ct.c.iter().enumerate() {
        let c0 = tr.series_parts(ck).swap_remove(0);
        let expected = t0.embed_s(&base.from_field(&r.unit()[k]));
        if c0 != expected {
            return Err(Error::Inconsistent(format!("constant term of c_{} is not λ_{}·1", k + 1, k + 1)));
        }
        if chosen.is_none() && !f.is_zero(&r.unit()[k]) {
            chosen = Some(k);
        }
    }
    let k = chosen.ok_or_else(|| Error::Inconsistent("the unit has no nonzero coordinate".into()))?;
    let c = tr.mul(&a, &ct.c[k]);
    let check = verify_conjugator(phi, &c)?;
    let mut cert = Certificate::inner(Backend::Series, req.seed, check, base_cert.trials);
    cert.trace.extend(base_cert.nested("constant term").trace);
    cert.trace.push(format!("lifted with c_{}", k + 1));
    Ok(cert)
}
