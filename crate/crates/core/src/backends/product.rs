//! S = S₁ × S₂: solve each factor and pair the conjugators.

use super::{dispatch, Backend, Certificate, SolveRequest, Status};
use crate::error::Error;
use crate::ground_rings::RingDescriptor;
use crate::sn_core::verify_conjugator;

pub fn solve_product(req: &SolveRequest) -> Result<Certificate, Error> {
    let phi = &req.hom;
    if !matches!(phi.s(), RingDescriptor::Product(..)) {
        return Ok(Certificate::unsupported(Backend::Product, req.seed, "coefficient ring is not a product"));
    }
    let mut parts = Vec::with_capacity(2);
    for factor in 0..2 {
        let sub = dispatch(&req.derive(phi.project(factor)?))?;
        if sub.status != Status::Inner {
            // factors carry no fraction-field presentation, so a failure here
            // is Unsupported or Exhausted, never a refutation
            let reason =
                format!("factor {} failed: {}", factor + 1, sub.reason.as_deref().unwrap_or(sub.status.name()));
            let mut cert = sub.nested(&format!("factor {}", factor + 1));
            cert.backend = Some(Backend::Product);
            cert.reason = Some(reason);
            return Ok(cert);
        }
        parts.push(sub);
    }
    let tr = phi.ring();
    let c = tr.pair(parts[0].c().expect("inner"), parts[1].c().expect("inner"));
    let check = verify_conjugator(phi, &c)?;
    let mut cert = Certificate::inner(Backend::Product, req.seed, check, parts[0].trials + parts[1].trials);
    for (i, p) in parts.into_iter().enumerate() {
        cert.trace.extend(p.nested(&format!("factor {}", i + 1)).trace);
    }
    Ok(cert)
}
