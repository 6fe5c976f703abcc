//! Polynomial coefficient rings: normalize the first nonzero c_k by the gcd of
//! its coordinates.

use super::{Backend, Certificate, SolveRequest};
use crate::error::Error;
use crate::ground_rings::{Poly, Ring, RingDescriptor, RingElement};
use crate::sn_core::{extract_coefficients, verify_conjugator};

pub fn solve_ufd(req: &SolveRequest) -> Result<Certificate, Error> {
    let phi = &req.hom;
    let RingDescriptor::Poly(pr) = phi.s() else {
        return Ok(Certificate::unsupported(Backend::Ufd, req.seed, "coefficient ring is not a polynomial ring"));
    };
    if phi.central_simple().is_none() {
        return Ok(Certificate::unsupported(Backend::Ufd, req.seed, "R is not central simple"));
    }
    let ct = extract_coefficients(phi)?;
    let tr = phi.ring();
    let Some(k) = ct.c.iter().position(|ck| !tr.is_zero(ck)) else {
        return Err(Error::Inconsistent("every c_k vanishes".into()));
    };
    let coords: Vec<&Poly> = ct.c[k]
        .coords
        .iter()
        .map(|x| match x {
            RingElement::Poly(p) => p,
            _ => unreachable!("polynomial coefficients"),
        })
        .collect();
    let mut g = pr.zero();
    for t in &coords {
        g = match pr.gcd(&g, t) {
            Ok(g) => g,
            Err(e) => return Ok(Certificate::unsupported(Backend::Ufd, req.seed, &e.to_string())),
        };
    }
    let normalized = crate::algebras::TensorElement {
        coords: coords
            .iter()
            .map(|t| {
                pr.div_exact(t, &g)
                    .map(RingElement::Poly)
                    .ok_or_else(|| Error::Inconsistent("gcd does not divide".into()))
            })
            .collect::<Result<_, _>>()?,
    };
    let check = match verify_conjugator(phi, &normalized) {
        Ok(check) => check,
        Err(Error::NotInvertible { witness }) => {
            return Err(Error::Inconsistent(format!(
                "normalized c_{} is not invertible (determinant {}); the ring flags are inconsistent",
                k + 1,
                witness.unwrap_or_default()
            )))
        }
        Err(e) => return Err(e),
    };
    let mut cert = Certificate::inner(Backend::Ufd, req.seed, check, 0);
    cert.trace.push(format!("normalized c_{} by gcd {}", k + 1, phi.s().render(&RingElement::Poly(g))));
    Ok(cert)
}
