//! Jacobson radical via the trace form (characteristic 0).

use super::structure::{AlgElement, StructAlgebra};
use crate::error::Error;
use crate::ground_rings::Ring;
use crate::linalg::{self, Matrix};

/// Basis (in echelon form) of rad(A), the kernel of (x, y) ↦ tr(L_{xy}).
/// The result is checked to be a nilpotent two-sided ideal.
pub fn jacobson_radical(a: &StructAlgebra) -> Result<Vec<AlgElement>, Error> {
    let f = a.field();
    if f.characteristic() != 0 {
        return Err(Error::Unsupported("radical computation is only implemented in characteristic 0".into()));
    }
    let d = a.dim();
    let t = a.basis_traces();
    let gram: Matrix<_> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| f.sum(a.product_terms(i, j).iter().map(|(k, c)| f.mul(c, &t[*k])).collect::<Vec<_>>().iter()))
                .collect()
        })
        .collect();
    let rad = a.span(&linalg::kernel(&f, &gram, d));
    check_nilpotent_ideal(a, &rad)?;
    Ok(rad)
}

/// Membership in the span of rows in reduced echelon form.
fn in_echelon_span(a: &StructAlgebra, rows: &[AlgElement], v: &AlgElement) -> bool {
    let f = a.field();
    let mut r = v.clone();
    for row in rows {
        let Some(p) = row.iter().position(|c| !f.is_zero(c)) else { continue };
        if f.is_zero(&r[p]) {
            continue;
        }
        let c = r[p].clone();
        r = r.iter().zip(row).map(|(x, y)| f.sub(x, &f.mul(&c, y))).collect();
    }
    r.iter().all(|c| f.is_zero(c))
}

fn check_nilpotent_ideal(a: &StructAlgebra, ideal: &[AlgElement]) -> Result<(), Error> {
    for x in ideal {
        for k in 0..a.dim() {
            let bk = a.basis(k);
            if ![a.mul(x, &bk), a.mul(&bk, x)].iter().all(|y| in_echelon_span(a, ideal, y)) {
                return Err(Error::Inconsistent("trace-form kernel is not an ideal".into()));
            }
        }
    }
    // I ⊋ I² ⊋ … must reach 0
    let mut power = ideal.to_vec();
    while !power.is_empty() {
        let next: Vec<AlgElement> = power
            .iter()
            .flat_map(|x| ideal.iter().map(move |y| (x, y)))
            .map(|(x, y)| a.mul(x, y))
            .filter(|z| !a.is_zero(z))
            .collect();
        let next = a.span(&next);
        if next.len() == power.len() {
            return Err(Error::Inconsistent("trace-form kernel is not nilpotent".into()));
        }
        power = next;
    }
    Ok(())
}
