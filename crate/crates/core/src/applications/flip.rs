//! The flip x⊗y ↦ y⊗x on R⊗R is inner exactly when R is central simple.

use crate::algebras::{jacobson_radical, AlgElement, StructAlgebra};
use crate::backends::{find_conjugator, SearchOutcome};
use crate::error::Error;
use crate::ground_rings::{BaseField, FieldElement, Ring};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlipDefect {
    /// dim Z(R) > 1
    Center { dim: usize, basis: Vec<AlgElement> },
    /// A nonzero proper ideal (the radical) of a central R.
    Ideal { basis: Vec<AlgElement> },
    /// Central but not simple, and no ideal witness is computed in this
    /// characteristic.
    NotSimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipReport {
    pub inner: bool,
    /// c ∈ R⊗R with c·(x⊗y)·c⁻¹ = y⊗x, and c⁻¹, in the basis r_i⊗r_j.
    pub conjugator: Option<(Vec<FieldElement>, Vec<FieldElement>)>,
    pub defect: Option<FlipDefect>,
    /// The search outcome: "found", "empty" or "exhausted".
    pub search: &'static str,
    pub trials: u32,
}

/// R⊗R with the generators r_k⊗1, 1⊗r_k and their flipped images.
fn flip_data(r: &StructAlgebra) -> Result<(StructAlgebra, Vec<Vec<FieldElement>>, Vec<Vec<FieldElement>>), Error> {
    let f = r.field();
    let d = r.dim();
    let rr = StructAlgebra::tensor_product(r, r)?;
    let unit = r.unit();
    let left = |k: usize| {
        let mut v = vec![f.zero(); d * d];
        for (u, c) in unit.iter().enumerate() {
            v[k * d + u] = c.clone();
        }
        v
    };
    let right = |k: usize| {
        let mut v = vec![f.zero(); d * d];
        for (l, c) in unit.iter().enumerate() {
            v[l * d + k] = c.clone();
        }
        v
    };
    let gens = (0..d).map(left).chain((0..d).map(right)).collect();
    let flipped = (0..d).map(right).chain((0..d).map(left)).collect();
    Ok((rr, gens, flipped))
}

fn check_conjugator(
    r: &StructAlgebra,
    rr: &StructAlgebra,
    gens: &[Vec<FieldElement>],
    flipped: &[Vec<FieldElement>],
    c: &Vec<FieldElement>,
    c_inv: &Vec<FieldElement>,
) -> Result<(), Error> {
    if c.len() != rr.dim() || c_inv.len() != rr.dim() {
        return Err(Error::Verification(format!("c must have {} coordinates", rr.dim())));
    }
    let d = r.dim();
    for (k, (g, h)) in gens.iter().zip(flipped).enumerate() {
        if rr.mul(h, c) != rr.mul(c, g) {
            let x = &r.labels()[k % d];
            let msg =
                if k < d { format!("(1⊗{x})·c ≠ c·({x}⊗1)") } else { format!("({x}⊗1)·c ≠ c·(1⊗{x})") };
            return Err(Error::Verification(msg));
        }
    }
    let one = rr.one();
    if rr.mul(c, c_inv) != one || rr.mul(c_inv, c) != one {
        return Err(Error::Verification("c⁻¹ is not a two-sided inverse".into()));
    }
    Ok(())
}

/// Scales c so its first nonzero coordinate is 1; the conjugator is unique
/// up to a scalar, and for matrix algebras this yields the swap.
fn normalize(f: &BaseField, c: Vec<FieldElement>, c_inv: Vec<FieldElement>) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let Some(lead) = c.iter().find(|x| !f.is_zero(x)).cloned() else {
        return (c, c_inv);
    };
    let inv = f.inverse(&lead).expect("nonzero");
    (c.iter().map(|x| f.mul(x, &inv)).collect(), c_inv.iter().map(|x| f.mul(x, &lead)).collect())
}

pub fn flip_innerness_check(r: &StructAlgebra, seed: u64, trials: u32) -> Result<FlipReport, Error> {
    let f = r.field();
    let (rr, iota, phi) = flip_data(r)?;
    let central_simple = r.verify_central_simple();
    let outcome = find_conjugator(&rr, &iota, &phi, seed, trials).map_err(Error::Unsupported)?;
    let (search, found) = match outcome {
        SearchOutcome::Found { c, c_inv, trials } => ("found", Some((c, c_inv, trials))),
        SearchOutcome::Empty => ("empty", None),
        SearchOutcome::Exhausted => ("exhausted", None),
    };
    if central_simple {
        let Some((c, c_inv, used)) = found else {
            return Err(Error::Inconsistent(format!("R is central simple but the search was {search}")));
        };
        let (c, c_inv) = normalize(&f, c, c_inv);
        check_conjugator(r, &rr, &iota, &phi, &c, &c_inv)?;
        return Ok(FlipReport { inner: true, conjugator: Some((c, c_inv)), defect: None, search, trials: used });
    }
    if found.is_some() {
        return Err(Error::Inconsistent("a flip conjugator exists although R is not central simple".into()));
    }
    let center = r.center();
    let defect = if center.len() > 1 {
        FlipDefect::Center { dim: center.len(), basis: center }
    } else if f.characteristic() == 0 {
        let rad = jacobson_radical(r)?;
        if rad.is_empty() {
            FlipDefect::NotSimple
        } else {
            FlipDefect::Ideal { basis: rad }
        }
    } else {
        FlipDefect::NotSimple
    };
    Ok(FlipReport { inner: false, conjugator: None, defect: Some(defect), search, trials })
}

/// Rechecks a report: the conjugator when inner, otherwise that R is not
/// central simple and the defect is what it claims to be.
pub fn verify_flip(r: &StructAlgebra, report: &FlipReport) -> Result<Vec<String>, Error> {
    let f = r.field();
    let d = r.dim();
    let central_simple = r.verify_central_simple();
    if report.inner {
        let (rr, iota, phi) = flip_data(r)?;
        let (c, c_inv) = report.conjugator.as_ref().ok_or_else(|| Error::Verification("no conjugator".into()))?;
        check_conjugator(r, &rr, &iota, &phi, c, c_inv)?;
        return Ok(vec![
            format!("(1⊗r_k)·c = c·(r_k⊗1) and (r_k⊗1)·c = c·(1⊗r_k) for {d} basis elements"),
            "c·c⁻¹ = c⁻¹·c = 1".into(),
        ]);
    }
    if central_simple {
        return Err(Error::Verification("R is central simple, so the flip is inner".into()));
    }
    let mut log = vec!["the L·R spanning matrix of R is singular".to_string()];
    let independent = |basis: &[AlgElement]| linalg::rank(&f, &basis.to_vec()) == basis.len();
    match report.defect.as_ref() {
        Some(FlipDefect::Center { dim, basis }) => {
            if basis.len() != *dim || *dim < 2 || !independent(basis) {
                return Err(Error::Verification(format!(
                    "the center witness does not span a space of dimension {dim} ≥ 2"
                )));
            }
            for z in basis {
                if (0..d).any(|k| r.commutator(z, &r.basis(k)).iter().any(|x| !f.is_zero(x))) {
                    return Err(Error::Verification("a center witness is not central".into()));
                }
            }
            log.push(format!("{dim} independent central elements"));
        }
        Some(FlipDefect::Ideal { basis }) => {
            if basis.is_empty() || basis.len() >= d || !independent(basis) {
                return Err(Error::Verification("the ideal witness is not a nonzero proper subspace".into()));
            }
            let rank = basis.len();
            for b in basis {
                for k in 0..d {
                    for x in [r.mul(b, &r.basis(k)), r.mul(&r.basis(k), b)] {
                        let mut m = basis.clone();
                        m.push(x);
                        if linalg::rank(&f, &m) != rank {
                            return Err(Error::Verification("the ideal witness is not a two-sided ideal".into()));
                        }
                    }
                }
            }
            log.push(format!("a two-sided ideal of dimension {rank} in dimension {d}"));
        }
        Some(FlipDefect::NotSimple) | None => {}
    }
    Ok(log)
}
