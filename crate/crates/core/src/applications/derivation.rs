//! Derivations d: R → M from a central simple R are inner: d(x) = wx − xw.

use std::sync::Arc;

use crate::algebras::{AlgElement, Bimodule, StructAlgebra};
use crate::backends::{find_conjugator, SearchOutcome, DEFAULT_TRIALS};
use crate::error::Error;
use crate::ground_rings::{Field, FieldElement, Ring};
use crate::linalg::{self, Pivoting};
use crate::sn_core::CentralSimple;

#[derive(Clone, Debug)]
pub struct DerivationSpec {
    pub module: Bimodule,
    /// d(r_k) in the basis of M.
    pub values: Vec<Vec<FieldElement>>,
}

impl DerivationSpec {
    /// Checks d(r_i r_j) = d(r_i)·r_j + r_i·d(r_j) on all basis pairs.
    pub fn new(module: Bimodule, values: Vec<Vec<FieldElement>>) -> Result<Self, Error> {
        let r = module.algebra();
        if values.len() != r.dim() || values.iter().any(|v| v.len() != module.dim()) {
            return Err(Error::InvalidHom(format!(
                "expected {} values in a module of dimension {}",
                r.dim(),
                module.dim()
            )));
        }
        let spec = DerivationSpec { module, values };
        let r = spec.module.algebra();
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let lhs = spec.apply(&r.basis_product(i, j));
                let rhs = add(
                    r.field(),
                    &spec.module.act_right(&spec.values[i], &r.basis(j)),
                    &spec.module.act_left(&r.basis(i), &spec.values[j]),
                );
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "Leibniz rule fails on ({}, {})",
                        r.labels()[i],
                        r.labels()[j]
                    )));
                }
            }
        }
        Ok(spec)
    }

    /// d = ad(m) on the regular bimodule: d(x) = mx − xm.
    pub fn inner(r: Arc<StructAlgebra>, m: &AlgElement) -> Result<Self, Error> {
        let values = (0..r.dim()).map(|k| r.commutator(m, &r.basis(k))).collect();
        Self::new(Bimodule::regular(r), values)
    }

    pub fn algebra(&self) -> &StructAlgebra {
        self.module.algebra()
    }

    /// d(x) by linearity.
    pub fn apply(&self, x: &AlgElement) -> Vec<FieldElement> {
        let f = self.algebra().field();
        let mut out = vec![f.zero(); self.module.dim()];
        for (c, v) in x.iter().zip(&self.values) {
            if !f.is_zero(c) {
                out = add(f, &out, &v.iter().map(|y| f.mul(c, y)).collect::<Vec<_>>());
            }
        }
        out
    }
}

fn add<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationWitness {
    /// Normalized modulo the centralizer Z_M(R) = {z : xz = zx}.
    pub w: Vec<FieldElement>,
    /// c = [t v; 0 t] found in the triangular algebra, with t = λ·1.
    pub lambda: FieldElement,
    pub v: Vec<FieldElement>,
    pub trials: u32,
    /// Basis of Z_M(R) in reduced echelon form.
    pub centralizer: Vec<Vec<FieldElement>>,
}

/// Builds Ã = [R M; 0 R], conjugates ι(x) = [x 0; 0 x] to φ(x) = [x d(x); 0 x]
/// by c = [t v; 0 t], and returns w = t⁻¹v reduced modulo Z_M(R).
pub fn inner_derivation_witness(d: &DerivationSpec, seed: u64, trials: u32) -> Result<DerivationWitness, Error> {
    let r = d.algebra();
    CentralSimple::new(Arc::new(r.clone()))?;
    let f = r.field();
    let dr = r.dim();
    let tri = d.module.triangular_extension()?;
    let iota: Vec<Vec<FieldElement>> = (0..dr).map(|k| tri.basis(k)).collect();
    let phi: Vec<Vec<FieldElement>> = (0..dr)
        .map(|k| {
            let mut v = tri.basis(k);
            v[dr..].clone_from_slice(&d.values[k]);
            v
        })
        .collect();
    let (c, trials) = match find_conjugator(&tri, &iota, &phi, seed, trials).map_err(Error::Unsupported)? {
        SearchOutcome::Found { c, trials, .. } => (c, trials),
        SearchOutcome::Empty | SearchOutcome::Exhausted => {
            return Err(Error::Inconsistent("no invertible intertwiner in the triangular algebra".into()))
        }
    };
    let (t, v) = c.split_at(dr);
    let unit = r.unit();
    let l = unit.iter().position(|x| !f.is_zero(x)).expect("unit is nonzero");
    let lambda = f.div(&t[l], &unit[l]).expect("nonzero unit coordinate");
    if r.scale(&lambda, unit) != t {
        return Err(Error::Inconsistent("the diagonal part of c is not a scalar".into()));
    }
    let lambda_inv = f.inverse(&lambda).ok_or_else(|| Error::Inconsistent("c has zero diagonal".into()))?;
    let raw: Vec<FieldElement> = v.iter().map(|x| f.mul(&lambda_inv, x)).collect();

    let centralizer = module_centralizer(&d.module);
    let w = reduce(f, &raw, &centralizer);
    verify_derivation_witness(d, &w)?;
    Ok(DerivationWitness { w, lambda, v: v.to_vec(), trials, centralizer })
}

/// Checks d(r_k) = w·r_k − r_k·w for every basis element.
pub fn verify_derivation_witness(d: &DerivationSpec, w: &[FieldElement]) -> Result<Vec<String>, Error> {
    let r = d.algebra();
    let f = r.field();
    if w.len() != d.module.dim() {
        return Err(Error::Verification(format!("w must have {} coordinates", d.module.dim())));
    }
    for k in 0..r.dim() {
        let bk = r.basis(k);
        let wx = d.module.act_right(w, &bk);
        let xw = d.module.act_left(&bk, w);
        let diff: Vec<FieldElement> = wx.iter().zip(&xw).map(|(a, b)| f.sub(a, b)).collect();
        if diff != d.values[k] {
            return Err(Error::Verification(format!("d({}) ≠ w·{0} − {0}·w", r.labels()[k])));
        }
    }
    Ok(vec![format!("d(r_k) = w·r_k − r_k·w for {} basis elements", r.dim())])
}

/// Convenience wrapper with the default trial bound.
pub fn derivation_witness(d: &DerivationSpec, seed: u64) -> Result<DerivationWitness, Error> {
    inner_derivation_witness(d, seed, DEFAULT_TRIALS)
}

/// RREF basis of {z ∈ M : b_k z = z b_k for all k}.
pub fn module_centralizer(m: &Bimodule) -> Vec<Vec<FieldElement>> {
    let r = m.algebra();
    let f = r.field();
    let mut rows = Vec::new();
    for k in 0..r.dim() {
        let bk = r.basis(k);
        let l = m.left_matrix(&bk);
        let rt = m.right_matrix(&bk);
        for (lrow, rrow) in l.iter().zip(&rt) {
            rows.push(lrow.iter().zip(rrow).map(|(a, b)| f.sub(a, b)).collect::<Vec<_>>());
        }
    }
    let mut basis = linalg::kernel(&f, &rows, m.dim());
    if basis.is_empty() {
        return basis;
    }
    let pivots = linalg::rref(&f, &mut basis, Pivoting::FirstNonzero);
    basis.truncate(pivots.len());
    basis
}

/// Clears the pivot coordinates of `w` using an RREF basis.
fn reduce<F: Field>(f: F, w: &[F::Elem], basis: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let mut out = w.to_vec();
    for z in basis {
        let p = z.iter().position(|x| !f.is_zero(x)).expect("nonzero basis row");
        let c = out[p].clone();
        if !f.is_zero(&c) {
            out = out.iter().zip(z).map(|(a, b)| f.sub(a, &f.mul(&c, b))).collect();
        }
    }
    out
}
