//! Finite-dimensional coefficient rings: intertwiner space plus a seeded
//! random search for an invertible element of it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Backend, Certificate, SolveRequest};
use crate::algebras::StructAlgebra;
use crate::error::Error;
use crate::ground_rings::{BaseField, Field, FieldElement, RatFuncField, Ring};
use crate::linalg::{self, Matrix};
use crate::sn_core::verify_conjugator;

/// A field K containing the base field F.
pub trait Extension: Field {
    fn embed(&self, c: &FieldElement) -> Self::Elem;
}

impl Extension for BaseField {
    fn embed(&self, c: &FieldElement) -> FieldElement {
        c.clone()
    }
}

impl Extension for RatFuncField {
    fn embed(&self, c: &FieldElement) -> Self::Elem {
        self.from_scalar(c)
    }
}

/// A⊗_F K for an F-algebra A given by structure constants.
pub struct Extended<'a, K: Extension> {
    pub alg: &'a StructAlgebra,
    pub k: K,
}

impl<'a, K: Extension> Extended<'a, K> {
    pub fn new(alg: &'a StructAlgebra, k: K) -> Self {
        Extended { alg, k }
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn lift(&self, x: &[FieldElement]) -> Vec<K::Elem> {
        x.iter().map(|c| self.k.embed(c)).collect()
    }

    pub fn one(&self) -> Vec<K::Elem> {
        self.lift(self.alg.unit())
    }

    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.k;
        let mut out = vec![k.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if k.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let terms = self.alg.product_terms(i, j);
                if terms.is_empty() || k.is_zero(yj) {
                    continue;
                }
                let p = k.mul(xi, yj);
                for (m, g) in terms {
                    out[*m] = k.add(&out[*m], &k.mul(&k.embed(g), &p));
                }
            }
        }
        out
    }

    fn basis(&self, idx: usize) -> Vec<K::Elem> {
        let mut v = vec![self.k.zero(); self.dim()];
        v[idx] = self.k.one();
        v
    }

    /// Basis of {c : φ_k c = c ι_k for all k}.
    pub fn intertwiners(&self, iota: &[Vec<K::Elem>], phi: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
        let n = self.dim();
        let k = &self.k;
        let mut rows: Matrix<K::Elem> = Vec::new();
        for (ik, pk) in iota.iter().zip(phi) {
            let cols: Vec<Vec<K::Elem>> = (0..n)
                .map(|idx| {
                    let e = self.basis(idx);
                    let l = self.mul(pk, &e);
                    let r = self.mul(&e, ik);
                    l.iter().zip(&r).map(|(a, b)| k.sub(a, b)).collect()
                })
                .collect();
            rows.extend(linalg::transpose(&cols));
        }
        linalg::kernel(k, &rows, n)
    }

    /// Two-sided inverse, if any.
    pub fn invert(&self, x: &[K::Elem]) -> Option<Vec<K::Elem>> {
        let n = self.dim();
        let cols: Vec<Vec<K::Elem>> = (0..n).map(|idx| self.mul(x, &self.basis(idx))).collect();
        let inv = linalg::solve(&self.k, &linalg::transpose(&cols), &self.one())?;
        let one = self.one();
        (self.mul(x, &inv) == one && self.mul(&inv, x) == one).then_some(inv)
    }

    /// Seeded search over F-combinations with coefficients in {−B..B}.
    pub fn search(&self, basis: &[Vec<K::Elem>], seed: u64, trials: u32, window: i64) -> SearchOutcome<K::Elem> {
        if basis.is_empty() {
            return SearchOutcome::Empty;
        }
        let f = self.alg.field();
        let k = &self.k;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials {
            let lambdas: Vec<i64> = (0..basis.len()).map(|_| rng.random_range(-window..=window)).collect();
            let mut c = vec![k.zero(); self.dim()];
            for (lam, b) in lambdas.iter().zip(basis) {
                if *lam == 0 {
                    continue;
                }
                let l = k.embed(&f.from_i64(*lam));
                for (ci, bi) in c.iter_mut().zip(b) {
                    *ci = k.add(ci, &k.mul(&l, bi));
                }
            }
            if let Some(c_inv) = self.invert(&c) {
                return SearchOutcome::Found { c, c_inv, trials: trial + 1 };
            }
        }
        SearchOutcome::Exhausted
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<E> {
    Found {
        c: Vec<E>,
        c_inv: Vec<E>,
        trials: u32,
    },
    /// The intertwiner space is zero.
    Empty,
    Exhausted,
}

/// Sample window B = 2·dim for an ambient of the given F-dimension.
pub fn sample_window(dim: usize) -> i64 {
    2 * dim as i64
}

/// Refuses prime fields too small for the density argument.
pub fn field_size_guard(field: BaseField, dim: usize) -> Result<(), String> {
    match field.size() {
        Some(p) if p <= 2 * dim as u64 => {
            Err(format!("field-size guard: |F| = {p} must exceed 2·dim = {} for randomized search", 2 * dim))
        }
        _ => Ok(()),
    }
}

/// Invertible intertwiner for homomorphisms ι, φ: R → A given on a basis.
pub fn find_conjugator(
    a: &StructAlgebra,
    iota: &[Vec<FieldElement>],
    phi: &[Vec<FieldElement>],
    seed: u64,
    trials: u32,
) -> Result<SearchOutcome<FieldElement>, String> {
    field_size_guard(a.field(), a.dim())?;
    let ext = Extended::new(a, a.field());
    let basis = ext.intertwiners(iota, phi);
    Ok(ext.search(&basis, seed, trials, sample_window(a.dim())))
}

pub fn solve_findim(req: &SolveRequest) -> Result<Certificate, Error> {
    let phi = &req.hom;
    let tr = phi.ring();
    let Ok(s_alg) = tr.s().as_struct_algebra() else {
        return Ok(Certificate::unsupported(
            Backend::FiniteDimensional,
            req.seed,
            "coefficient ring is not finite-dimensional",
        ));
    };
    let ambient = StructAlgebra::tensor_product(tr.r(), &s_alg)?;
    let iota: Vec<_> = (0..tr.dim()).map(|k| tr.to_flat(&tr.basis(k))).collect();
    let images: Vec<_> = phi.images().iter().map(|u| tr.to_flat(u)).collect();
    match find_conjugator(&ambient, &iota, &images, req.seed, req.trials) {
        Err(reason) => Ok(Certificate::unsupported(Backend::FiniteDimensional, req.seed, &reason)),
        Ok(SearchOutcome::Found { c, trials, .. }) => {
            // conjugators are defined up to central units; fix the scalar so c is monic
            let f = ambient.field();
            let c = match c.iter().find(|x| !f.is_zero(x)) {
                Some(lead) => {
                    let inv = f.inverse(lead).expect("nonzero");
                    c.iter().map(|x| f.mul(x, &inv)).collect()
                }
                None => c,
            };
            let check = verify_conjugator(phi, &tr.from_flat(&c))?;
            Ok(Certificate::inner(Backend::FiniteDimensional, req.seed, check, trials))
        }
        Ok(SearchOutcome::Empty) => {
            Ok(Certificate::exhausted(Backend::FiniteDimensional, req.seed, 0, "the intertwiner space is zero"))
        }
        Ok(SearchOutcome::Exhausted) => Ok(Certificate::exhausted(
            Backend::FiniteDimensional,
            req.seed,
            req.trials,
            "no invertible intertwiner found within the trial bound",
        )),
    }
}
