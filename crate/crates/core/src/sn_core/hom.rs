//! Homomorphisms R → R⊗S given by basis images.

use std::fmt;
use std::sync::Arc;

use super::dual::CentralSimple;
use crate::algebras::{AlgElement, StructAlgebra, TensorElement, TensorRing};
use crate::error::Error;
use crate::ground_rings::{Ring, RingDescriptor};

/// First violated homomorphism law found by [`validate_hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    WrongCount { expected: usize, got: usize },
    NotInRing { index: usize },
    Unit { image: TensorElement },
    Product { i: usize, j: usize, lhs: TensorElement, rhs: TensorElement },
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::WrongCount { expected, got } => {
                write!(f, "expected {expected} images, got {got}")
            }
            HomViolation::NotInRing { index } => {
                write!(f, "image {index} is not an element of R⊗S")
            }
            HomViolation::Unit { .. } => write!(f, "the unit is not mapped to 1"),
            HomViolation::Product { i, j, .. } => {
                write!(f, "multiplicativity fails on the basis pair ({i}, {j})")
            }
        }
    }
}

impl From<HomViolation> for Error {
    fn from(v: HomViolation) -> Self {
        Error::InvalidHom(v.to_string())
    }
}

/// A validated unital homomorphism φ: R → R⊗S.
#[derive(Clone, Debug)]
pub struct HomSpec {
    ring: TensorRing,
    images: Vec<TensorElement>,
    central_simple: Option<Arc<CentralSimple>>,
}

/// Checks φ(1) = 1 and φ(r_i)φ(r_j) = φ(r_i r_j) on all basis pairs.
pub fn validate_hom(ring: TensorRing, images: Vec<TensorElement>) -> Result<HomSpec, HomViolation> {
    let cs = CentralSimple::new(ring.r_arc().clone()).ok().map(Arc::new);
    validate_hom_with(ring, images, cs)
}

/// Like [`validate_hom`], reusing an already computed central-simple context.
pub fn validate_hom_with(
    ring: TensorRing,
    images: Vec<TensorElement>,
    central_simple: Option<Arc<CentralSimple>>,
) -> Result<HomSpec, HomViolation> {
    let r = ring.r();
    let d = r.dim();
    if images.len() != d {
        return Err(HomViolation::WrongCount { expected: d, got: images.len() });
    }
    if let Some(index) = images.iter().position(|u| !ring.contains(u)) {
        return Err(HomViolation::NotInRing { index });
    }
    let apply = |x: &AlgElement| linear_image(&ring, &images, x);
    let unit_image = apply(r.unit());
    if unit_image != ring.one() {
        return Err(HomViolation::Unit { image: unit_image });
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = ring.mul(&images[i], &images[j]);
            let rhs = apply(&r.basis_product(i, j));
            if lhs != rhs {
                return Err(HomViolation::Product { i, j, lhs, rhs });
            }
        }
    }
    if let Some(cs) = &central_simple {
        debug_assert_eq!(cs.algebra(), r);
    }
    Ok(HomSpec { ring, images, central_simple })
}

fn linear_image(ring: &TensorRing, images: &[TensorElement], x: &AlgElement) -> TensorElement {
    let f = ring.r().field();
    x.iter()
        .zip(images)
        .filter(|(c, _)| !f.is_zero(c))
        .fold(ring.zero(), |acc, (c, img)| ring.add(&acc, &ring.scale(c, img)))
}

impl HomSpec {
    pub fn ring(&self) -> &TensorRing {
        &self.ring
    }

    pub fn r(&self) -> &StructAlgebra {
        self.ring.r()
    }

    pub fn s(&self) -> &RingDescriptor {
        self.ring.s()
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    pub fn central_simple(&self) -> Option<&Arc<CentralSimple>> {
        self.central_simple.as_ref()
    }

    pub fn require_central_simple(&self) -> Result<&CentralSimple, Error> {
        self.central_simple.as_deref().ok_or(Error::NotCentralSimple)
    }

    /// φ(x) for an arbitrary element x of R.
    pub fn apply(&self, x: &AlgElement) -> TensorElement {
        linear_image(&self.ring, &self.images, x)
    }

    /// The identity x ↦ x⊗1.
    pub fn identity(ring: TensorRing) -> Result<HomSpec, Error> {
        let images = (0..ring.dim()).map(|k| ring.basis(k)).collect();
        Ok(validate_hom(ring, images)?)
    }

    /// x ↦ a x a⁻¹; `a_inv` must be the two-sided inverse of a.
    pub fn conjugation(ring: TensorRing, a: &TensorElement, a_inv: &TensorElement) -> Result<HomSpec, Error> {
        let images = (0..ring.dim()).map(|k| ring.mul(&ring.mul(a, &ring.basis(k)), a_inv)).collect();
        Ok(validate_hom(ring, images)?)
    }

    /// Same R, images transformed coordinate-wise into another ring.
    pub fn map_images(&self, ring: TensorRing, f: impl Fn(&TensorElement) -> TensorElement) -> Result<HomSpec, Error> {
        let images = self.images.iter().map(f).collect();
        Ok(validate_hom_with(ring, images, self.central_simple.clone())?)
    }

    /// x ↦ a⁻¹ φ(x) a.
    pub fn conjugate_back(&self, a: &TensorElement, a_inv: &TensorElement) -> Result<HomSpec, Error> {
        let ring = self.ring.clone();
        self.map_images(self.ring.clone(), |img| ring.mul(&ring.mul(a_inv, img), a))
    }

    /// Projection onto one factor of S = S₁ × S₂.
    pub fn project(&self, factor: usize) -> Result<HomSpec, Error> {
        let RingDescriptor::Product(a, b) = self.s() else {
            return Err(Error::Mismatch("coefficient ring is not a product".into()));
        };
        let s = if factor == 0 { (**a).clone() } else { (**b).clone() };
        let ring = self.ring.clone();
        self.map_images(self.ring.with_coefficients(s), |img| ring.project(img, factor))
    }

    /// Constant term φ₀ of a series-valued homomorphism.
    pub fn constant_term(&self) -> Result<HomSpec, Error> {
        let RingDescriptor::Series { base, .. } = self.s() else {
            return Err(Error::Mismatch("coefficient ring is not a series ring".into()));
        };
        let ring = self.ring.clone();
        self.map_images(self.ring.with_coefficients((**base).clone()), |img| ring.series_parts(img).swap_remove(0))
    }

    /// Whether φ(r_k)·c = c·(r_k⊗1) for every k; the first failing index
    /// otherwise.
    pub fn intertwines(&self, c: &TensorElement) -> Result<(), usize> {
        let ring = &self.ring;
        for (k, img) in self.images.iter().enumerate() {
            if ring.mul(img, c) != ring.mul(c, &ring.basis(k)) {
                return Err(k);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground_rings::BaseField;

    fn m2_over_q() -> TensorRing {
        let q = BaseField::Rationals;
        TensorRing::new(Arc::new(StructAlgebra::matrix_algebra(q, 2).unwrap()), RingDescriptor::Field(q)).unwrap()
    }

    #[test]
    fn identity_is_valid() {
        assert!(HomSpec::identity(m2_over_q()).is_ok());
    }

    #[test]
    fn perturbed_image_names_the_pair() {
        let t = m2_over_q();
        let mut images: Vec<_> = (0..4).map(|k| t.basis(k)).collect();
        images[1] = t.add(&images[1], &t.basis(0));
        match validate_hom(t, images) {
            // row-major scan: e12·e11 = 0 but the perturbed image gives e11
            Err(HomViolation::Product { i, j, .. }) => assert_eq!((i, j), (1, 0)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
