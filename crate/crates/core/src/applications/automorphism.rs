//! ψ ∈ Aut(M_n(S)) as Inn(c)∘(id⊗σ) with σ ∈ Aut(S).

use crate::algebras::{StructAlgebra, TensorElement, TensorRing};
use crate::backends::{dispatch, Certificate, SolveRequest, Status};
use crate::error::Error;
use crate::ground_rings::{poly_var_names, FieldElement, Ring, RingDescriptor, RingElement};
use crate::linalg::{self, Pivoting};
use crate::sn_core::validate_hom;

/// Ring generators of S, with labels. σ is determined by their images.
pub fn generators(s: &RingDescriptor) -> Result<Vec<(String, RingElement)>, Error> {
    match s {
        RingDescriptor::Field(_) => Ok(Vec::new()),
        RingDescriptor::Poly(p) => Ok(poly_var_names(p.nvars)
            .into_iter()
            .enumerate()
            .map(|(v, name)| (name, RingElement::Poly(p.var(v))))
            .collect()),
        RingDescriptor::FinDim(a) => {
            Ok(a.labels().iter().enumerate().map(|(i, l)| (l.clone(), RingElement::Alg(a.basis(i)))).collect())
        }
        RingDescriptor::Series { base, order } if matches!(base.as_ref(), RingDescriptor::Field(_)) && *order > 1 => {
            let f = s.field();
            let mut v = vec![RingElement::Scalar(f.zero()); *order];
            v[1] = RingElement::Scalar(f.one());
            Ok(vec![("ξ".into(), RingElement::Series(v))])
        }
        _ => Err(Error::Unsupported(format!("automorphisms of the {} family are not supported", s.family()))),
    }
}

/// σ(x) for σ given on the generators of S.
pub fn apply_sigma(s: &RingDescriptor, sigma: &[RingElement], x: &RingElement) -> RingElement {
    match (s, x) {
        (RingDescriptor::Field(_), _) => x.clone(),
        (RingDescriptor::Poly(p), RingElement::Poly(q)) => p.eval_in(q, s, |c| s.from_field(c), sigma),
        (RingDescriptor::FinDim(_), RingElement::Alg(v)) => {
            s.sum(v.iter().zip(sigma).map(|(c, g)| s.scale(c, g)).collect::<Vec<_>>().iter())
        }
        (RingDescriptor::Series { .. }, RingElement::Series(v)) => {
            // Horner in σ(ξ)
            v.iter().rev().fold(s.zero(), |acc, c| s.add(&s.mul(&acc, &sigma[0]), &s.series_constant(c)))
        }
        _ => unreachable!("generators() rejects other families"),
    }
}

fn apply_sigma_tensor(ring: &TensorRing, sigma: &[RingElement], u: &TensorElement) -> TensorElement {
    TensorElement { coords: u.coords.iter().map(|x| apply_sigma(ring.s(), sigma, x)).collect() }
}

/// Whether generator images define a unital ring endomorphism of S.
fn sigma_is_homomorphism(s: &RingDescriptor, sigma: &[RingElement]) -> Result<(), String> {
    if sigma.iter().any(|x| !s.contains(x)) {
        return Err("a generator image is not an element of S".into());
    }
    match s {
        RingDescriptor::FinDim(a) => {
            if apply_sigma(s, sigma, &RingElement::Alg(a.unit().clone())) != s.one() {
                return Err("σ(1) ≠ 1".into());
            }
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let lhs = s.mul(&sigma[i], &sigma[j]);
                    let rhs = apply_sigma(s, sigma, &RingElement::Alg(a.basis_product(i, j)));
                    if lhs != rhs {
                        return Err(format!("σ is not multiplicative on ({}, {})", a.labels()[i], a.labels()[j]));
                    }
                }
            }
            Ok(())
        }
        RingDescriptor::Series { base, .. } => {
            let c0 = &s.series_coeffs(&sigma[0])[0];
            if base.is_zero(c0) {
                Ok(())
            } else {
                Err("σ(ξ) must have zero constant term".into())
            }
        }
        // polynomial rings are free commutative: every assignment extends
        _ => Ok(()),
    }
}

/// σ⁻¹ on generators when it can be computed directly: linear maps of
/// finite-dimensional S, affine substitutions of polynomial rings, and
/// series substitutions ξ ↦ a₁ξ + … with a₁ ≠ 0.
pub fn invert_sigma(s: &RingDescriptor, sigma: &[RingElement]) -> Result<Vec<RingElement>, Error> {
    let f = s.field();
    let not_invertible = || Error::InvalidHom("σ is not invertible".into());
    match s {
        RingDescriptor::Field(_) => Ok(Vec::new()),
        RingDescriptor::FinDim(a) => {
            let cols: Vec<Vec<FieldElement>> = sigma.iter().map(|x| s.to_flat(x)).collect();
            let inv =
                linalg::inverse(&f, &linalg::transpose(&cols), Pivoting::FirstNonzero).ok_or_else(not_invertible)?;
            Ok((0..a.dim()).map(|j| s.from_flat(&inv.iter().map(|row| row[j].clone()).collect::<Vec<_>>())).collect())
        }
        RingDescriptor::Poly(p) => {
            let n = p.nvars;
            // σ(ξ) = L ξ + b
            let mut lin = vec![vec![f.zero(); n]; n];
            let mut shift = vec![f.zero(); n];
            for (v, img) in sigma.iter().enumerate() {
                let RingElement::Poly(q) = img else { unreachable!("polynomial images") };
                for (m, c) in q.terms() {
                    match m.degree() {
                        0 => shift[v] = c.clone(),
                        1 => lin[v][m.0.iter().position(|&e| e == 1).expect("degree one")] = c.clone(),
                        _ => {
                            return Err(Error::Unsupported(
                                "σ is not affine; supply the inverse automorphism explicitly".into(),
                            ))
                        }
                    }
                }
            }
            let inv = linalg::inverse(&f, &lin, Pivoting::FirstNonzero).ok_or_else(not_invertible)?;
            // σ⁻¹(ξ) = L⁻¹(ξ − b)
            Ok((0..n)
                .map(|v| {
                    let mut acc = p.zero();
                    for w in 0..n {
                        let term = p.sub(&p.var(w), &p.constant(shift[w].clone()));
                        acc = p.add(&acc, &p.scale(&inv[v][w], &term));
                    }
                    RingElement::Poly(acc)
                })
                .collect())
        }
        RingDescriptor::Series { order, .. } => {
            let a1 = s.series_coeffs(&sigma[0])[1].clone();
            let RingElement::Scalar(a1) = a1 else { unreachable!("series over a field") };
            let a1_inv = f.inverse(&a1).ok_or_else(not_invertible)?;
            let tau = generators(s)?.remove(0).1;
            // Newton-free fixed point: ρ ← ρ − (σ(ρ) − ξ)/a₁ gains one order per step
            let mut rho = s.scale(&a1_inv, &tau);
            for _ in 0..*order {
                let err = s.sub(&apply_sigma(s, &[rho.clone()], &sigma[0]), &tau);
                rho = s.sub(&rho, &s.scale(&a1_inv, &err));
            }
            Ok(vec![rho])
        }
        _ => Err(Error::Unsupported(format!("automorphisms of the {} family are not supported", s.family()))),
    }
}

/// ψ on M_n(S) = M_n(F)⊗S, given on the matrix units and on the generators
/// of S.
#[derive(Clone, Debug)]
pub struct AutSpec {
    pub ring: TensorRing,
    /// ψ(e_ij⊗1) in the basis order of M_n(F).
    pub unit_images: Vec<TensorElement>,
    /// ψ(1⊗s_g) in the order of [`generators`].
    pub generator_images: Vec<TensorElement>,
    pub inverse: Option<Box<AutSpec>>,
}

impl AutSpec {
    /// Validates ψ on generators: the restriction to M_n(F) is a unital
    /// homomorphism, generator images commute with it, and the defining
    /// relations of S hold among generator images.
    pub fn new(
        ring: TensorRing,
        unit_images: Vec<TensorElement>,
        generator_images: Vec<TensorElement>,
        inverse: Option<AutSpec>,
    ) -> Result<Self, Error> {
        let n = (ring.dim() as f64).sqrt().round() as usize;
        if n * n != ring.dim() || *ring.r() != StructAlgebra::matrix_algebra(ring.r().field(), n)? {
            return Err(Error::InvalidHom("ψ must act on M_n(S) with R = M_n(F) in the matrix-unit basis".into()));
        }
        let gens = generators(ring.s())?;
        if generator_images.len() != gens.len() {
            return Err(Error::InvalidHom(format!(
                "expected {} generator images, got {}",
                gens.len(),
                generator_images.len()
            )));
        }
        if generator_images.iter().any(|g| !ring.contains(g)) {
            return Err(Error::InvalidHom("a generator image is not an element of M_n(S)".into()));
        }
        validate_hom(ring.clone(), unit_images.clone())?;
        for (g, img) in gens.iter().zip(&generator_images) {
            for (k, e) in unit_images.iter().enumerate() {
                if ring.mul(img, e) != ring.mul(e, img) {
                    return Err(Error::InvalidHom(format!(
                        "ψ(1⊗{}) does not commute with ψ({})",
                        g.0,
                        ring.r().labels()[k]
                    )));
                }
            }
        }
        check_relations(&ring, &gens, &generator_images)?;
        Ok(AutSpec { ring, unit_images, generator_images, inverse: inverse.map(Box::new) })
    }

    /// ψ = Inn(c)∘(id⊗σ). The inverse spec Inn((id⊗σ⁻¹)(c⁻¹))∘(id⊗σ⁻¹) is
    /// attached when σ⁻¹ can be computed.
    pub fn from_parts(ring: TensorRing, c: &TensorElement, sigma: &[RingElement]) -> Result<Self, Error> {
        let forward = Self::compose(&ring, c, sigma)?;
        let inverse = match invert_sigma(ring.s(), sigma) {
            Ok(sigma_inv) => {
                let c_inv = ring.invert(c)?;
                Some(Self::compose(&ring, &apply_sigma_tensor(&ring, &sigma_inv, &c_inv), &sigma_inv)?)
            }
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(AutSpec { inverse: inverse.map(Box::new), ..forward })
    }

    fn compose(ring: &TensorRing, c: &TensorElement, sigma: &[RingElement]) -> Result<Self, Error> {
        let c_inv = ring.invert(c)?;
        let conj = |x: &TensorElement| ring.mul(&ring.mul(c, x), &c_inv);
        let unit_images = (0..ring.dim()).map(|k| conj(&ring.basis(k))).collect();
        let generator_images = sigma.iter().map(|g| conj(&ring.embed_s(g))).collect();
        Self::new(ring.clone(), unit_images, generator_images, None)
    }
}

fn check_relations(ring: &TensorRing, gens: &[(String, RingElement)], images: &[TensorElement]) -> Result<(), Error> {
    let s = ring.s();
    let bad = |what: String| Err(Error::InvalidHom(what));
    match s {
        RingDescriptor::Poly(_) => {
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    if ring.mul(&images[i], &images[j]) != ring.mul(&images[j], &images[i]) {
                        return bad(format!("ψ(1⊗{}) and ψ(1⊗{}) do not commute", gens[i].0, gens[j].0));
                    }
                }
            }
        }
        RingDescriptor::FinDim(a) => {
            let lin = |v: &[FieldElement]| {
                ring.sum(v.iter().zip(images).map(|(c, x)| ring.scale(c, x)).collect::<Vec<_>>().iter())
            };
            if lin(a.unit()) != ring.one() {
                return bad("ψ(1⊗1) ≠ 1".into());
            }
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    if ring.mul(&images[i], &images[j]) != lin(&a.basis_product(i, j)) {
                        return bad(format!("ψ is not multiplicative on 1⊗{}, 1⊗{}", gens[i].0, gens[j].0));
                    }
                }
            }
        }
        RingDescriptor::Series { order, .. } => {
            if !ring.is_zero(&ring.pow(&images[0], *order as u32)) {
                return bad(format!("ψ(1⊗ξ)^{order} ≠ 0"));
            }
        }
        _ => {}
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub certificate: Certificate,
    pub c: TensorElement,
    pub c_inv: TensorElement,
    pub labels: Vec<String>,
    /// σ(s_g) on generators.
    pub sigma: Vec<RingElement>,
    /// σ⁻¹ on generators, from the inverse spec or computed directly.
    pub sigma_inverse: Vec<RingElement>,
    pub inverse_supplied: bool,
}

/// Solves for c on M_n(F)⊗1, reads σ off c⁻¹ψ(1⊗s_g)c, and checks that σ is
/// an automorphism and that Inn(c)∘(id⊗σ) reproduces ψ on all generators.
pub fn decompose_automorphism(psi: &AutSpec, seed: u64, trials: u32) -> Result<Decomposition, Error> {
    let (certificate, c, c_inv, sigma) = split(psi, seed, trials)?;
    let ring = &psi.ring;
    let s = ring.s();
    let gens = generators(s)?;

    let (sigma_inverse, inverse_supplied) = match &psi.inverse {
        Some(inv) => (split(inv, seed, trials)?.3, true),
        None => (invert_sigma(s, &sigma)?, false),
    };
    verify_decomposition(psi, &c, &c_inv, &sigma, &sigma_inverse)?;
    Ok(Decomposition {
        certificate,
        c,
        c_inv,
        labels: gens.into_iter().map(|(l, _)| l).collect(),
        sigma,
        sigma_inverse,
        inverse_supplied,
    })
}

/// Rechecks a decomposition from its parts: c·c⁻¹ = c⁻¹·c = 1, σ is a
/// homomorphism with two-sided inverse σ′ on generators, and Inn(c)∘(id⊗σ)
/// equals ψ on every matrix unit and generator.
pub fn verify_decomposition(
    psi: &AutSpec,
    c: &TensorElement,
    c_inv: &TensorElement,
    sigma: &[RingElement],
    sigma_inverse: &[RingElement],
) -> Result<Vec<String>, Error> {
    let ring = &psi.ring;
    let s = ring.s();
    let gens = generators(s)?;
    if sigma.len() != gens.len() || sigma_inverse.len() != gens.len() {
        return Err(Error::Verification(format!("σ and σ′ must have {} generator images", gens.len())));
    }
    if !ring.contains(c) || !ring.contains(c_inv) {
        return Err(Error::Verification("c or c⁻¹ is not an element of M_n(S)".into()));
    }
    let mut log = Vec::new();
    if ring.mul(c, c_inv) != ring.one() || ring.mul(c_inv, c) != ring.one() {
        return Err(Error::Verification("c·c⁻¹ = c⁻¹·c = 1 fails".into()));
    }
    log.push("c·c⁻¹ = c⁻¹·c = 1".to_string());
    sigma_is_homomorphism(s, sigma).map_err(Error::Verification)?;
    sigma_is_homomorphism(s, sigma_inverse).map_err(|e| Error::Verification(format!("σ′: {e}")))?;
    for (name, g) in &gens {
        if apply_sigma(s, sigma, &apply_sigma(s, sigma_inverse, g)) != *g {
            return Err(Error::Verification(format!("σ∘σ′ ≠ id on {name}")));
        }
        if apply_sigma(s, sigma_inverse, &apply_sigma(s, sigma, g)) != *g {
            return Err(Error::Verification(format!("σ′∘σ ≠ id on {name}")));
        }
    }
    log.push(format!("σ∘σ′ = σ′∘σ = id on {} generators", gens.len()));

    // reassemble Inn(c)∘(id⊗σ)
    let conj = |x: &TensorElement| ring.mul(&ring.mul(c, x), c_inv);
    for (k, img) in psi.unit_images.iter().enumerate() {
        if conj(&ring.basis(k)) != *img {
            return Err(Error::Verification(format!("reassembly differs on {}", ring.r().labels()[k])));
        }
    }
    for ((name, _), (sg, img)) in gens.iter().zip(sigma.iter().zip(&psi.generator_images)) {
        if conj(&ring.embed_s(sg)) != *img {
            return Err(Error::Verification(format!("reassembly differs on 1⊗{name}")));
        }
    }
    log.push(format!("Inn(c)∘(id⊗σ) = ψ on {} matrix units and {} generators", psi.unit_images.len(), gens.len()));
    Ok(log)
}

type Split = (Certificate, TensorElement, TensorElement, Vec<RingElement>);

fn split(psi: &AutSpec, seed: u64, trials: u32) -> Result<Split, Error> {
    let ring = &psi.ring;
    let hom = validate_hom(ring.clone(), psi.unit_images.clone())?;
    let mut req = SolveRequest::new(hom, seed);
    req.trials = trials;
    let cert = dispatch(&req)?;
    if cert.status != Status::Inner {
        return Err(Error::Unsupported(format!(
            "the restriction to M_n(F) could not be solved: {}",
            cert.reason.as_deref().unwrap_or(cert.status.name())
        )));
    }
    let (c, c_inv) = (cert.c().expect("inner").clone(), cert.c_inv().expect("inner").clone());
    let gens = generators(ring.s())?;
    let mut sigma = Vec::with_capacity(gens.len());
    for ((name, _), img) in gens.iter().zip(&psi.generator_images) {
        let t = ring.mul(&ring.mul(&c_inv, img), &c);
        let sg = ring.unit_support(&t).ok_or_else(|| {
            Error::Verification(format!("c⁻¹ψ(1⊗{name})c is not in 1⊗S; ψ is not an automorphism of the stated form"))
        })?;
        sigma.push(sg);
    }
    sigma_is_homomorphism(ring.s(), &sigma).map_err(Error::Verification)?;
    Ok((cert, c, c_inv, sigma))
}
