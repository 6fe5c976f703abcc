//! Problem payloads to core objects.

use std::sync::Arc;

use serde_json::Value;
use snforge_core::algebras::{Bimodule, StructAlgebra, TensorElement, TensorRing};
use snforge_core::applications::{AutSpec, DerivationSpec};
use snforge_core::backends::curve_conjugation;
use snforge_core::ground_rings::{BaseField, RingDescriptor};
use snforge_core::sn_core::{validate_hom, HomSpec};

use crate::error::CliError;
use crate::files::{AutPayload, DerivationPayload, FlipPayload, HomPayload, ProblemFile};
use crate::format::{element, matrices, parse_field, scalars, tensor, tensors};

pub struct LoadedHom {
    pub field: BaseField,
    pub ring: TensorRing,
    pub hom: HomSpec,
    pub presentation: Option<TensorElement>,
}

pub fn field(p: &ProblemFile) -> Result<BaseField, CliError> {
    parse_field(&p.field, "field")
}

fn tensor_ring(r: StructAlgebra, s: RingDescriptor, path: &str) -> Result<TensorRing, CliError> {
    TensorRing::new(Arc::new(r), s).map_err(|e| CliError::core(path, e))
}

pub fn load_hom(p: &ProblemFile) -> Result<LoadedHom, CliError> {
    let f = field(p)?;
    let payload: HomPayload = p.payload()?;
    let s = payload.s.build(f, "problem.s")?;
    let r = payload.r.build(f, "problem.r")?;
    let ring = tensor_ring(r, s, "problem")?;
    let mut presentation = match &payload.presentation {
        Some(v) => Some(tensor(&ring, v, "problem.presentation")?),
        None => None,
    };
    let hom = match (&payload.images, &payload.conjugate_by) {
        (Some(images), None) => {
            let images = tensors(&ring, &Value::Array(images.clone()), Some(ring.dim()), "problem.images")?;
            validate_hom(ring.clone(), images).map_err(|v| CliError::input("problem.images", v))?
        }
        (None, Some(a)) => {
            let path = "problem.conjugate_by";
            let a = tensor(&ring, a, path)?;
            if let RingDescriptor::Curve(_) = ring.s() {
                let hom = curve_conjugation(ring.clone(), &a).map_err(|e| CliError::core(path, e))?;
                presentation.get_or_insert(a);
                hom
            } else {
                let a_inv = ring
                    .invert(&a)
                    .map_err(|e| CliError::input(path, format!("{e}; give `images` and a `presentation` instead")))?;
                HomSpec::conjugation(ring.clone(), &a, &a_inv).map_err(|e| CliError::core(path, e))?
            }
        }
        _ => return Err(CliError::input("problem", "give exactly one of `images` and `conjugate_by`")),
    };
    Ok(LoadedHom { field: f, ring, hom, presentation })
}

pub fn load_aut(p: &ProblemFile) -> Result<AutSpec, CliError> {
    let f = field(p)?;
    let payload: AutPayload = p.payload()?;
    let s = payload.s.build(f, "problem.s")?;
    let r = StructAlgebra::matrix_algebra(f, payload.n).map_err(|e| CliError::input("problem.n", e))?;
    let ring = tensor_ring(r, s, "problem")?;
    let images = |v: &[Value], path: &str| tensors(&ring, &Value::Array(v.to_vec()), None, path);
    match (&payload.unit_images, &payload.generator_images, &payload.conjugate_by, &payload.sigma) {
        (Some(units), Some(gens), None, None) => {
            let inverse = match &payload.inverse {
                Some(inv) => Some(
                    AutSpec::new(
                        ring.clone(),
                        images(&inv.unit_images, "problem.inverse.unit_images")?,
                        images(&inv.generator_images, "problem.inverse.generator_images")?,
                        None,
                    )
                    .map_err(|e| CliError::core("problem.inverse", e))?,
                ),
                None => None,
            };
            let units = images(units, "problem.unit_images")?;
            let gens = images(gens, "problem.generator_images")?;
            AutSpec::new(ring.clone(), units, gens, inverse).map_err(|e| CliError::core("problem", e))
        }
        (None, None, Some(c), Some(sigma)) if payload.inverse.is_none() => {
            let c = tensor(&ring, c, "problem.conjugate_by")?;
            let sigma: Result<Vec<_>, _> = sigma
                .iter()
                .enumerate()
                .map(|(i, v)| element(ring.s(), v, &format!("problem.sigma[{i}]")))
                .collect();
            AutSpec::from_parts(ring.clone(), &c, &sigma?).map_err(|e| CliError::core("problem", e))
        }
        _ => Err(CliError::input(
            "problem",
            "give either `unit_images` and `generator_images` (with an optional `inverse`), or `conjugate_by` and `sigma`",
        )),
    }
}

pub fn load_derivation(p: &ProblemFile) -> Result<DerivationSpec, CliError> {
    let f = field(p)?;
    let payload: DerivationPayload = p.payload()?;
    let r = Arc::new(payload.r.build(f, "problem.r")?);
    let module = match &payload.bimodule {
        Some(b) => {
            let path = "problem.bimodule";
            let to_value = |m: &Vec<Vec<Vec<String>>>| serde_json::to_value(m).expect("strings serialize");
            let left = matrices(f, &to_value(&b.left), b.dim, &format!("{path}.left"))?;
            let right = matrices(f, &to_value(&b.right), b.dim, &format!("{path}.right"))?;
            Bimodule::new(r.clone(), b.dim, left, right).map_err(|e| CliError::input(path, e))?
        }
        None => Bimodule::regular(r.clone()),
    };
    match (&payload.values, &payload.inner_by) {
        (Some(values), None) => {
            let v = serde_json::to_value(values).expect("strings serialize");
            let rows: Result<Vec<_>, _> = v
                .as_array()
                .expect("array")
                .iter()
                .enumerate()
                .map(|(k, row)| scalars(f, row, Some(module.dim()), &format!("problem.values[{k}]")))
                .collect();
            DerivationSpec::new(module, rows?).map_err(|e| CliError::core("problem.values", e))
        }
        (None, Some(m)) if payload.bimodule.is_none() => {
            let v = serde_json::to_value(m).expect("strings serialize");
            let m = scalars(f, &v, Some(r.dim()), "problem.inner_by")?;
            DerivationSpec::inner(r, &m).map_err(|e| CliError::core("problem.inner_by", e))
        }
        _ => Err(CliError::input(
            "problem",
            "give exactly one of `values` and `inner_by`; `inner_by` applies to the regular bimodule only",
        )),
    }
}

pub fn load_flip(p: &ProblemFile) -> Result<StructAlgebra, CliError> {
    let f = field(p)?;
    let payload: FlipPayload = p.payload()?;
    payload.r.build(f, "problem.r")
}
