//! JSON forms of fields, algebras, coefficient rings and their elements.
//!
//! Element shapes depend on the ring, so elements stay `serde_json::Value`
//! in the file structs and are converted here against a descriptor.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use snforge_core::algebras::{AlgElement, StructAlgebra, TensorElement, TensorRing};
use snforge_core::backends::out_of_scope;
use snforge_core::ground_rings::{
    BaseField, CurveElement, CurveRing, FieldElement, Poly, PolyRing, RingDescriptor, RingElement, UniPoly, UniPolyRing,
};

use crate::error::CliError;

pub fn parse_field(text: &str, path: &str) -> Result<BaseField, CliError> {
    if text == "Q" {
        return Ok(BaseField::Rationals);
    }
    let p = text
        .strip_prefix("F_")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::input(path, format!("unknown field `{text}`; expected \"Q\" or \"F_p\"")))?;
    BaseField::prime(p).map_err(|e| CliError::input(path, e))
}

pub fn field_name(f: BaseField) -> String {
    match f {
        BaseField::Rationals => "Q".into(),
        BaseField::Prime(p) => format!("F_{p}"),
    }
}

pub fn scalar(f: BaseField, v: &Value, path: &str) -> Result<FieldElement, CliError> {
    let text = v.as_str().ok_or_else(|| CliError::input(path, "expected a field literal string such as \"-3/4\""))?;
    f.parse(text).map_err(|e| CliError::input(path, e))
}

pub fn scalar_json(f: BaseField, a: &FieldElement) -> Value {
    Value::String(f.literal(a))
}

pub fn scalars(f: BaseField, v: &Value, len: Option<usize>, path: &str) -> Result<Vec<FieldElement>, CliError> {
    let items = array(v, len, path)?;
    items.iter().enumerate().map(|(i, x)| scalar(f, x, &format!("{path}[{i}]"))).collect()
}

pub fn scalars_json(f: BaseField, v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|a| scalar_json(f, a)).collect())
}

fn array<'a>(v: &'a Value, len: Option<usize>, path: &str) -> Result<&'a Vec<Value>, CliError> {
    let items = v.as_array().ok_or_else(|| CliError::input(path, "expected an array"))?;
    match len {
        Some(n) if items.len() != n => {
            Err(CliError::input(path, format!("expected {n} entries, found {}", items.len())))
        }
        _ => Ok(items),
    }
}

/// Structure-constant algebras: shorthand constructors or a dense table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraJson {
    Matrix(usize),
    Quaternion([String; 2]),
    Diagonal(usize),
    Truncated(usize),
    UpperTriangular(usize),
    Tensor(Box<[AlgebraJson; 2]>),
    Product(Box<[AlgebraJson; 2]>),
    Table(TableJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    /// constants[i][j][k] = γ_ijk with b_i·b_j = Σ_k γ_ijk b_k
    pub constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraJson {
    pub fn build(&self, f: BaseField, path: &str) -> Result<StructAlgebra, CliError> {
        let err = |e| CliError::input(path, e);
        match self {
            AlgebraJson::Matrix(n) => StructAlgebra::matrix_algebra(f, *n).map_err(err),
            AlgebraJson::Quaternion([a, b]) => {
                let a = f.parse(a).map_err(|e| CliError::input(&format!("{path}.quaternion[0]"), e))?;
                let b = f.parse(b).map_err(|e| CliError::input(&format!("{path}.quaternion[1]"), e))?;
                StructAlgebra::quaternion_algebra(f, a, b).map_err(err)
            }
            AlgebraJson::Diagonal(k) => StructAlgebra::diagonal_algebra(f, *k).map_err(err),
            AlgebraJson::Truncated(k) => StructAlgebra::truncated_polynomial(f, *k).map_err(err),
            AlgebraJson::UpperTriangular(n) => StructAlgebra::upper_triangular(f, *n).map_err(err),
            AlgebraJson::Tensor(parts) => {
                let a = parts[0].build(f, &format!("{path}.tensor[0]"))?;
                let b = parts[1].build(f, &format!("{path}.tensor[1]"))?;
                StructAlgebra::tensor_product(&a, &b).map_err(err)
            }
            AlgebraJson::Product(parts) => {
                let a = parts[0].build(f, &format!("{path}.product[0]"))?;
                let b = parts[1].build(f, &format!("{path}.product[1]"))?;
                StructAlgebra::direct_product(&a, &b).map_err(err)
            }
            AlgebraJson::Table(t) => {
                let path = format!("{path}.table");
                let parse = |s: &String, p: String| f.parse(s).map_err(|e| CliError::input(&p, e));
                let mut constants = Vec::with_capacity(t.constants.len());
                for (i, row) in t.constants.iter().enumerate() {
                    let mut r = Vec::with_capacity(row.len());
                    for (j, entry) in row.iter().enumerate() {
                        let v: Result<Vec<_>, _> = entry
                            .iter()
                            .enumerate()
                            .map(|(k, s)| parse(s, format!("{path}.constants[{i}][{j}][{k}]")))
                            .collect();
                        r.push(v?);
                    }
                    constants.push(r);
                }
                let unit: Result<Vec<_>, _> =
                    t.unit.iter().enumerate().map(|(k, s)| parse(s, format!("{path}.unit[{k}]"))).collect();
                StructAlgebra::new(f, &constants, unit?, t.labels.clone()).map_err(|e| CliError::input(&path, e))
            }
        }
    }

    /// The dense table of an algebra.
    pub fn table(a: &StructAlgebra) -> AlgebraJson {
        let f = a.field();
        AlgebraJson::Table(TableJson {
            constants: a
                .constants()
                .iter()
                .map(|row| row.iter().map(|e| e.iter().map(|x| f.literal(x)).collect()).collect())
                .collect(),
            unit: a.unit().iter().map(|x| f.literal(x)).collect(),
            labels: Some(a.labels().to_vec()),
        })
    }
}

/// Coefficient ring families, including the out-of-scope ones so they can
/// be reported rather than rejected as malformed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingJson {
    Field {},
    Poly {
        vars: usize,
    },
    /// y² = g(x); g defaults to x³ + x. Coefficients from the constant term up.
    Curve {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g: Option<Vec<String>>,
    },
    Series {
        base: Box<RingJson>,
        order: usize,
    },
    Product {
        factors: Box<[RingJson; 2]>,
    },
    Findim {
        algebra: AlgebraJson,
    },
    Matrix {
        base: Box<RingJson>,
        n: usize,
    },
    FreeAlgebra {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<usize>,
    },
    SylvesterDomain {},
    HcrfDomain {},
    BezoutDomain {},
}

impl RingJson {
    pub fn family(&self) -> &'static str {
        match self {
            RingJson::Field {} => "field",
            RingJson::Poly { .. } => "poly",
            RingJson::Curve { .. } => "curve",
            RingJson::Series { .. } => "series",
            RingJson::Product { .. } => "product",
            RingJson::Findim { .. } => "findim",
            RingJson::Matrix { .. } => "matrix",
            RingJson::FreeAlgebra { .. } => "free-algebra",
            RingJson::SylvesterDomain {} => "sylvester-domain",
            RingJson::HcrfDomain {} => "hcrf-domain",
            RingJson::BezoutDomain {} => "bezout-domain",
        }
    }

    /// The reason no backend applies, for families outside the data model.
    pub fn out_of_scope(&self) -> Option<String> {
        match self {
            RingJson::Series { base, .. } | RingJson::Matrix { base, .. } => base.out_of_scope(),
            RingJson::Product { factors } => factors[0].out_of_scope().or_else(|| factors[1].out_of_scope()),
            other => out_of_scope(other.family()),
        }
    }

    pub fn build(&self, f: BaseField, path: &str) -> Result<RingDescriptor, CliError> {
        let err = |e| CliError::input(path, e);
        if let Some(why) = self.out_of_scope() {
            return Err(CliError::Unsupported(why));
        }
        match self {
            RingJson::Field {} => Ok(RingDescriptor::Field(f)),
            RingJson::Poly { vars } => Ok(RingDescriptor::Poly(PolyRing::new(f, *vars))),
            RingJson::Curve { g: None } => CurveRing::elliptic(f).map(RingDescriptor::Curve).map_err(err),
            RingJson::Curve { g: Some(g) } => {
                let coeffs: Result<Vec<_>, _> = g
                    .iter()
                    .enumerate()
                    .map(|(i, s)| f.parse(s).map_err(|e| CliError::input(&format!("{path}.g[{i}]"), e)))
                    .collect();
                let g = UniPolyRing::new(f).from_coeffs(coeffs?);
                CurveRing::with_rhs(f, g).map(RingDescriptor::Curve).map_err(err)
            }
            RingJson::Series { base, order } => {
                RingDescriptor::series(base.build(f, &format!("{path}.base"))?, *order).map_err(err)
            }
            RingJson::Product { factors } => RingDescriptor::product(
                factors[0].build(f, &format!("{path}.factors[0]"))?,
                factors[1].build(f, &format!("{path}.factors[1]"))?,
            )
            .map_err(err),
            RingJson::Findim { algebra } => {
                Ok(RingDescriptor::FinDim(Arc::new(algebra.build(f, &format!("{path}.algebra"))?)))
            }
            RingJson::Matrix { base, n } => {
                RingDescriptor::matrix(base.build(f, &format!("{path}.base"))?, *n).map_err(err)
            }
            _ => unreachable!("out-of-scope families return early"),
        }
    }
}

fn poly_terms(p: &PolyRing, v: &Value, path: &str) -> Result<Poly, CliError> {
    let f = p.field;
    let items = array(v, None, path)?;
    let mut terms = Vec::with_capacity(items.len());
    for (i, t) in items.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let obj =
            t.as_object().ok_or_else(|| CliError::input(&tp, "expected {\"exponents\": [...], \"coef\": \"...\"}"))?;
        if let Some(k) = obj.keys().find(|k| *k != "exponents" && *k != "coef") {
            return Err(CliError::input(&tp, format!("unknown field `{k}`")));
        }
        let exps = obj.get("exponents").ok_or_else(|| CliError::input(&tp, "missing field `exponents`"))?;
        let exps = array(exps, Some(p.nvars), &format!("{tp}.exponents"))?;
        let exps: Result<Vec<u32>, _> = exps
            .iter()
            .enumerate()
            .map(|(j, e)| {
                e.as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| CliError::input(&format!("{tp}.exponents[{j}]"), "expected a nonnegative integer"))
            })
            .collect();
        let coef = obj.get("coef").ok_or_else(|| CliError::input(&tp, "missing field `coef`"))?;
        terms.push((exps?, scalar(f, coef, &format!("{tp}.coef"))?));
    }
    p.from_terms(terms).map_err(|e| CliError::input(path, e))
}

fn poly_json(p: &PolyRing, q: &Poly) -> Value {
    Value::Array(q.terms().map(|(m, c)| json!({"exponents": m.0, "coef": p.field.literal(c)})).collect())
}

fn uni_terms(f: BaseField, v: &Value, path: &str) -> Result<UniPoly, CliError> {
    let pr = PolyRing::new(f, 1);
    Ok(pr.to_uni(&poly_terms(&pr, v, path)?, 0))
}

fn uni_json(f: BaseField, u: &UniPoly) -> Value {
    let pr = PolyRing::new(f, 1);
    poly_json(&pr, &pr.from_uni(u, 0))
}

pub fn uni_poly(f: BaseField, v: &Value, path: &str) -> Result<UniPoly, CliError> {
    uni_terms(f, v, path)
}

pub fn uni_poly_json(f: BaseField, u: &UniPoly) -> Value {
    uni_json(f, u)
}

pub fn curve_element(f: BaseField, v: &Value, path: &str) -> Result<CurveElement, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::input(path, "expected {\"a\": poly, \"b\": poly}"))?;
    if let Some(k) = obj.keys().find(|k| *k != "a" && *k != "b") {
        return Err(CliError::input(path, format!("unknown field `{k}`")));
    }
    let part = |k: &str| -> Result<UniPoly, CliError> {
        let x = obj.get(k).ok_or_else(|| CliError::input(path, format!("missing field `{k}`")))?;
        uni_terms(f, x, &format!("{path}.{k}"))
    };
    Ok(CurveElement { a: part("a")?, b: part("b")? })
}

pub fn curve_json(f: BaseField, c: &CurveElement) -> Value {
    json!({"a": uni_json(f, &c.a), "b": uni_json(f, &c.b)})
}

pub fn element(s: &RingDescriptor, v: &Value, path: &str) -> Result<RingElement, CliError> {
    let f = s.field();
    match s {
        RingDescriptor::Field(_) => Ok(RingElement::Scalar(scalar(f, v, path)?)),
        RingDescriptor::Poly(p) => Ok(RingElement::Poly(poly_terms(p, v, path)?)),
        RingDescriptor::Curve(_) => Ok(RingElement::Curve(curve_element(f, v, path)?)),
        RingDescriptor::Series { base, order } => {
            let items = array(v, Some(*order), path)?;
            let coeffs: Result<Vec<_>, _> =
                items.iter().enumerate().map(|(i, x)| element(base, x, &format!("{path}[{i}]"))).collect();
            Ok(RingElement::Series(coeffs?))
        }
        RingDescriptor::Product(a, b) => {
            let items = array(v, Some(2), path)?;
            Ok(RingElement::Pair(
                Box::new(element(a, &items[0], &format!("{path}[0]"))?),
                Box::new(element(b, &items[1], &format!("{path}[1]"))?),
            ))
        }
        RingDescriptor::FinDim(a) => Ok(RingElement::Alg(scalars(f, v, Some(a.dim()), path)?)),
        RingDescriptor::Matrix { base, n } => {
            let rows = array(v, Some(*n), path)?;
            let mut m = Vec::with_capacity(*n);
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("{path}[{i}]");
                let entries: Result<Vec<_>, _> = array(row, Some(*n), &rp)?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| element(base, x, &format!("{rp}[{j}]")))
                    .collect();
                m.push(entries?);
            }
            Ok(RingElement::Matrix(m))
        }
    }
}

pub fn element_json(s: &RingDescriptor, e: &RingElement) -> Value {
    let f = s.field();
    match (s, e) {
        (RingDescriptor::Field(_), RingElement::Scalar(a)) => scalar_json(f, a),
        (RingDescriptor::Poly(p), RingElement::Poly(q)) => poly_json(p, q),
        (RingDescriptor::Curve(_), RingElement::Curve(c)) => curve_json(f, c),
        (RingDescriptor::Series { base, .. }, RingElement::Series(v)) => {
            Value::Array(v.iter().map(|x| element_json(base, x)).collect())
        }
        (RingDescriptor::Product(a, b), RingElement::Pair(x, y)) => json!([element_json(a, x), element_json(b, y)]),
        (RingDescriptor::FinDim(_), RingElement::Alg(x)) => scalars_json(f, x),
        (RingDescriptor::Matrix { base, .. }, RingElement::Matrix(m)) => Value::Array(
            m.iter().map(|row| Value::Array(row.iter().map(|x| element_json(base, x)).collect())).collect(),
        ),
        _ => panic!("element does not belong to the {} family", s.family()),
    }
}

/// Σ_l r_l ⊗ s_l as the array [s_1, …, s_d].
pub fn tensor(ring: &TensorRing, v: &Value, path: &str) -> Result<TensorElement, CliError> {
    let items = array(v, Some(ring.dim()), path)?;
    let coords: Result<Vec<_>, _> =
        items.iter().enumerate().map(|(l, x)| element(ring.s(), x, &format!("{path}[{l}]"))).collect();
    Ok(TensorElement { coords: coords? })
}

pub fn tensor_json(ring: &TensorRing, u: &TensorElement) -> Value {
    Value::Array(u.coords.iter().map(|x| element_json(ring.s(), x)).collect())
}

pub fn tensors(ring: &TensorRing, v: &Value, len: Option<usize>, path: &str) -> Result<Vec<TensorElement>, CliError> {
    let items = array(v, len, path)?;
    items.iter().enumerate().map(|(i, x)| tensor(ring, x, &format!("{path}[{i}]"))).collect()
}

pub fn alg_elements(a: &StructAlgebra, v: &Value, path: &str) -> Result<Vec<AlgElement>, CliError> {
    let items = array(v, None, path)?;
    items.iter().enumerate().map(|(i, x)| scalars(a.field(), x, Some(a.dim()), &format!("{path}[{i}]"))).collect()
}

pub fn matrices(f: BaseField, v: &Value, dim: usize, path: &str) -> Result<Vec<Vec<Vec<FieldElement>>>, CliError> {
    let items = array(v, None, path)?;
    let mut out = Vec::with_capacity(items.len());
    for (i, m) in items.iter().enumerate() {
        let mp = format!("{path}[{i}]");
        let rows: Result<Vec<_>, _> = array(m, Some(dim), &mp)?
            .iter()
            .enumerate()
            .map(|(r, row)| scalars(f, row, Some(dim), &format!("{mp}[{r}]")))
            .collect();
        out.push(rows?);
    }
    Ok(out)
}
