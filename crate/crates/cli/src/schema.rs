//! JSON Schemas for problem and certificate files.

use serde_json::{json, Value};

use crate::files::SCHEMA_VERSION;

fn scalar() -> Value {
    json!({"type": "string", "description": "a rational `p/q` or an integer; reduced mod p over F_p"})
}

fn scalars() -> Value {
    json!({"type": "array", "items": {"$ref": "#/$defs/scalar"}})
}

fn algebra() -> Value {
    let n = json!({"type": "integer", "minimum": 1});
    let pair = json!({"type": "array", "items": {"$ref": "#/$defs/algebra"}, "minItems": 2, "maxItems": 2});
    let one = |key: &str, v: Value| json!({"type": "object", "properties": {key: v}, "required": [key], "additionalProperties": false});
    json!({"oneOf": [
        one("matrix", n.clone()),
        one("quaternion", json!({"type": "array", "items": {"$ref": "#/$defs/scalar"}, "minItems": 2, "maxItems": 2})),
        one("diagonal", n.clone()),
        one("truncated", n.clone()),
        one("upper_triangular", n),
        one("tensor", pair.clone()),
        one("product", pair),
        one("table", json!({
            "type": "object",
            "properties": {
                "constants": {"type": "array", "items": {"type": "array", "items": scalars()}},
                "unit": scalars(),
                "labels": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["constants", "unit"],
            "additionalProperties": false,
        })),
    ]})
}

fn ring() -> Value {
    let family = |name: &str, props: Value, required: Value| {
        let mut props = props.as_object().cloned().unwrap_or_default();
        props.insert("family".into(), json!({"const": name}));
        let mut req = vec![json!("family")];
        req.extend(required.as_array().cloned().unwrap_or_default());
        json!({"type": "object", "properties": props, "required": req, "additionalProperties": false})
    };
    let ring_ref = json!({"$ref": "#/$defs/ring"});
    json!({"oneOf": [
        family("field", json!({}), json!([])),
        family("poly", json!({"vars": {"type": "integer", "minimum": 1}}), json!(["vars"])),
        family("curve", json!({"g": scalars()}), json!([])),
        family("series", json!({"base": ring_ref, "order": {"type": "integer", "minimum": 1}}), json!(["base", "order"])),
        family("product", json!({"factors": {"type": "array", "items": ring_ref, "minItems": 2, "maxItems": 2}}), json!(["factors"])),
        family("findim", json!({"algebra": {"$ref": "#/$defs/algebra"}}), json!(["algebra"])),
        family("matrix", json!({"base": ring_ref, "n": {"type": "integer", "minimum": 1}}), json!(["base", "n"])),
        family("free-algebra", json!({"generators": {"type": "integer"}}), json!([])),
        family("sylvester-domain", json!({}), json!([])),
        family("hcrf-domain", json!({}), json!([])),
        family("bezout-domain", json!({}), json!([])),
    ]})
}

fn defs() -> Value {
    json!({
        "scalar": scalar(),
        "algebra": algebra(),
        "ring": ring(),
        "element": {
            "description": "poly: [{exponents, coef}]; curve: {a, b}; series: coefficient array; product: [x, y]; findim: scalar array; matrix: rows",
        },
        "tensor": {"type": "array", "items": {"$ref": "#/$defs/element"}, "description": "coordinates against the basis of R"},
    })
}

pub fn problem_schema() -> Value {
    let tensor = json!({"$ref": "#/$defs/tensor"});
    let tensors = json!({"type": "array", "items": {"$ref": "#/$defs/tensor"}});
    let algebra = json!({"$ref": "#/$defs/algebra"});
    let obj = |props: Value, required: Value| json!({"type": "object", "properties": props, "required": required, "additionalProperties": false});
    let hom = obj(
        json!({"r": algebra, "s": {"$ref": "#/$defs/ring"}, "images": tensors, "conjugate_by": tensor, "presentation": tensor}),
        json!(["r", "s"]),
    );
    let images =
        obj(json!({"unit_images": tensors, "generator_images": tensors}), json!(["unit_images", "generator_images"]));
    let aut = obj(
        json!({
            "n": {"type": "integer", "minimum": 1},
            "s": {"$ref": "#/$defs/ring"},
            "unit_images": tensors,
            "generator_images": tensors,
            "inverse": images,
            "conjugate_by": tensor,
            "sigma": {"type": "array", "items": {"$ref": "#/$defs/element"}},
        }),
        json!(["n", "s"]),
    );
    let matrices = json!({"type": "array", "items": {"type": "array", "items": scalars()}});
    let derivation = obj(
        json!({
            "r": algebra,
            "bimodule": obj(json!({"dim": {"type": "integer"}, "left": matrices, "right": matrices}), json!(["dim", "left", "right"])),
            "values": {"type": "array", "items": scalars()},
            "inner_by": scalars(),
        }),
        json!(["r"]),
    );
    let flip = obj(json!({"r": algebra}), json!(["r"]));
    let recheck = obj(
        json!({"problem": {"type": "object"}, "certificate": {"type": "object"}}),
        json!(["problem", "certificate"]),
    );
    let case = |tasks: Value, payload: Value| json!({"if": {"properties": {"task": {"enum": tasks}}}, "then": {"properties": {"problem": payload}}});
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "snforge problem",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "task": {"enum": ["validate", "solve", "decompose-aut", "derivation", "flip-check", "recheck"]},
            "field": {"type": "string", "pattern": "^(Q|F_[0-9]+)$"},
            "seed": {"type": "integer", "minimum": 0},
            "trials": {"type": "integer", "minimum": 1},
            "problem": {"type": "object"},
        },
        "required": ["schema_version", "task", "field", "problem"],
        "additionalProperties": false,
        "allOf": [
            case(json!(["validate", "solve"]), hom),
            case(json!(["decompose-aut"]), aut),
            case(json!(["derivation"]), derivation),
            case(json!(["flip-check"]), flip),
            case(json!(["recheck"]), recheck),
        ],
        "$defs": defs(),
    })
}

pub fn certificate_schema() -> Value {
    let hex = json!({"type": "string", "pattern": "^[0-9a-f]{64}$"});
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "snforge certificate",
        "type": "object",
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "task": {"enum": ["solve", "decompose-aut", "derivation", "flip-check"]},
            "status": {"enum": ["inner", "not-inner", "unsupported", "exhausted"]},
            "backend": {"enum": ["product", "power-series", "findim", "pid-matrix", "ufd", "curve"]},
            "seed": {"type": "integer", "minimum": 0},
            "trials": {"type": "integer", "minimum": 0},
            "problem_digest": hex,
            "elements": {"type": "object", "description": "c and c_inv, the sigma table, w, or the refutation branches"},
            "transcript": {"type": "array", "items": {"type": "string"}},
            "transcript_digest": hex,
        },
        "required": ["schema_version", "task", "status", "seed", "trials", "problem_digest", "elements", "transcript", "transcript_digest"],
        "additionalProperties": false,
        "$defs": defs(),
    })
}
