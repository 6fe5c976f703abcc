//! Task execution, certificate elements and rechecking.

use serde_json::{json, Map, Value};
use snforge_core::algebras::{StructAlgebra, TensorRing};
use snforge_core::applications::{
    decompose_automorphism, flip_innerness_check, generators, inner_derivation_witness, verify_decomposition,
    verify_derivation_witness, verify_flip, FlipDefect, FlipReport,
};
use snforge_core::backends::{
    dispatch, recheck, Backend, Branch, BranchRefutation, Certificate, CurveRefutation, RefutationReason, SolveRequest,
    Status, DEFAULT_TRIALS,
};
use snforge_core::ground_rings::{BaseField, RingElement};
use snforge_core::sn_core::ConjugatorCheck;

use crate::error::CliError;
use crate::files::{CertificateFile, HomPayload, ProblemFile, RecheckPayload, StatusJson, Task};
use crate::format::{
    alg_elements, curve_element, curve_json, element, element_json, scalar, scalar_json, scalars, scalars_json, tensor,
    tensor_json, uni_poly, uni_poly_json,
};
use crate::load::{load_aut, load_derivation, load_flip, load_hom, LoadedHom};

/// Flags that override the problem file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    /// Used when neither the flag nor the problem sets a seed.
    pub default_seed: u64,
    pub trials: Option<u32>,
    pub backend: Option<Backend>,
    pub emit_coefficients: bool,
}

impl RunOptions {
    fn seed(&self, p: &ProblemFile) -> u64 {
        self.seed.or(p.seed).unwrap_or(self.default_seed)
    }

    fn trials(&self, p: &ProblemFile) -> u32 {
        self.trials.or(p.trials).unwrap_or(DEFAULT_TRIALS)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    /// `None` for tasks that produce no certificate (validate, recheck).
    pub status: Option<StatusJson>,
    pub certificate: Option<CertificateFile>,
    /// Human-readable summary.
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.status.map_or(0, StatusJson::exit_code)
    }
}

pub fn run_problem(p: &ProblemFile, opts: &RunOptions) -> Result<Outcome, CliError> {
    match p.task {
        Task::Validate => {
            let loaded = load_hom(p)?;
            let d = loaded.ring.dim();
            Ok(Outcome {
                status: None,
                certificate: None,
                lines: vec![format!("valid: φ(1) = 1 and φ(r_i)φ(r_j) = φ(r_i r_j) on all {} basis pairs", d * d)],
            })
        }
        Task::Solve => solve(p, opts),
        Task::DecomposeAut => decompose(p, opts),
        Task::Derivation => derivation(p, opts),
        Task::FlipCheck => flip(p, opts),
        Task::Recheck => {
            let payload: RecheckPayload = p.payload()?;
            let inner = ProblemFile::parse(payload.problem)?;
            let cert = CertificateFile::parse(payload.certificate)?;
            let lines = recheck_pair(&inner, &cert)?;
            Ok(Outcome { status: None, certificate: None, lines })
        }
    }
}

fn finish(
    p: &ProblemFile,
    status: StatusJson,
    backend: Option<String>,
    seed: u64,
    trials: u32,
    elements: Value,
    transcript: Vec<String>,
    mut lines: Vec<String>,
) -> Outcome {
    let cert = CertificateFile::new(p, status, backend.clone(), seed, trials, elements, transcript);
    let via = backend.map(|b| format!(", backend {b}")).unwrap_or_default();
    lines.insert(0, format!("status: {}{via}, seed {seed}, trials {trials}", status.name()));
    Outcome { status: Some(status), certificate: Some(cert), lines }
}

fn unsupported(p: &ProblemFile, seed: u64, reason: String) -> Outcome {
    let transcript = vec![format!("{} certificate: nothing to verify", Status::Unsupported.name())];
    let lines = vec![format!("unsupported: {reason}")];
    finish(p, StatusJson::Unsupported, None, seed, 0, json!({ "reason": reason }), transcript, lines)
}

fn self_check(r: Result<Vec<String>, snforge_core::Error>) -> Result<Vec<String>, CliError> {
    r.map_err(|e| CliError::Recheck(format!("the solver's own output failed verification: {e}")))
}

fn solve(p: &ProblemFile, opts: &RunOptions) -> Result<Outcome, CliError> {
    let seed = opts.seed(p);
    let payload: HomPayload = p.payload()?;
    if let Some(why) = payload.s.out_of_scope() {
        return Ok(unsupported(p, seed, why));
    }
    let loaded = match load_hom(p) {
        Err(CliError::Unsupported(why)) => return Ok(unsupported(p, seed, why)),
        other => other?,
    };
    let req = SolveRequest {
        hom: loaded.hom.clone(),
        seed,
        trials: opts.trials(p),
        backend: opts.backend,
        presentation: loaded.presentation.clone(),
        emit_coefficients: opts.emit_coefficients,
    };
    let cert = dispatch(&req).map_err(|e| CliError::core("problem", e))?;
    let transcript = self_check(recheck(&loaded.hom, loaded.presentation.as_ref(), &cert))?;
    let (elements, lines) = solve_elements(&loaded, &cert);
    Ok(finish(
        p,
        cert.status.into(),
        cert.backend.map(|b| b.name().to_string()),
        seed,
        cert.trials,
        elements,
        transcript,
        lines,
    ))
}

fn solve_elements(loaded: &LoadedHom, cert: &Certificate) -> (Value, Vec<String>) {
    let ring = &loaded.ring;
    let mut obj = Map::new();
    let mut lines = Vec::new();
    if let Some(k) = &cert.conjugator {
        obj.insert("c".into(), tensor_json(ring, &k.c));
        obj.insert("c_inv".into(), tensor_json(ring, &k.c_inv));
        lines.push(format!("c = {}", ring.render(&k.c)));
        lines.push(format!("c⁻¹ = {}", ring.render(&k.c_inv)));
    }
    if let Some(r) = &cert.refutation {
        let s = ring.s();
        let f = loaded.field;
        let det = format!("det(a) = {}", s.render(&RingElement::Curve(r.delta.clone())));
        lines.push(det.clone());
        obj.insert("det_a".into(), Value::String(det));
        obj.insert("delta".into(), curve_json(f, &r.delta));
        obj.insert("branches".into(), Value::Array(r.branches.iter().map(|b| branch_json(f, b)).collect()));
        lines.extend(r.branches.iter().map(|b| b.to_string()));
    }
    if let Some(ct) = &cert.coefficients {
        obj.insert("coefficients".into(), Value::Array(ct.c.iter().map(|c| tensor_json(ring, c)).collect()));
        obj.insert("labels".into(), json!(ct.labels));
    }
    if let Some(reason) = &cert.reason {
        obj.insert("reason".into(), Value::String(reason.clone()));
        lines.push(format!("{}: {reason}", cert.status.name()));
    }
    obj.insert("trace".into(), json!(cert.trace));
    (Value::Object(obj), lines)
}

fn branch_json(f: BaseField, b: &BranchRefutation) -> Value {
    let reason = match &b.reason {
        RefutationReason::ComponentNonzero => json!({"kind": "component-nonzero"}),
        RefutationReason::ComponentZero => json!({"kind": "component-zero"}),
        RefutationReason::LeadingTermInY => json!({"kind": "leading-term-in-y"}),
        RefutationReason::OddDegree { degree } => json!({"kind": "odd-degree", "degree": degree}),
        RefutationReason::DegreeMismatch { degree, minimum } => {
            json!({"kind": "degree-mismatch", "degree": degree, "minimum": minimum})
        }
        RefutationReason::NotDivisible { dividend, divisor } => json!({
            "kind": "not-divisible",
            "dividend": uni_poly_json(f, dividend),
            "divisor": uni_poly_json(f, divisor),
        }),
        RefutationReason::NotSquare { monic } => json!({"kind": "not-square", "monic": uni_poly_json(f, monic)}),
        RefutationReason::ConjugatorNotDivisible { f: fe, gamma, row, col } => json!({
            "kind": "conjugator-not-divisible",
            "f": curve_json(f, fe),
            "gamma": scalar_json(f, gamma),
            "row": row,
            "col": col,
        }),
    };
    json!({"branch": b.branch.name(), "reason": reason, "text": b.to_string()})
}

fn field_of<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::input(path, format!("missing field `{key}`")))
}

fn usize_of(v: &Value, key: &str, path: &str) -> Result<usize, CliError> {
    field_of(v, key, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::input(&format!("{path}.{key}"), "expected a nonnegative integer"))
}

fn parse_branch(f: BaseField, v: &Value, path: &str) -> Result<BranchRefutation, CliError> {
    let name = field_of(v, "branch", path)?.as_str().unwrap_or_default();
    let branch = Branch::parse(name)
        .ok_or_else(|| CliError::input(&format!("{path}.branch"), format!("unknown branch `{name}`")))?;
    let rp = format!("{path}.reason");
    let r = field_of(v, "reason", path)?;
    let kind = field_of(r, "kind", &rp)?.as_str().unwrap_or_default();
    let reason = match kind {
        "component-nonzero" => RefutationReason::ComponentNonzero,
        "component-zero" => RefutationReason::ComponentZero,
        "leading-term-in-y" => RefutationReason::LeadingTermInY,
        "odd-degree" => RefutationReason::OddDegree { degree: usize_of(r, "degree", &rp)? },
        "degree-mismatch" => RefutationReason::DegreeMismatch {
            degree: usize_of(r, "degree", &rp)?,
            minimum: usize_of(r, "minimum", &rp)?,
        },
        "not-divisible" => RefutationReason::NotDivisible {
            dividend: uni_poly(f, field_of(r, "dividend", &rp)?, &format!("{rp}.dividend"))?,
            divisor: uni_poly(f, field_of(r, "divisor", &rp)?, &format!("{rp}.divisor"))?,
        },
        "not-square" => {
            RefutationReason::NotSquare { monic: uni_poly(f, field_of(r, "monic", &rp)?, &format!("{rp}.monic"))? }
        }
        "conjugator-not-divisible" => RefutationReason::ConjugatorNotDivisible {
            f: curve_element(f, field_of(r, "f", &rp)?, &format!("{rp}.f"))?,
            gamma: scalar(f, field_of(r, "gamma", &rp)?, &format!("{rp}.gamma"))?,
            row: usize_of(r, "row", &rp)?,
            col: usize_of(r, "col", &rp)?,
        },
        other => return Err(CliError::input(&format!("{rp}.kind"), format!("unknown refutation kind `{other}`"))),
    };
    let b = BranchRefutation { branch, reason };
    if v.get("text").and_then(Value::as_str) != Some(b.to_string().as_str()) {
        return Err(CliError::Recheck(format!("{path}.text does not describe the structured refutation")));
    }
    Ok(b)
}

fn decompose(p: &ProblemFile, opts: &RunOptions) -> Result<Outcome, CliError> {
    let seed = opts.seed(p);
    let psi = load_aut(p)?;
    let dec = decompose_automorphism(&psi, seed, opts.trials(p)).map_err(|e| CliError::core("problem", e))?;
    let transcript = self_check(verify_decomposition(&psi, &dec.c, &dec.c_inv, &dec.sigma, &dec.sigma_inverse))?;
    let ring = &psi.ring;
    let s = ring.s();
    let table = |images: &[RingElement]| -> Value {
        Value::Array(
            dec.labels.iter().zip(images).map(|(g, x)| json!({"generator": g, "image": element_json(s, x)})).collect(),
        )
    };
    let elements = json!({
        "c": tensor_json(ring, &dec.c),
        "c_inv": tensor_json(ring, &dec.c_inv),
        "sigma": table(&dec.sigma),
        "sigma_inverse": table(&dec.sigma_inverse),
        "inverse_supplied": dec.inverse_supplied,
    });
    let mut lines = vec![format!("c = {}", ring.render(&dec.c))];
    for (g, x) in dec.labels.iter().zip(&dec.sigma) {
        lines.push(format!("σ({g}) = {}", s.render(x)));
    }
    let backend = dec.certificate.backend.map(|b| b.name().to_string());
    Ok(finish(p, StatusJson::Inner, backend, seed, dec.certificate.trials, elements, transcript, lines))
}

fn derivation(p: &ProblemFile, opts: &RunOptions) -> Result<Outcome, CliError> {
    let seed = opts.seed(p);
    let d = load_derivation(p)?;
    let wit = inner_derivation_witness(&d, seed, opts.trials(p)).map_err(|e| CliError::core("problem", e))?;
    let transcript = self_check(verify_derivation_witness(&d, &wit.w))?;
    let f = d.algebra().field();
    let elements = json!({
        "w": scalars_json(f, &wit.w),
        "lambda": scalar_json(f, &wit.lambda),
        "v": scalars_json(f, &wit.v),
        "centralizer": Value::Array(wit.centralizer.iter().map(|z| scalars_json(f, z)).collect()),
    });
    let w: Vec<String> = wit.w.iter().map(|x| f.literal(x)).collect();
    let lines = vec![format!("w = [{}] (reduced modulo the centralizer)", w.join(", "))];
    let backend = Some(Backend::FiniteDimensional.name().to_string());
    Ok(finish(p, StatusJson::Inner, backend, seed, wit.trials, elements, transcript, lines))
}

fn flip(p: &ProblemFile, opts: &RunOptions) -> Result<Outcome, CliError> {
    let seed = opts.seed(p);
    let r = load_flip(p)?;
    let report = flip_innerness_check(&r, seed, opts.trials(p)).map_err(|e| CliError::core("problem", e))?;
    let transcript = self_check(verify_flip(&r, &report))?;
    let f = r.field();
    let mut lines = Vec::new();
    let elements = match (&report.conjugator, &report.defect) {
        (Some((c, c_inv)), _) => {
            let rr = StructAlgebra::tensor_product(&r, &r).map_err(|e| CliError::core("problem.r", e))?;
            lines.push(format!("c = {}", snforge_core::ground_rings::render_alg(&rr, c)));
            json!({"c": scalars_json(f, c), "c_inv": scalars_json(f, c_inv), "search": report.search})
        }
        (None, defect) => {
            let basis_json = |b: &[Vec<_>]| Value::Array(b.iter().map(|z| scalars_json(f, z)).collect());
            let defect = match defect {
                Some(FlipDefect::Center { dim, basis }) => {
                    lines.push(format!("center of dimension {dim}"));
                    json!({"kind": "center", "dim": dim, "basis": basis_json(basis)})
                }
                Some(FlipDefect::Ideal { basis }) => {
                    lines.push(format!("proper ideal of dimension {}", basis.len()));
                    json!({"kind": "ideal", "basis": basis_json(basis)})
                }
                Some(FlipDefect::NotSimple) | None => {
                    lines.push("not central simple".into());
                    json!({"kind": "not-simple"})
                }
            };
            json!({"defect": defect, "search": report.search})
        }
    };
    let status = if report.inner { StatusJson::Inner } else { StatusJson::NotInner };
    let backend = Some(Backend::FiniteDimensional.name().to_string());
    Ok(finish(p, status, backend, seed, report.trials, elements, transcript, lines))
}

/// Re-verifies every claim of `cert` against `p` without solving.
pub fn recheck_pair(p: &ProblemFile, cert: &CertificateFile) -> Result<Vec<String>, CliError> {
    let digest = p.digest();
    if cert.problem_digest != digest {
        return Err(CliError::Recheck(format!(
            "transcript digest mismatch: the certificate was issued for problem {}, not {digest}",
            cert.problem_digest
        )));
    }
    if cert.task != p.task {
        return Err(CliError::Recheck(format!(
            "the certificate is for task {}, the problem is {}",
            cert.task.name(),
            p.task.name()
        )));
    }
    let lines = match p.task {
        Task::Solve => recheck_solve(p, cert)?,
        Task::DecomposeAut => {
            let psi = load_aut(p)?;
            let ring = &psi.ring;
            let e = &cert.elements;
            let c = tensor(ring, field_of(e, "c", "elements")?, "elements.c")?;
            let c_inv = tensor(ring, field_of(e, "c_inv", "elements")?, "elements.c_inv")?;
            let gens = generators(ring.s()).map_err(|e| CliError::core("problem.s", e))?;
            let table = |key: &str| -> Result<Vec<RingElement>, CliError> {
                let path = format!("elements.{key}");
                let rows = field_of(e, key, "elements")?
                    .as_array()
                    .ok_or_else(|| CliError::input(&path, "expected an array"))?;
                if rows.len() != gens.len() {
                    return Err(CliError::Recheck(format!("{path} must list {} generators", gens.len())));
                }
                rows.iter()
                    .zip(&gens)
                    .enumerate()
                    .map(|(i, (row, (name, _)))| {
                        let rp = format!("{path}[{i}]");
                        if row.get("generator").and_then(Value::as_str) != Some(name.as_str()) {
                            return Err(CliError::Recheck(format!("{rp}.generator should be {name}")));
                        }
                        element(ring.s(), field_of(row, "image", &rp)?, &format!("{rp}.image"))
                    })
                    .collect()
            };
            let (sigma, sigma_inv) = (table("sigma")?, table("sigma_inverse")?);
            verify_decomposition(&psi, &c, &c_inv, &sigma, &sigma_inv).map_err(|e| CliError::Recheck(e.to_string()))?
        }
        Task::Derivation => {
            let d = load_derivation(p)?;
            let f = d.algebra().field();
            let w = scalars(f, field_of(&cert.elements, "w", "elements")?, Some(d.module.dim()), "elements.w")?;
            verify_derivation_witness(&d, &w).map_err(|e| CliError::Recheck(e.to_string()))?
        }
        Task::FlipCheck => {
            let r = load_flip(p)?;
            let report = parse_flip(&r, cert)?;
            verify_flip(&r, &report).map_err(|e| CliError::Recheck(e.to_string()))?
        }
        Task::Validate | Task::Recheck => {
            return Err(CliError::input("task", format!("{} problems have no certificates", p.task.name())))
        }
    };
    if lines != cert.transcript {
        let i = lines.iter().zip(&cert.transcript).take_while(|(a, b)| a == b).count();
        return Err(CliError::Recheck(format!("transcript differs from the recomputed one at line {}", i + 1)));
    }
    if cert.compute_digest(&digest) != cert.transcript_digest {
        return Err(CliError::Recheck("transcript digest mismatch".into()));
    }
    Ok(lines)
}

fn recheck_solve(p: &ProblemFile, cert: &CertificateFile) -> Result<Vec<String>, CliError> {
    let vacuous = || vec![format!("{} certificate: nothing to verify", Status::from(cert.status).name())];
    let payload: HomPayload = p.payload()?;
    if payload.s.out_of_scope().is_some() {
        if cert.status != StatusJson::Unsupported {
            return Err(CliError::Recheck("an out-of-scope ring can only have an unsupported certificate".into()));
        }
        return Ok(vacuous());
    }
    let loaded = match load_hom(p) {
        Err(CliError::Unsupported(_)) if cert.status == StatusJson::Unsupported => return Ok(vacuous()),
        other => other?,
    };
    let ring: &TensorRing = &loaded.ring;
    let backend = match &cert.backend {
        Some(b) => Some(b.parse::<Backend>().map_err(|e| CliError::input("backend", e))?),
        None => None,
    };
    let e = &cert.elements;
    let status: Status = cert.status.into();
    let core_cert = match status {
        Status::Inner => {
            let c = tensor(ring, field_of(e, "c", "elements")?, "elements.c")?;
            let c_inv = tensor(ring, field_of(e, "c_inv", "elements")?, "elements.c_inv")?;
            let backend = backend.ok_or_else(|| CliError::input("backend", "inner certificates name a backend"))?;
            Certificate::inner(backend, cert.seed, ConjugatorCheck { c, c_inv, transcript: Vec::new() }, cert.trials)
        }
        Status::NotInner => {
            let f = loaded.field;
            let delta = curve_element(f, field_of(e, "delta", "elements")?, "elements.delta")?;
            let branches = field_of(e, "branches", "elements")?
                .as_array()
                .ok_or_else(|| CliError::input("elements.branches", "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, b)| parse_branch(f, b, &format!("elements.branches[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let det = format!("det(a) = {}", ring.s().render(&RingElement::Curve(delta.clone())));
            if e.get("det_a").and_then(Value::as_str) != Some(det.as_str()) {
                return Err(CliError::Recheck("elements.det_a does not match elements.delta".into()));
            }
            Certificate::not_inner(cert.seed, CurveRefutation { delta, branches })
        }
        Status::Unsupported | Status::Exhausted => return Ok(vacuous()),
    };
    recheck(&loaded.hom, loaded.presentation.as_ref(), &core_cert).map_err(|e| CliError::Recheck(e.to_string()))
}

fn parse_flip(r: &StructAlgebra, cert: &CertificateFile) -> Result<FlipReport, CliError> {
    let f = r.field();
    let e = &cert.elements;
    let n = r.dim() * r.dim();
    let search = match e.get("search").and_then(Value::as_str) {
        Some("found") => "found",
        Some("empty") => "empty",
        Some("exhausted") => "exhausted",
        _ => return Err(CliError::input("elements.search", "expected \"found\", \"empty\" or \"exhausted\"")),
    };
    let inner = cert.status == StatusJson::Inner;
    if inner {
        let c = scalars(f, field_of(e, "c", "elements")?, Some(n), "elements.c")?;
        let c_inv = scalars(f, field_of(e, "c_inv", "elements")?, Some(n), "elements.c_inv")?;
        return Ok(FlipReport { inner, conjugator: Some((c, c_inv)), defect: None, search, trials: cert.trials });
    }
    let d = field_of(e, "defect", "elements")?;
    let defect = match d.get("kind").and_then(Value::as_str) {
        Some("center") => FlipDefect::Center {
            dim: usize_of(d, "dim", "elements.defect")?,
            basis: alg_elements(r, field_of(d, "basis", "elements.defect")?, "elements.defect.basis")?,
        },
        Some("ideal") => FlipDefect::Ideal {
            basis: alg_elements(r, field_of(d, "basis", "elements.defect")?, "elements.defect.basis")?,
        },
        Some("not-simple") => FlipDefect::NotSimple,
        _ => return Err(CliError::input("elements.defect.kind", "expected \"center\", \"ideal\" or \"not-simple\"")),
    };
    Ok(FlipReport { inner, conjugator: None, defect: Some(defect), search, trials: cert.trials })
}
