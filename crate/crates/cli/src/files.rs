//! Problem and certificate documents.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use snforge_core::backends::Status;

use crate::canonical::{canonical, from_value, sha256_hex, to_canonical};
use crate::error::CliError;
use crate::format::{AlgebraJson, RingJson};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Validate,
    Solve,
    DecomposeAut,
    Derivation,
    FlipCheck,
    Recheck,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Validate => "validate",
            Task::Solve => "solve",
            Task::DecomposeAut => "decompose-aut",
            Task::Derivation => "derivation",
            Task::FlipCheck => "flip-check",
            Task::Recheck => "recheck",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: u32,
    pub task: Task,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    /// Task-specific payload, one of the `*Payload` structs.
    pub problem: Value,
}

impl ProblemFile {
    pub fn parse(v: Value) -> Result<Self, CliError> {
        let p: ProblemFile = from_value(v, "")?;
        if p.schema_version != SCHEMA_VERSION {
            return Err(CliError::input(
                "schema_version",
                format!("unsupported schema version {} (expected {SCHEMA_VERSION})", p.schema_version),
            ));
        }
        // reject malformed payloads before any computation
        match p.task {
            Task::Validate | Task::Solve => drop(p.payload::<HomPayload>()?),
            Task::DecomposeAut => drop(p.payload::<AutPayload>()?),
            Task::Derivation => drop(p.payload::<DerivationPayload>()?),
            Task::FlipCheck => drop(p.payload::<FlipPayload>()?),
            Task::Recheck => drop(p.payload::<RecheckPayload>()?),
        }
        Ok(p)
    }

    pub fn payload<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        from_value(self.problem.clone(), "problem")
    }

    pub fn canonical(&self) -> String {
        to_canonical(self)
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.canonical().as_bytes())
    }
}

/// φ: R → R⊗S by basis images, or as conjugation by an element of R⊗S.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomPayload {
    pub r: AlgebraJson,
    pub s: RingJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Value>>,
    /// a with φ(x) = a·x·a⁻¹; over the curve ring a may be invertible only
    /// over the fraction field.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate_by: Option<Value>,
    /// a fraction-field conjugator with φ(x)·a = a·x, for the curve and
    /// PID-matrix backends.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Value>,
}

/// ψ on M_n(S), by images of matrix units and ring generators, or as
/// Inn(c)∘(id⊗σ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutPayload {
    pub n: usize,
    pub s: RingJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_images: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_images: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<AutImages>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate_by: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutImages {
    pub unit_images: Vec<Value>,
    pub generator_images: Vec<Value>,
}

/// d: R → M by values on the basis of R, or d = ad(m) on M = R.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationPayload {
    pub r: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_by: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleJson {
    pub dim: usize,
    /// left[i] is the matrix of v ↦ b_i·v
    pub left: Vec<Vec<Vec<String>>>,
    /// right[i] is the matrix of v ↦ v·b_i
    pub right: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipPayload {
    pub r: AlgebraJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecheckPayload {
    pub problem: Value,
    pub certificate: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusJson {
    Inner,
    NotInner,
    Unsupported,
    Exhausted,
}

impl StatusJson {
    pub fn exit_code(self) -> i32 {
        match self {
            StatusJson::Inner => 0,
            StatusJson::NotInner => 2,
            StatusJson::Unsupported | StatusJson::Exhausted => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatusJson::Inner => "inner",
            StatusJson::NotInner => "not-inner",
            StatusJson::Unsupported => "unsupported",
            StatusJson::Exhausted => "exhausted",
        }
    }
}

impl From<Status> for StatusJson {
    fn from(s: Status) -> Self {
        match s {
            Status::Inner => StatusJson::Inner,
            Status::NotInner => StatusJson::NotInner,
            Status::Unsupported => StatusJson::Unsupported,
            Status::Exhausted => StatusJson::Exhausted,
        }
    }
}

impl From<StatusJson> for Status {
    fn from(s: StatusJson) -> Self {
        match s {
            StatusJson::Inner => Status::Inner,
            StatusJson::NotInner => Status::NotInner,
            StatusJson::Unsupported => Status::Unsupported,
            StatusJson::Exhausted => Status::Exhausted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub task: Task,
    pub status: StatusJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    pub seed: u64,
    pub trials: u32,
    /// sha256 of the canonical problem document.
    pub problem_digest: String,
    /// c, c⁻¹, the σ table, w, or the refutation branches.
    pub elements: Value,
    pub transcript: Vec<String>,
    pub transcript_digest: String,
}

impl CertificateFile {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        problem: &ProblemFile,
        status: StatusJson,
        backend: Option<String>,
        seed: u64,
        trials: u32,
        elements: Value,
        transcript: Vec<String>,
    ) -> Self {
        let mut cert = CertificateFile {
            schema_version: SCHEMA_VERSION,
            task: problem.task,
            status,
            backend,
            seed,
            trials,
            problem_digest: problem.digest(),
            elements,
            transcript,
            transcript_digest: String::new(),
        };
        cert.transcript_digest = cert.compute_digest(&cert.problem_digest);
        cert
    }

    pub fn parse(v: Value) -> Result<Self, CliError> {
        let c: CertificateFile = from_value(v, "")?;
        if c.schema_version != SCHEMA_VERSION {
            return Err(CliError::input(
                "schema_version",
                format!("unsupported schema version {} (expected {SCHEMA_VERSION})", c.schema_version),
            ));
        }
        Ok(c)
    }

    /// Digest of everything the certificate claims, bound to a problem.
    pub fn compute_digest(&self, problem_digest: &str) -> String {
        let body = json!({
            "problem_digest": problem_digest,
            "task": self.task,
            "status": self.status,
            "backend": self.backend,
            "seed": self.seed,
            "trials": self.trials,
            "elements": self.elements,
            "transcript": self.transcript,
        });
        sha256_hex(canonical(&body).as_bytes())
    }

    pub fn canonical(&self) -> String {
        to_canonical(self)
    }
}
