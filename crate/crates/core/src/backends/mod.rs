//! Solvers producing verified conjugators, and the negative certifier for the
//! elliptic coordinate ring.

mod curve;
mod findim;
mod pid;
mod product;
mod recheck;
mod series;
mod ufd;

use std::fmt;
use std::str::FromStr;

pub use curve::{
    certify_not_inner_curve, curve_conjugation, Branch, BranchRefutation, CurveRefutation, RefutationReason,
};
pub use findim::{field_size_guard, find_conjugator, sample_window, solve_findim, Extended, Extension, SearchOutcome};
pub use pid::{hermite_normal_form, pid_factorization, solve_pid_module, Lemma82Report, PidData};
pub use product::solve_product;
pub use recheck::{is_square_yun, recheck, squarefree_decomposition};
pub use series::solve_power_series;
pub use ufd::solve_ufd;

use crate::algebras::TensorElement;
use crate::error::Error;
use crate::ground_rings::RingDescriptor;
use crate::sn_core::{extract_coefficients, CoefficientTuple, ConjugatorCheck, HomSpec};

pub const DEFAULT_TRIALS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Product,
    Series,
    FiniteDimensional,
    PidMatrix,
    Ufd,
    Curve,
}

impl Backend {
    pub const ALL: [Backend; 6] = [
        Backend::Product,
        Backend::Series,
        Backend::FiniteDimensional,
        Backend::PidMatrix,
        Backend::Ufd,
        Backend::Curve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Product => "product",
            Backend::Series => "power-series",
            Backend::FiniteDimensional => "findim",
            Backend::PidMatrix => "pid-matrix",
            Backend::Ufd => "ufd",
            Backend::Curve => "curve",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Backend::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| Error::Parse(format!("unknown backend `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Inner,
    NotInner,
    Unsupported,
    Exhausted,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Inner => "inner",
            Status::NotInner => "not-inner",
            Status::Unsupported => "unsupported",
            Status::Exhausted => "exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveRequest {
    pub hom: HomSpec,
    pub seed: u64,
    pub trials: u32,
    pub backend: Option<Backend>,
    /// A conjugator a over the fraction field with φ(x)·a = a·x, required
    /// by the curve certifier.
    pub presentation: Option<TensorElement>,
    pub emit_coefficients: bool,
}

impl SolveRequest {
    pub fn new(hom: HomSpec, seed: u64) -> Self {
        SolveRequest { hom, seed, trials: DEFAULT_TRIALS, backend: None, presentation: None, emit_coefficients: false }
    }

    /// Same options for another homomorphism (used for sub-problems).
    pub fn derive(&self, hom: HomSpec) -> Self {
        SolveRequest {
            hom,
            seed: self.seed,
            trials: self.trials,
            backend: None,
            presentation: None,
            emit_coefficients: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub status: Status,
    pub backend: Option<Backend>,
    pub seed: u64,
    pub conjugator: Option<ConjugatorCheck>,
    pub refutation: Option<CurveRefutation>,
    /// Trials used by a randomized search, or the exhausted bound.
    pub trials: u32,
    pub reason: Option<String>,
    pub coefficients: Option<CoefficientTuple>,
    /// Sub-solver trace, e.g. which backend handled each product factor.
    pub trace: Vec<String>,
}

impl Certificate {
    fn base(status: Status, backend: Option<Backend>, seed: u64) -> Self {
        Certificate {
            status,
            backend,
            seed,
            conjugator: None,
            refutation: None,
            trials: 0,
            reason: None,
            coefficients: None,
            trace: Vec::new(),
        }
    }

    pub fn inner(backend: Backend, seed: u64, check: ConjugatorCheck, trials: u32) -> Self {
        Certificate { conjugator: Some(check), trials, ..Self::base(Status::Inner, Some(backend), seed) }
    }

    pub fn not_inner(seed: u64, refutation: CurveRefutation) -> Self {
        Certificate { refutation: Some(refutation), ..Self::base(Status::NotInner, Some(Backend::Curve), seed) }
    }

    pub fn unsupported(backend: impl Into<Option<Backend>>, seed: u64, reason: &str) -> Self {
        Certificate { reason: Some(reason.to_string()), ..Self::base(Status::Unsupported, backend.into(), seed) }
    }

    pub fn exhausted(backend: Backend, seed: u64, trials: u32, reason: &str) -> Self {
        Certificate { trials, reason: Some(reason.to_string()), ..Self::base(Status::Exhausted, Some(backend), seed) }
    }

    pub fn c(&self) -> Option<&TensorElement> {
        self.conjugator.as_ref().map(|k| &k.c)
    }

    pub fn c_inv(&self) -> Option<&TensorElement> {
        self.conjugator.as_ref().map(|k| &k.c_inv)
    }

    /// Prefixes sub-solver traces and reasons with a label.
    fn nested(mut self, label: &str) -> Self {
        self.trace = self.trace.into_iter().map(|t| format!("{label}: {t}")).collect();
        if let Some(b) = self.backend {
            self.trace.insert(0, format!("{label}: {b}"));
        }
        self
    }
}

/// Families that no backend covers, with the reason.
pub fn out_of_scope(family: &str) -> Option<String> {
    let why = match family {
        "free-algebra" => "free algebras",
        "sylvester-domain" => "Sylvester domains",
        "hcrf-domain" => "HCRF domains",
        "bezout-domain" => "Bézout domains other than F[ξ]",
        _ => return None,
    };
    Some(format!(
        "{why} are out of scope: the Sylvester-domain, HCRF and free-algebra results rely on inner-rank \
         machinery that is not implemented"
    ))
}

/// The backend the capability flags select, or why none applies.
pub fn select_backend(s: &RingDescriptor) -> Result<Backend, String> {
    let caps = s.capabilities();
    if caps.is_product {
        return Ok(Backend::Product);
    }
    if caps.is_series {
        return Ok(Backend::Series);
    }
    if s.flat_dim().is_some() {
        return Ok(Backend::FiniteDimensional);
    }
    match s {
        RingDescriptor::Matrix { base, .. } => match base.as_ref() {
            RingDescriptor::Poly(p) if p.nvars == 1 => Ok(Backend::PidMatrix),
            RingDescriptor::Poly(_) => Err("matrix rings over multivariate polynomial rings need a constructive \
                 Quillen-Suslin step, which is not implemented"
                .into()),
            _ => Err(format!("no backend for matrix rings over {}", base.family())),
        },
        RingDescriptor::Poly(_) => Ok(Backend::Ufd),
        RingDescriptor::Curve(_) => Ok(Backend::Curve),
        _ => Err(format!("no backend for the {} family", s.family())),
    }
}

/// Runs the selected (or overridden) backend.
pub fn dispatch(req: &SolveRequest) -> Result<Certificate, Error> {
    let backend = match req.backend {
        Some(b) => b,
        None => match select_backend(req.hom.s()) {
            Ok(b) => b,
            Err(reason) => return Ok(Certificate::unsupported(None, req.seed, &reason)),
        },
    };
    let mut cert = match backend {
        Backend::Product => solve_product(req)?,
        Backend::Series => solve_power_series(req)?,
        Backend::FiniteDimensional => solve_findim(req)?,
        Backend::PidMatrix => solve_pid_module(req)?,
        Backend::Ufd => solve_ufd(req)?,
        Backend::Curve => certify_not_inner_curve(req)?,
    };
    if req.emit_coefficients && cert.status == Status::Inner && req.hom.central_simple().is_some() {
        cert.coefficients = Some(extract_coefficients(&req.hom)?);
    }
    Ok(cert)
}
