//! Built-in scenarios, each run through the same pipeline as problem files.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::canonical::canonical;
use crate::commands::{write_certificate, write_problem};
use crate::error::CliError;
use crate::files::{ProblemFile, Task, SCHEMA_VERSION};
use crate::load::load_hom;
use crate::run::{recheck_pair, run_problem, Outcome, RunOptions};

pub const REGISTRY: [&str; 6] =
    ["elliptic-counterexample", "unipotent-poly", "series-lift", "aut-decompose", "derivation-m2", "flip-m2"];

pub struct DemoRun {
    pub outcome: Outcome,
    pub lines: Vec<String>,
    pub problem_path: PathBuf,
    pub certificate_path: PathBuf,
}

fn term(e: u32, c: &str) -> Value {
    json!({"exponents": [e], "coef": c})
}

fn poly(terms: &[(u32, &str)]) -> Value {
    Value::Array(terms.iter().map(|(e, c)| term(*e, c)).collect())
}

fn curve(a: &[(u32, &str)], b: &[(u32, &str)]) -> Value {
    json!({"a": poly(a), "b": poly(b)})
}

fn problem(task: Task, payload: Value) -> ProblemFile {
    ProblemFile { schema_version: SCHEMA_VERSION, task, field: "Q".into(), seed: None, trials: None, problem: payload }
}

fn series(order: usize, coeffs: &[&str]) -> Value {
    Value::Array((0..order).map(|i| json!(coeffs.get(i).copied().unwrap_or("0"))).collect())
}

/// The problem document a demo runs.
pub fn demo_problem(name: &str) -> Option<ProblemFile> {
    let unipotent_poly = json!([poly(&[(0, "1")]), poly(&[(1, "1")]), poly(&[]), poly(&[(0, "1")])]);
    Some(match name {
        "elliptic-counterexample" => {
            // a = [[y, x], [x², y]]
            let (x, y, x2) = (curve(&[(1, "1")], &[]), curve(&[], &[(0, "1")]), curve(&[(2, "1")], &[]));
            problem(Task::Solve, json!({"r": {"matrix": 2}, "s": {"family": "curve"}, "conjugate_by": [y, x, x2, y]}))
        }
        "unipotent-poly" => problem(
            Task::Solve,
            json!({"r": {"matrix": 2}, "s": {"family": "poly", "vars": 1}, "conjugate_by": unipotent_poly}),
        ),
        "series-lift" => series_problem(8),
        "aut-decompose" => problem(
            Task::DecomposeAut,
            json!({
                "n": 2,
                "s": {"family": "poly", "vars": 1},
                "conjugate_by": unipotent_poly,
                "sigma": [poly(&[(1, "1"), (0, "1")])],
            }),
        ),
        "derivation-m2" => problem(Task::Derivation, json!({"r": {"matrix": 2}, "inner_by": ["0", "1", "0", "0"]})),
        "flip-m2" => problem(Task::FlipCheck, json!({"r": {"matrix": 2}})),
        _ => return None,
    })
}

/// φ = Inn(I + ξ·e₁₂) over Q[[ξ]]/(ξ^order).
fn series_problem(order: usize) -> ProblemFile {
    let (one, zero, tau) = (series(order, &["1"]), series(order, &[]), series(order, &["0", "1"]));
    problem(
        Task::Solve,
        json!({
            "r": {"matrix": 2},
            "s": {"family": "series", "base": {"family": "field"}, "order": order},
            "conjugate_by": [one, tau, zero, one],
        }),
    )
}

/// c reduced mod ξ^m, from the elements of a series certificate.
pub fn truncate_series_tensor(c: &Value, m: usize) -> Value {
    let coords = c.as_array().expect("tensor array");
    Value::Array(
        coords
            .iter()
            .map(|s| Value::Array(s.as_array().expect("series array").iter().take(m).cloned().collect()))
            .collect(),
    )
}

pub fn run_demo(name: &str, out_dir: &Path, opts: &RunOptions) -> Result<DemoRun, CliError> {
    let p = demo_problem(name)
        .ok_or_else(|| CliError::input("name", format!("unknown demo `{name}`; available: {}", REGISTRY.join(", "))))?;
    let outcome = run_problem(&p, opts)?;
    let cert = outcome.certificate.clone().expect("demos produce certificates");
    let mut lines = vec![format!("demo {name}")];

    if name == "elliptic-counterexample" {
        let loaded = load_hom(&p)?;
        lines.push("φ(e_ij) = a·e_ij·a⁻¹, a = [[y, x], [x², y]] over S = Q[x,y]/(y² − x³ − x):".into());
        for (k, img) in loaded.hom.images().iter().enumerate() {
            lines.push(format!("  φ({}) = {}", loaded.ring.r().labels()[k], loaded.ring.render(img)));
        }
        lines.push("all 4 images lie in M₂(S): the homomorphism is well defined".into());
    }
    lines.extend(outcome.lines.iter().cloned());

    if name == "series-lift" {
        let short = run_problem(&series_problem(4), opts)?;
        let short_c = &short.certificate.as_ref().expect("certificate").elements["c"];
        let reduced = truncate_series_tensor(&cert.elements["c"], 4);
        let coherent = canonical(&reduced) == canonical(short_c);
        lines.push(format!(
            "coherence: c mod ξ⁴ from N = 8 {} the N = 4 certificate (canonical bytes)",
            if coherent { "equals" } else { "DIFFERS FROM" }
        ));
        if !coherent {
            return Err(CliError::Recheck("truncation coherence failed".into()));
        }
    }

    let recheck = recheck_pair(&p, &cert)?;
    lines.push(format!("recheck: {} checks passed", recheck.len()));

    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let problem_path = out_dir.join(format!("{name}.problem.json"));
    let certificate_path = out_dir.join(format!("{name}.cert.json"));
    write_problem(&problem_path, &p)?;
    write_certificate(&certificate_path, &cert)?;
    lines.push(format!("wrote {} and {}", problem_path.display(), certificate_path.display()));
    Ok(DemoRun { outcome, lines, problem_path, certificate_path })
}
