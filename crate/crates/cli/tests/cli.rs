use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use snforge_cli::canonical::canonical;
use snforge_cli::commands::{cmd_recheck, cmd_solve, read_certificate, read_problem, write_certificate};
use snforge_cli::demos::{demo_problem, run_demo, REGISTRY};
use snforge_cli::error::CliError;
use snforge_cli::files::{CertificateFile, ProblemFile, StatusJson};
use snforge_cli::run::{run_problem, RunOptions};
use tempfile::TempDir;

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn problem(name: &str) -> PathBuf {
    problems_dir().join(name)
}

fn snforge(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snforge"))
        .args(args)
        .current_dir(cwd)
        .env_remove("SNFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn identity_problem() -> Value {
    serde_json::from_str(&std::fs::read_to_string(problem("identity-m2-rationals.json")).unwrap()).unwrap()
}

#[test]
fn problem_files_round_trip_byte_identically() {
    for entry in std::fs::read_dir(problems_dir()).unwrap() {
        let path = entry.unwrap().path();
        let p = read_problem(&path).unwrap();
        let once = p.canonical();
        let again = ProblemFile::parse(serde_json::from_str(&once).unwrap()).unwrap().canonical();
        assert_eq!(once, again, "{}", path.display());
        let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(once, canonical(&raw), "{}", path.display());
    }
}

#[test]
fn certificates_round_trip_byte_identically() {
    let dir = TempDir::new().unwrap();
    for name in REGISTRY {
        let run = run_demo(name, dir.path(), &RunOptions::default()).unwrap();
        let cert = read_certificate(&run.certificate_path).unwrap();
        let text = std::fs::read_to_string(&run.certificate_path).unwrap();
        assert_eq!(text.trim_end(), cert.canonical());
        let again = CertificateFile::parse(serde_json::from_str(&cert.canonical()).unwrap()).unwrap();
        assert_eq!(again, cert);
        let p = read_problem(&run.problem_path).unwrap();
        assert_eq!(p, demo_problem(name).unwrap());
    }
}

#[test]
fn identity_solves_to_the_unit() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("id.cert.json");
    let (outcome, written) =
        cmd_solve(&problem("identity-m2-rationals.json"), Some(&out), &RunOptions::default()).unwrap();
    assert_eq!(outcome.exit_code(), 0);
    assert_eq!(written.as_deref(), Some(out.as_path()));
    let cert = read_certificate(&out).unwrap();
    assert_eq!(cert.status, StatusJson::Inner);
    let one = json!([["1"], ["0"], ["0"], ["1"]]);
    let flat: Vec<Value> = cert.elements["c"].as_array().unwrap().iter().map(|x| json!([x])).collect();
    assert_eq!(Value::Array(flat), one);
    assert_eq!(cmd_recheck(&problem("identity-m2-rationals.json"), &out).unwrap().len(), 6);
}

#[test]
fn exit_codes_follow_the_status() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("identity-m2-rationals.json", "solve", 0),
        ("companion-poly2.json", "solve", 0),
        ("quaternion-f13.json", "solve", 0),
        ("triangular-findim.json", "solve", 0),
        ("free-algebra.json", "solve", 3),
        ("flip-upper-triangular.json", "flip-check", 2),
        ("derivation-quaternion.json", "derivation", 0),
    ];
    for (file, cmd, expected) in cases {
        let path = problem(file);
        let o = snforge(&[cmd, path.to_str().unwrap()], dir.path());
        assert_eq!(code(&o), expected, "{file}: {}", String::from_utf8_lossy(&o.stderr));
        let stem = file.trim_end_matches(".json");
        let cert = dir.path().join(format!("{stem}.cert.json"));
        let r = snforge(&["recheck", path.to_str().unwrap(), cert.to_str().unwrap()], dir.path());
        assert_eq!(code(&r), 0, "recheck {file}: {}", String::from_utf8_lossy(&r.stderr));
    }
}

#[test]
fn free_algebra_is_out_of_scope() {
    let dir = TempDir::new().unwrap();
    let o = snforge(&["solve", problem("free-algebra.json").to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("Sylvester-domain"));
}

#[test]
fn demos_exit_by_status() {
    let dir = TempDir::new().unwrap();
    for name in REGISTRY {
        let o = snforge(&["demo", name, "--out-dir", dir.path().to_str().unwrap()], dir.path());
        let expected = if name == "elliptic-counterexample" { 2 } else { 0 };
        assert_eq!(code(&o), expected, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(dir.path().join(format!("{name}.cert.json")).exists());
    }
    let o = snforge(&["demo", "no-such-demo"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("series-lift"));
}

#[test]
fn elliptic_demo_prints_images_and_branches() {
    let dir = TempDir::new().unwrap();
    let o = snforge(&["demo", "elliptic-counterexample", "--out-dir", "."], dir.path());
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("det(a) = x"), "{out}");
    assert!(out.contains("φ(e12) = "));
    for branch in ["q=0", "p=0", "pq!=0"] {
        assert!(out.contains(&format!("branch {branch}:")), "{out}");
    }
}

#[test]
fn flip_demo_prints_the_swap() {
    let dir = TempDir::new().unwrap();
    let o = snforge(&["demo", "flip-m2", "--out-dir", "."], dir.path());
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("c = e11⊗e11 + e12⊗e21 + e21⊗e12 + e22⊗e22"), "{out}");
}

#[test]
fn corrupted_inverse_fails_recheck() {
    let dir = TempDir::new().unwrap();
    let path = problem("identity-m2-rationals.json");
    let cert_path = dir.path().join("id.cert.json");
    cmd_solve(&path, Some(&cert_path), &RunOptions::default()).unwrap();
    let mut cert = read_certificate(&cert_path).unwrap();
    cert.elements["c_inv"][0] = json!("2");
    write_certificate(&cert_path, &cert).unwrap();
    let err = cmd_recheck(&path, &cert_path).unwrap_err();
    assert!(matches!(err, CliError::Recheck(_)), "{err}");
    assert_eq!(err.exit_code(), 4);

    let o = snforge(&["recheck", path.to_str().unwrap(), cert_path.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("c⁻¹"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn tampered_transcript_fails_recheck() {
    let dir = TempDir::new().unwrap();
    let path = problem("identity-m2-rationals.json");
    let cert_path = dir.path().join("id.cert.json");
    cmd_solve(&path, Some(&cert_path), &RunOptions::default()).unwrap();
    let mut cert = read_certificate(&cert_path).unwrap();
    cert.seed += 1;
    write_certificate(&cert_path, &cert).unwrap();
    assert_eq!(cmd_recheck(&path, &cert_path).unwrap_err().exit_code(), 4);
}

#[test]
fn cross_wired_certificate_fails_recheck() {
    let dir = TempDir::new().unwrap();
    let run = run_demo("unipotent-poly", dir.path(), &RunOptions::default()).unwrap();
    let other = problem("companion-poly2.json");
    let err = cmd_recheck(&other, &run.certificate_path).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    assert!(err.to_string().contains("digest mismatch"), "{err}");

    let o = snforge(&["recheck", other.to_str().unwrap(), run.certificate_path.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("digest mismatch"));
}

#[test]
fn unknown_fields_are_rejected_with_a_path() {
    let dir = TempDir::new().unwrap();
    let mut v = identity_problem();
    v["problem"]["s"]["colour"] = json!(3);
    let p = write(dir.path(), "bad.json", &v);
    let o = snforge(&["solve", p.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("problem.s") && err.contains("colour"), "{err}");

    let mut v = identity_problem();
    v["extra"] = json!(true);
    let p = write(dir.path(), "bad2.json", &v);
    let o = snforge(&["solve", p.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("extra"));
}

#[test]
fn malformed_values_name_their_path() {
    let dir = TempDir::new().unwrap();
    let mut v = identity_problem();
    v["problem"]["images"][1][1] = json!("x");
    let p = write(dir.path(), "bad.json", &v);
    let o = snforge(&["solve", p.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("problem.images[1][1]"));

    let mut v = identity_problem();
    v["schema_version"] = json!(7);
    let p = write(dir.path(), "bad3.json", &v);
    assert_eq!(code(&snforge(&["solve", p.to_str().unwrap()], dir.path())), 1);

    assert_eq!(code(&snforge(&["solve", "missing.json"], dir.path())), 1);
}

#[test]
fn non_homomorphisms_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let mut v = identity_problem();
    v["problem"]["images"][0] = json!(["0", "1", "0", "0"]);
    let p = write(dir.path(), "nothom.json", &v);
    let o = snforge(&["solve", p.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("problem.images"));
}

#[test]
fn wrong_task_for_command_is_rejected() {
    let dir = TempDir::new().unwrap();
    let o = snforge(&["flip-check", problem("identity-m2-rationals.json").to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 1);
}

#[test]
fn seed_precedence() {
    let p = read_problem(&problem("quaternion-f13.json")).unwrap();
    let seed = |opts: RunOptions| run_problem(&p, &opts).unwrap().certificate.unwrap().seed;
    assert_eq!(seed(RunOptions { default_seed: 99, ..Default::default() }), 11);
    assert_eq!(seed(RunOptions { seed: Some(4), default_seed: 99, ..Default::default() }), 4);
    let id = read_problem(&problem("identity-m2-rationals.json")).unwrap();
    let cert = run_problem(&id, &RunOptions { default_seed: 99, ..Default::default() }).unwrap().certificate.unwrap();
    assert_eq!(cert.seed, 99);

    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_snforge"))
        .args(["solve", problem("identity-m2-rationals.json").to_str().unwrap()])
        .current_dir(dir.path())
        .env("SNFORGE_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let cert = read_certificate(&dir.path().join("identity-m2-rationals.cert.json")).unwrap();
    assert_eq!(cert.seed, 17);
}

#[test]
fn solving_is_deterministic() {
    let p = read_problem(&problem("triangular-findim.json")).unwrap();
    let a = run_problem(&p, &RunOptions::default()).unwrap().certificate.unwrap();
    let b = run_problem(&p, &RunOptions::default()).unwrap().certificate.unwrap();
    assert_eq!(a.canonical(), b.canonical());
}

#[test]
fn flags_are_honored() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "u.json", &serde_json::to_value(demo_problem("unipotent-poly").unwrap()).unwrap());
    let o = snforge(&["solve", p.to_str().unwrap(), "--emit-coefficients", "-o", "u.cert.json"], dir.path());
    assert_eq!(code(&o), 0);
    let cert = read_certificate(&dir.path().join("u.cert.json")).unwrap();
    assert!(cert.elements.get("coefficients").is_some());
    assert_eq!(code(&snforge(&["recheck", "u.json", "u.cert.json"], dir.path())), 0);

    let o = snforge(&["solve", "u.json", "--backend", "curve", "-o", "v.cert.json"], dir.path());
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));

    let o = snforge(&["solve", "u.json", "--backend", "findim", "-o", "w.cert.json"], dir.path());
    assert_eq!(code(&o), 3);

    let o = snforge(&["solve", "u.json", "--backend", "bogus"], dir.path());
    assert_eq!(code(&o), 2, "clap usage errors exit 2");
}

#[test]
fn trials_flag_bounds_the_search() {
    let dir = TempDir::new().unwrap();
    let o = snforge(
        &["solve", problem("triangular-findim.json").to_str().unwrap(), "--trials", "5", "-o", "t.cert.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let cert = read_certificate(&dir.path().join("t.cert.json")).unwrap();
    assert!(cert.trials <= 5);
}

#[test]
fn writes_leave_no_temporaries() {
    let dir = TempDir::new().unwrap();
    run_demo("derivation-m2", dir.path(), &RunOptions::default()).unwrap();
    let names: Vec<_> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names.len(), 2, "{names:?}");
}

#[test]
fn schema_subcommand_prints_json() {
    let dir = TempDir::new().unwrap();
    for kind in ["problem", "certificate"] {
        let o = snforge(&["schema", kind], dir.path());
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["properties"]["schema_version"]["const"], json!(1));
    }
}

#[test]
fn recheck_task_runs_an_embedded_pair() {
    let dir = TempDir::new().unwrap();
    let run = run_demo("aut-decompose", dir.path(), &RunOptions::default()).unwrap();
    let problem: Value = serde_json::from_str(&std::fs::read_to_string(&run.problem_path).unwrap()).unwrap();
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&run.certificate_path).unwrap()).unwrap();
    let wrapper = json!({
        "schema_version": 1, "task": "recheck", "field": "Q",
        "problem": {"problem": problem, "certificate": cert},
    });
    let p = write(dir.path(), "pair.json", &wrapper);
    assert_eq!(code(&snforge(&["solve", p.to_str().unwrap()], dir.path())), 0);
}
