//! File-level commands behind the subcommands.

use std::path::{Path, PathBuf};

use crate::canonical::{read_json, write_atomic};
use crate::error::CliError;
use crate::files::{CertificateFile, ProblemFile, Task};
use crate::run::{recheck_pair, run_problem, Outcome, RunOptions};

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    ProblemFile::parse(read_json(path)?).map_err(|e| locate(path, e))
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile, CliError> {
    CertificateFile::parse(read_json(path)?).map_err(|e| locate(path, e))
}

fn locate(file: &Path, e: CliError) -> CliError {
    match e {
        CliError::Input { path, message } => CliError::Input { path: format!("{}: {path}", file.display()), message },
        other => other,
    }
}

/// `<stem>.cert.json` in the current directory.
pub fn default_certificate_path(problem: &Path) -> PathBuf {
    let stem = problem.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "problem".into());
    PathBuf::from(format!("{stem}.cert.json"))
}

pub fn write_certificate(path: &Path, cert: &CertificateFile) -> Result<(), CliError> {
    write_atomic(path, &(cert.canonical() + "\n"))
}

pub fn write_problem(path: &Path, p: &ProblemFile) -> Result<(), CliError> {
    write_atomic(path, &(p.canonical() + "\n"))
}

/// Runs a problem file; `expect` restricts the accepted tasks.
pub fn cmd_run(
    problem: &Path,
    out: Option<&Path>,
    opts: &RunOptions,
    expect: &[Task],
) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let p = read_problem(problem)?;
    if !expect.contains(&p.task) {
        let names: Vec<_> = expect.iter().map(|t| t.name()).collect();
        return Err(CliError::input(
            "task",
            format!("this command runs {} problems, not {}", names.join(" or "), p.task.name()),
        ));
    }
    let outcome = run_problem(&p, opts).map_err(|e| locate(problem, e))?;
    let written = match &outcome.certificate {
        Some(cert) => {
            let path = out.map(Path::to_path_buf).unwrap_or_else(|| default_certificate_path(problem));
            write_certificate(&path, cert)?;
            Some(path)
        }
        None => None,
    };
    Ok((outcome, written))
}

pub fn cmd_solve(
    problem: &Path,
    out: Option<&Path>,
    opts: &RunOptions,
) -> Result<(Outcome, Option<PathBuf>), CliError> {
    cmd_run(problem, out, opts, &[Task::Solve, Task::Validate, Task::Recheck])
}

/// Exit 0 iff every claim re-verifies; failures are [`CliError::Recheck`].
pub fn cmd_recheck(problem: &Path, certificate: &Path) -> Result<Vec<String>, CliError> {
    let p = read_problem(problem)?;
    let cert = read_certificate(certificate)?;
    recheck_pair(&p, &cert)
}
