//! Verification suites: each one evaluates a list of independent identities
//! and returns check records sorted by id.

mod connections;
mod engine;
mod extended;
mod group;
mod limit;
mod plane;
mod tables;

use crate::error::{Error, Result};
use crate::par::{run_indexed, Exec};
use crate::report::{Check, Exact, Report, Status};

pub use engine::{random_ext_element, random_plane_poly, random_word};
pub use tables::{table, TABLES};

/// Default seed for randomized checks.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const SUITES: &[&str] = &[
    "plane-calculus",
    "sigma-braid",
    "connections",
    "symplectic",
    "qgroup",
    "extended",
    "three-calculus",
    "climit",
    "all",
];

/// Seed and execution strategy shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: DEFAULT_SEED, exec: Exec::default() }
    }
}

type JobFn = Box<dyn Fn(&Config) -> Result<Vec<Check>> + Send + Sync>;

/// A group of checks evaluated together; an error becomes an `error` record.
pub(crate) struct Job {
    id: String,
    eq: &'static str,
    run: JobFn,
}

pub(crate) fn job(
    id: impl Into<String>,
    eq: &'static str,
    run: impl Fn(&Config) -> Result<Vec<Check>> + Send + Sync + 'static,
) -> Job {
    Job { id: id.into(), eq, run: Box::new(run) }
}

fn jobs_for(name: &str) -> Result<Vec<Job>> {
    Ok(match name {
        "plane-calculus" => plane::calculus_jobs(),
        "sigma-braid" => plane::sigma_jobs(),
        "connections" => connections::connection_jobs(),
        "symplectic" => connections::symplectic_jobs(),
        "qgroup" => group::jobs(),
        "extended" => extended::extended_jobs(),
        "three-calculus" => extended::three_jobs(),
        "climit" => limit::jobs(),
        "all" => {
            let mut all = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                all.extend(jobs_for(s)?);
            }
            all
        }
        other => return Err(Error::Other(format!("unknown suite `{other}`"))),
    })
}

/// Run a suite by name.
pub fn run_suite(name: &str, cfg: &Config) -> Result<Report> {
    let jobs = jobs_for(name)?;
    let results = run_indexed(cfg.exec, jobs.len(), |i| {
        let j = &jobs[i];
        (j.run)(cfg).unwrap_or_else(|e| vec![Check::error(&j.id, j.eq, &e)])
    });
    Ok(Report::new(name, results.into_iter().flatten().collect()))
}

/// Pass iff every labelled value vanishes.
pub(crate) fn all_zero<T: Exact>(id: &str, eq: &str, items: &[(String, T)]) -> Check {
    let bad: Vec<String> = items.iter().filter(|(_, v)| !v.vanishes()).map(|(l, v)| format!("{l}: {v}")).collect();
    if bad.is_empty() {
        Check::new(id, eq, Status::Pass, format!("{} cases vanish", items.len()), "0".into(), "0".into())
    } else {
        let text = bad.join("; ");
        Check::new(id, eq, Status::Fail, text.clone(), "0".into(), text)
    }
}

/// Like [`all_zero`], but a failure is recorded as a reported counterexample.
pub(crate) fn claim_zero<T: Exact>(id: &str, eq: &str, items: &[(String, T)]) -> Check {
    demote(all_zero(id, eq, items))
}

pub(crate) fn demote(mut c: Check) -> Check {
    if c.status == Status::Fail {
        c.status = Status::Reported;
    }
    c
}

/// Pass iff some labelled value is nonzero.
pub(crate) fn some_nonzero<T: Exact>(id: &str, eq: &str, items: &[(String, T)]) -> Check {
    let bad: Vec<String> = items.iter().filter(|(_, v)| !v.vanishes()).map(|(l, v)| format!("{l}: {v}")).collect();
    let status = if bad.is_empty() { Status::Fail } else { Status::Pass };
    Check::new(id, eq, status, bad.join("; "), "nonzero".into(), bad.join("; "))
}

pub(crate) fn mat_text<T: std::fmt::Display>(rows: &[impl AsRef<[T]>]) -> String {
    let r: Vec<String> = rows
        .iter()
        .map(|row| format!("[{}]", row.as_ref().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", r.join(", "))
}
