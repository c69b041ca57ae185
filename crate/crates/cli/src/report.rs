use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use tmf7::certificate::{Status, Witness};

use crate::registry::{registry, CheckSpec};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub module: String,
    pub reference: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub status: Status,
    pub requested_precision: i64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let prec = c.precision.map(|p| format!(" (q^{})", p)).unwrap_or_default();
            out.push_str(&format!("{} {}{}\n", tag, c.name, prec));
            for f in &c.failures {
                out.push_str(&format!("    failure: {}\n", f));
            }
            for n in &c.notes {
                out.push_str(&format!("    note: {}\n", n));
            }
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{}/{} checks passed\n", passed, self.checks.len()));
        out
    }
}

#[derive(Debug)]
pub struct UnknownCheck(pub String);

pub fn select(names: &[String]) -> Result<Vec<CheckSpec>, UnknownCheck> {
    let all = registry();
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(all);
    }
    let mut out = Vec::new();
    for n in names {
        match all.iter().find(|s| s.name == n) {
            Some(s) => out.push(*s),
            None => return Err(UnknownCheck(n.clone())),
        }
    }
    out.sort_by_key(|s| s.name);
    out.dedup_by_key(|s| s.name);
    Ok(out)
}

fn run_one(spec: &CheckSpec, prec: i64) -> CheckResult {
    let effective = spec.min_prec.map(|m| m.max(prec));
    let start = Instant::now();
    let mut cert = (spec.run)(effective.unwrap_or(prec));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    if let Some(p) = effective {
        cert.with_precision(p);
    }
    CheckResult {
        name: spec.name.to_string(),
        module: spec.module.to_string(),
        reference: spec.reference.to_string(),
        status: cert.status,
        precision: cert.precision,
        degree_bound: cert.degree_bound,
        witnesses: cert.witnesses,
        failures: cert.failures,
        notes: cert.notes,
        elapsed_ms,
    }
}

/// Runs the selected checks on a pool of `jobs` workers. Each check gets at
/// least its declared minimum precision.
pub fn run_checks(names: &[String], prec: i64, jobs: usize) -> Result<Report, UnknownCheck> {
    let specs = select(names)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut checks: Vec<CheckResult> =
        pool.install(|| specs.par_iter().map(|s| run_one(s, prec)).collect());
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let status = if checks.iter().all(|c| c.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        status,
        requested_precision: prec,
        checks,
    })
}
