use std::env;
use std::io::Write;
use std::thread;

use hooks_core::identities::{self, IdentityReport, IDENTITY_NAMES};
use hooks_core::partitions::{enumerate_c_tuples, enumerate_partitions_singleton_one};
use hooks_core::{
    enumerate_e, enumerate_increasing_trees, psi_forward, psi_inverse, psi_trace, Vertex,
};
use serde::Serialize;

use crate::{input, CliError, CliResult, Format, Kind};

pub const VERIFY_CAP: usize = 7;
pub const ENUMERATE_CAP: usize = 9;

/// The size cap, overridden by `HOOKS_MAX_R` when set.
fn max_r(default: usize) -> CliResult<usize> {
    match env::var("HOOKS_MAX_R") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("HOOKS_MAX_R must be a number, got {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn check_size(r: usize, min: usize, cap: usize) -> CliResult {
    if r < min {
        return Err(CliError::Usage(format!(
            "r must be at least {min}, got {r}"
        )));
    }
    if r > cap {
        return Err(CliError::Usage(format!(
            "r = {r} exceeds the cap {cap} (raise it with HOOKS_MAX_R)"
        )));
    }
    Ok(())
}

/// Parses `5`, `2..5` or `2..=5` into an inclusive range.
pub fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad size range {s:?}")))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(CliError::Usage(format!("empty size range {s:?}")));
    }
    Ok((a, b))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    let line = serde_json::to_string(value).map_err(|e| CliError::Domain(e.into()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

pub fn verify(range: &str, only: &[String], format: Format, out: &mut dyn Write) -> CliResult {
    let cap = max_r(VERIFY_CAP)?;
    let (lo, hi) = parse_range(range)?;
    check_size(lo, 2, cap)?;
    check_size(hi, 2, cap)?;
    if let Some(bad) = only.iter().find(|n| !IDENTITY_NAMES.contains(&n.as_str())) {
        return Err(CliError::Usage(format!(
            "unknown identity {bad:?}; expected one of {}",
            IDENTITY_NAMES.join(", ")
        )));
    }
    let only = (!only.is_empty()).then_some(only);

    // One thread per size; results are printed in order once all finish.
    let reports: Vec<hooks_core::Result<IdentityReport>> = thread::scope(|s| {
        let handles: Vec<_> = (lo..=hi)
            .map(|r| s.spawn(move || identities::verify(r, only, cap)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });

    let mut failed = Vec::new();
    let mut total = 0;
    for report in reports {
        let report = report?;
        total += report.checks.len();
        for c in report.checks.iter().filter(|c| !c.passed) {
            failed.push(format!("{} at r = {}", c.name, report.r));
        }
        match format {
            Format::Json => json_line(out, &report)?,
            Format::Text => write_report(out, &report)?,
        }
    }
    if format == Format::Text {
        writeln!(out, "{} of {total} checks passed", total - failed.len())?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(format!(
            "identity check failed: {}",
            failed.join(", ")
        )))
    }
}

fn write_report(out: &mut dyn Write, report: &IdentityReport) -> CliResult {
    writeln!(out, "r = {}", report.r)?;
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "  {status}  {:<24}{:>10.1} ms", c.name, c.elapsed_ms)?;
        for w in &c.witness {
            writeln!(out, "        {w}")?;
        }
    }
    Ok(())
}

pub fn encode(pi: &str, tree: &str, out: &mut dyn Write) -> CliResult {
    let (pi, _) = input::partition(pi)?;
    let tree = input::tree(tree)?;
    json_line(out, &psi_inverse(&pi, &tree)?)
}

pub fn decode(pi: &str, c: Option<&str>, trace: bool, out: &mut dyn Write) -> CliResult {
    let (pi, bundled) = input::partition(pi)?;
    let c = match (c, bundled) {
        (Some(arg), _) => input::code(arg)?,
        (None, Some(c)) => c,
        (None, None) => return Err(CliError::Usage("--c is required".into())),
    };
    if trace {
        for stage in psi_trace(&pi, &c)? {
            json_line(out, &stage)?;
        }
        Ok(())
    } else {
        json_line(out, &psi_forward(&pi, &c)?)
    }
}

pub fn enumerate(
    kind: Kind,
    r: Option<usize>,
    pi: Option<&str>,
    count: bool,
    out: &mut dyn Write,
) -> CliResult {
    let cap = max_r(ENUMERATE_CAP)?;
    let need_r = || r.ok_or_else(|| CliError::Usage("--r is required".into()));
    let need_pi = || -> CliResult<_> {
        let arg = pi.ok_or_else(|| CliError::Usage("--pi is required".into()))?;
        let (pi, _) = input::partition(arg)?;
        check_size(pi.ground_set().len(), 1, cap)?;
        Ok(pi)
    };
    let n = match kind {
        Kind::Trees => {
            let r = need_r()?;
            check_size(r, 1, cap)?;
            emit(enumerate_increasing_trees(1..=r as Vertex)?, count, out)?
        }
        Kind::Partitions => {
            let r = need_r()?;
            check_size(r, 2, cap)?;
            emit(enumerate_partitions_singleton_one(r)?, count, out)?
        }
        Kind::E => {
            let pi = need_pi()?;
            let n = emit(enumerate_e(&pi)?, count, out)?;
            n
        }
        Kind::C => {
            let pi = need_pi()?;
            emit(enumerate_c_tuples(&pi)?, count, out)?
        }
    };
    if count {
        writeln!(out, "{n}")?;
    }
    Ok(())
}

fn emit<T: Serialize>(
    items: impl Iterator<Item = T>,
    count_only: bool,
    out: &mut dyn Write,
) -> CliResult<u64> {
    let mut n = 0;
    for item in items {
        if !count_only {
            json_line(out, &item)?;
        }
        n += 1;
    }
    Ok(n)
}
