//! Reading partitions, trees and codes from paths, inline JSON or stdin.

use std::fs;
use std::io::{self, Read};

use hooks_core::{CTuple, RootedTree, SetPartition, Vertex};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::{CliError, CliResult};

/// The text behind an argument: stdin for `-`, the argument itself when it
/// looks like JSON, otherwise the contents of the named file.
pub fn load(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Read {
                path: "<stdin>".into(),
                source,
            })?;
        return Ok(s);
    }
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|source| CliError::Read {
        path: arg.to_string(),
        source,
    })
}

fn parse<T: DeserializeOwned>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Domain(e.into()))
}

fn load_value(arg: &str) -> CliResult<Value> {
    serde_json::from_str(&load(arg)?).map_err(|e| CliError::Domain(e.into()))
}

/// Unwraps `{"key": inner, ..}` when present, otherwise returns `v` as is.
fn field(v: Value, key: &str) -> (Value, Option<Value>) {
    match v {
        Value::Object(mut m) if m.contains_key(key) => {
            let inner = m.remove(key).expect("checked");
            (inner, Some(Value::Object(m)))
        }
        other => (other, None),
    }
}

/// A partition, plus the code when the argument was a `{"pi", "c"}` document.
pub fn partition(arg: &str) -> CliResult<(SetPartition, Option<CTuple>)> {
    let (pi, rest) = field(load_value(arg)?, "pi");
    let c = match rest {
        Some(Value::Object(mut m)) => m.remove("c").map(parse).transpose()?,
        _ => None,
    };
    Ok((parse(pi)?, c))
}

pub fn tree(arg: &str) -> CliResult<RootedTree> {
    parse(field(load_value(arg)?, "tree").0)
}

fn code_list(t: &str) -> CliResult<CTuple> {
    let entries = t
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<Vertex>()
                .map_err(|e| CliError::Usage(format!("bad code entry {s:?}: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(CTuple::new(entries))
}

fn is_list(t: &str) -> bool {
    t.chars()
        .all(|ch| ch.is_ascii_digit() || ch == ',' || ch.is_whitespace())
}

/// A code written as `4,5`, `[4,5]`, an empty string, or a file holding
/// either form.
pub fn code(arg: &str) -> CliResult<CTuple> {
    if is_list(arg) {
        return code_list(arg);
    }
    let raw = load(arg)?;
    let t = raw.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v = serde_json::from_str(t).map_err(|e| CliError::Domain(e.into()))?;
        parse(field(v, "c").0)
    } else {
        code_list(t)
    }
}
