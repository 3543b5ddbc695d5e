use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn hooks(args: &[&str]) -> Output {
    hooks_with(args, &[], None)
}

fn hooks_with(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hooks"));
    cmd.args(args).env_remove("HOOKS_MAX_R");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = hooks(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn verify_range_passes() {
    let out = ok(&["verify", "--r", "2..5"]);
    assert!(out.contains("r = 5"));
    assert!(!out.contains("FAIL"));
    assert!(out.ends_with("44 of 44 checks passed\n"));
}

#[test]
fn verify_single_identity_as_json() {
    let out = ok(&[
        "verify",
        "--r",
        "4",
        "--only",
        "l_equals_r",
        "--format",
        "json",
    ]);
    let report: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(report["r"], 4);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "l_equals_r");
    assert_eq!(checks[0]["passed"], true);
}

#[test]
fn verify_only_takes_a_list() {
    let out = ok(&[
        "verify",
        "--r",
        "3..4",
        "--only",
        "hook_length,cayley_count",
        "--format",
        "json",
    ]);
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        assert_eq!(l["checks"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "--r", "1"][..],
        &["verify", "--r", "5..3"],
        &["verify", "--r", "8"],
        &["verify", "--r", "3", "--only", "nope"],
    ] {
        let o = hooks(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = hooks_with(&["verify", "--r", "4"], &[("HOOKS_MAX_R", "3")], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("HOOKS_MAX_R"));
}

#[test]
fn encode_worked_example() {
    let out = ok(&[
        "encode",
        "--pi",
        &fixture("worked_pi.json"),
        "--tree",
        &fixture("worked_tree.json"),
    ]);
    assert_eq!(out, read_fixture("worked_c.json"));
    assert_eq!(out, "[4,5]\n");
}

#[test]
fn encode_two_blocks_gives_empty_code() {
    let out = ok(&[
        "encode",
        "--pi",
        r#"{"blocks":[[1],[2,3]]}"#,
        "--tree",
        r#"{"vertices":[1,2,3],"father":{"2":1,"3":2}}"#,
    ]);
    assert_eq!(out, "[]\n");
}

#[test]
fn encode_names_the_broken_block() {
    let o = hooks(&[
        "encode",
        "--pi",
        r#"{"blocks":[[1],[2,3]]}"#,
        "--tree",
        r#"{"vertices":[1,2,3],"father":{"2":1,"3":1}}"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("block [2, 3] is not a subchain"));
}

#[test]
fn decode_worked_example() {
    let out = ok(&["decode", "--pi", &fixture("worked_pi.json"), "--c", "4,5"]);
    assert_eq!(out, read_fixture("worked_tree.json"));
    let out = ok(&[
        "decode",
        "--pi",
        &fixture("worked_pi.json"),
        "--c",
        &fixture("worked_c.json"),
    ]);
    assert_eq!(out, read_fixture("worked_tree.json"));
}

#[test]
fn decode_trace_matches_golden_stages() {
    let out = ok(&[
        "decode",
        "--pi",
        &fixture("worked_pi.json"),
        "--c",
        "[4,5]",
        "--trace",
    ]);
    assert_eq!(out, read_fixture("worked_trace.jsonl"));
}

#[test]
fn decode_two_blocks() {
    let out = ok(&["decode", "--pi", r#"{"blocks":[[1],[2]]}"#, "--c", ""]);
    assert_eq!(out, "{\"vertices\":[1,2],\"father\":{\"2\":1}}\n");
}

#[test]
fn decode_accepts_bundled_document_on_stdin() {
    let doc = format!(
        r#"{{"pi":{},"c":[4,5]}}"#,
        read_fixture("worked_pi.json").trim()
    );
    let o = hooks_with(&["decode", "--pi", "-"], &[], Some(&doc));
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), read_fixture("worked_tree.json"));
}

#[test]
fn decode_out_of_range_names_the_index() {
    let o = hooks(&["decode", "--pi", &fixture("worked_pi.json"), "--c", "7,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("c_2 = 7 is out of range 1..=6"));
}

#[test]
fn decode_requires_a_code() {
    let o = hooks(&["decode", "--pi", &fixture("worked_pi.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unreadable_input_is_a_usage_error() {
    let o = hooks(&["encode", "--pi", "/nonexistent/pi.json", "--tree", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_domain_error() {
    let o = hooks(&["decode", "--pi", r#"{"blocks":[[1],[1,2]]}"#, "--c", ""]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_counts() {
    assert_eq!(ok(&["enumerate", "trees", "--r", "4", "--count"]), "6\n");
    assert_eq!(
        ok(&["enumerate", "partitions", "--r", "5", "--count"]),
        "15\n"
    );
    let pi = fixture("worked_pi.json");
    assert_eq!(ok(&["enumerate", "C", "--pi", &pi, "--count"]), "48\n");
    assert_eq!(ok(&["enumerate", "E", "--pi", &pi, "--count"]), "48\n");
}

#[test]
fn enumerate_streams_distinct_lines() {
    let out = ok(&["enumerate", "trees", "--r", "5"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 24);
    let distinct: std::collections::BTreeSet<_> = lines.iter().collect();
    assert_eq!(distinct.len(), 24);
    assert_eq!(out, ok(&["enumerate", "trees", "--r", "5"]));
}

#[test]
fn enumerate_usage_errors() {
    for args in [
        &["enumerate", "trees", "--r", "10"][..],
        &["enumerate", "partitions", "--r", "1"],
        &["enumerate", "trees"],
        &["enumerate", "C"],
        &["enumerate", "stars", "--r", "3"],
    ] {
        assert_eq!(hooks(args).status.code(), Some(2), "{args:?}");
    }
    let o = hooks_with(
        &["enumerate", "trees", "--r", "10", "--count"],
        &[("HOOKS_MAX_R", "10")],
        None,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "362880\n");
}

#[test]
fn encode_inverts_decode_up_to_six() {
    let dir = std::env::temp_dir().join(format!("hooks-cli-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut pairs = 0;
    for r in 2..=6 {
        let r = r.to_string();
        for (i, pi) in ok(&["enumerate", "partitions", "--r", &r])
            .lines()
            .enumerate()
        {
            let pi_path = dir.join(format!("pi_{r}_{i}.json"));
            std::fs::write(&pi_path, pi).unwrap();
            let pi_path = pi_path.to_str().unwrap();
            let codes = ok(&["enumerate", "C", "--pi", pi_path]);
            let trees = ok(&["enumerate", "E", "--pi", pi_path]);
            assert_eq!(codes.lines().count(), trees.lines().count(), "{pi}");
            for c in codes.lines() {
                let tree = ok(&["decode", "--pi", pi_path, "--c", c]);
                let back = ok(&["encode", "--pi", pi_path, "--tree", tree.trim()]);
                assert_eq!(back.trim(), c, "{pi} {tree}");
                assert!(trees.lines().any(|t| t == tree.trim()));
                pairs += 1;
            }
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(pairs > 100);
}

#[test]
fn demo_text_and_json() {
    let text = ok(&["demo"]);
    for heading in [
        "== decomposition",
        "== splice",
        "== bijection",
        "== irreducible",
    ] {
        assert!(text.contains(heading), "{heading}");
    }
    assert!(text.contains("encoding the result gives back (4,5)"));
    let json = ok(&["demo", "--format", "json"]);
    let sections: Vec<serde_json::Value> = json
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(sections.len(), 4);
    let stages = &sections[2]["value"]["stages"];
    let golden: Vec<serde_json::Value> = read_fixture("worked_trace.jsonl")
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(stages.as_array().unwrap(), &golden);
}
