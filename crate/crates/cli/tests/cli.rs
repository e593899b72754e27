use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: Option<&[u8]>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypertoric"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn hypertoric");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> Vec<u8> {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

fn names(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

const HEXAGON: &str = r#"{"schema":"walk","blue":["e11","e22","e33"],"red":["e12","e23","e31"]}"#;

#[test]
fn no_three_way_pipeline_gives_one_quartic() {
    let h = ok(&["family", "no3way", "2", "2", "2"], None);
    assert_eq!(json(&h)["schema"], "hypergraph");
    let basis = json(&ok(&["markov", "--cap", "4"], Some(&h)));
    assert_eq!(basis["schema"], "basis");
    assert_eq!(basis["count"], 1);
    assert_eq!(basis["elements"][0]["degree"], 4);
    assert_eq!(basis["incomplete"], false);
    let graver = json(&ok(&["graver", "--cap", "4"], Some(&h)));
    assert_eq!(graver["count"], 1);
}

#[test]
fn group_based_split_finds_the_printed_set() {
    let dir = TempDir::new().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        &ok(&["family", "groupbased16", "--walk"], None),
    );
    let h = ok(&["family", "groupbased16"], None);
    let doc = json(&ok(
        &["split", "--walk", w.to_str().unwrap(), "--size-cap", "2"],
        Some(&h),
    ));
    assert_eq!(doc["schema"], "certificate");
    let sets: Vec<Vec<&str>> = doc["found"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| names(&f["splitting_set"]))
        .collect();
    assert!(sets.contains(&vec!["e133", "e212"]), "{sets:?}");
}

#[test]
fn emitted_certificates_verify_and_tampering_fails() {
    let dir = TempDir::new().unwrap();
    let h = write(
        dir.path(),
        "h.json",
        &ok(&["family", "kpartite", "2", "3"], None),
    );
    let w = write(dir.path(), "w.json", HEXAGON.as_bytes());
    let (h, w) = (h.to_str().unwrap(), w.to_str().unwrap());
    for args in [
        vec!["certify", h, "--walk", w, "--d", "2"],
        vec!["certify", h, "--walk", w, "--d", "2", "--sequences-only"],
        vec!["split", h, "--walk", w],
    ] {
        let cert = ok(&args, None);
        let verdict = json(&ok(&["verify"], Some(&cert)));
        assert_eq!(verdict["valid"], true, "{args:?}");
    }

    let mut cert = json(&ok(&["certify", h, "--walk", w, "--d", "2"], None));
    let g1 = &mut cert["certificate"]["witness"]["decomposition"]["gamma1"];
    let moved = g1["blue"].as_array_mut().unwrap().remove(0);
    g1["red"].as_array_mut().unwrap().push(moved);
    let bad = write(dir.path(), "bad.json", cert.to_string().as_bytes());
    let out = run(&["verify", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["valid"], false);
}

#[test]
fn output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let h = write(
        dir.path(),
        "h.json",
        &ok(&["family", "kpartite", "2", "3"], None),
    );
    let w = write(dir.path(), "w.json", HEXAGON.as_bytes());
    let args = [
        "certify",
        h.to_str().unwrap(),
        "--walk",
        w.to_str().unwrap(),
        "--d",
        "2",
    ];
    let first = ok(&args, None);
    assert_eq!(first, ok(&args, None));
    let single = run_env(&args, None, &[("HYPERTORIC_THREADS", "1")]);
    assert!(single.status.success());
    assert_eq!(first, single.stdout);
}

#[test]
fn seed_is_recorded() {
    let doc = json(&ok(&["--seed", "42", "family", "cumulant", "4"], None));
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["family"]["family"], "cumulant");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["markov"], Some(b"not json")).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["markov", "--cap", "0"], None).status.code(), Some(2));
    assert_eq!(
        run(&["family", "no3way", "2", "2"], None).status.code(),
        Some(2)
    );
    let h = ok(&["family", "cumulant", "4"], None);
    assert_eq!(run(&["split"], Some(&h)).status.code(), Some(2));
    assert_eq!(run(&["verify"], Some(&h)).status.code(), Some(2));
    assert_eq!(run(&["markov"], Some(&h)).status.code(), Some(0));
    let bad_threads = run_env(
        &["family", "cumulant", "3"],
        None,
        &[("HYPERTORIC_THREADS", "zero")],
    );
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn strict_flags_cut_searches() {
    let dir = TempDir::new().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        &ok(&["family", "groupbased16", "--walk"], None),
    );
    let w = w.to_str().unwrap();
    let strict = run(&["split", w, "--size-cap", "2", "--strict"], None);
    assert_eq!(strict.status.code(), Some(3));
    assert_eq!(json(&strict.stdout)["exhaustive"], false);
    assert_eq!(
        run(&["split", w, "--size-cap", "2"], None).status.code(),
        Some(0)
    );
}

#[test]
fn slim_walk_is_indispensable_and_has_no_split() {
    let walk = ok(&["family", "slimwalk", "3", "3"], None);
    let doc = json(&ok(&["indispensable", "--cap", "6"], Some(&walk)));
    assert_eq!(doc["schema"], "binomial");
    assert_eq!(doc["degree"], 6);
    assert_eq!(doc["indispensable"], true);
    let split = json(&ok(&["split", "--exhaustive", "--strict"], Some(&walk)));
    assert_eq!(split["exhaustive"], true);
    assert!(split["found"].as_array().unwrap().is_empty());
    let width = json(&ok(
        &["width", "--cap", "4"],
        Some(&ok(&["family", "kpartite", "2", "3"], None)),
    ));
    assert_eq!(width["width"], 2);
}
