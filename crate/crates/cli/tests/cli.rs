use std::fs;
use std::process::Command;

use gassmann_cli::{cmd_export_dot, cmd_full, cmd_verify, DotArgs, FullArgs, GroupArgs, Outcome, PairArgs};
use gassmann_core::group::DEFAULT_CAP;
use gassmann_core::input::catalog;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gassmann"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = bin().args(args).env("NO_COLOR", "1").output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap()
}

fn group(name: &str) -> GroupArgs {
    GroupArgs {
        group: format!("catalog:{name}"),
        cap: DEFAULT_CAP,
    }
}

fn pair(name: &str) -> PairArgs {
    PairArgs {
        group: group(name),
        h1: None,
        h2: None,
    }
}

#[test]
fn verify_exit_codes() {
    let r = run(&["verify", "--group", "catalog:gl32"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["certificate"]["is_gassmann"], true);
    assert_eq!(v["certificate"]["conjugacy_witness"], Value::Null);
    assert_eq!(v["certificate"]["orders"]["index"], 7);

    let r = run(&["verify", "--group", "catalog:s4"]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_ne!(v["certificate"]["profile1"], v["certificate"]["profile2"]);
    assert!(v["verdict"]["reason"].as_str().unwrap().starts_with("not Gassmann"));

    let r = run(&["verify", "--group", "catalog:s3"]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["certificate"]["is_gassmann"], true);
    assert!(v["verdict"]["reason"].as_str().unwrap().starts_with("conjugate"));

    let r = run(&["verify", "--group", "catalog:gl32", "--h2", "missing"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("missing"));
}

#[test]
fn verify_labels_override_entry() {
    let r = run(&["verify", "--group", "catalog:gl32", "--h1", "plane", "--h2", "plane"]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["certificate"]["conjugacy_witness"], "()");
}

#[test]
fn bare_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    fs::write(
        &path,
        r#"{"name":"S4","degree":4,"generators":["(1 2 3 4)","(1 2)"],
            "subgroups":{"a":["(1 2)"],"b":["(3 4)"],"v":["(1 2)(3 4)","(1 3)(2 4)"]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["verify", "--group", p]).code, 2);
    assert_eq!(run(&["verify", "--group", p, "--h1", "a", "--h2", "b"]).code, 1);
    let r = run(&["full", "--group", p, "--h1", "a", "--h2", "b", "--gens", "(1 2 3 4),(1 2)"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["spectral"]["equal"], true);
    assert_eq!(v["graphs"]["generating_set"].as_array().unwrap().len(), 3);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"name":"x","degree":3,"generators":["(1 4)"]}"#).unwrap();
    let r = run(&["verify", "--group", bad.to_str().unwrap(), "--h1", "a", "--h2", "a"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("out of range"));
    fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["verify", "--group", bad.to_str().unwrap()]).code, 2);
    assert_eq!(run(&["verify", "--group", "catalog:nothing"]).code, 2);
}

#[test]
fn full_pipeline_on_catalog() {
    for name in ["gl32", "affine8"] {
        let r = run(&["full", "--group", &format!("catalog:{name}")]);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        let v = json(&r);
        assert_eq!(v["verdict"]["outcome"], "verified");
        assert_eq!(v["spectral"]["equal"], true);
        assert_eq!(v["zeta"]["equal"], true);
        assert_eq!(v["graphs"]["commutation"], true);
        assert_eq!(v["transplant"]["rank"], v["transplant"]["dim_source"]);
        assert!(v["transplant"]["commutation"].as_array().unwrap().iter().all(|c| c["commutes"] == true));
        assert!(v["unitary"]["residual"].as_f64().unwrap() < 1e-12);
        assert!(v.get("timings_ms").is_none());
    }
    let r = run(&["full", "--group", "catalog:s4"]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["stage_error"]["stage"], "intertwiner");
    assert!(v["stage_error"]["message"].as_str().unwrap().contains("no invertible intertwiner"));
    assert_eq!(v["intertwiner"], Value::Null);
    assert_eq!(v["spectral"], Value::Null);
}

#[test]
fn full_scan_refutes_s4() {
    let args = FullArgs {
        pair: pair("s4"),
        gens: None,
        seed: 0,
        scan: 10,
        timings: false,
    };
    let out = cmd_full(&args).unwrap();
    assert_eq!(out.outcome, Outcome::Refuted);
    let v: Value = serde_json::from_str(out.json.as_deref().unwrap()).unwrap();
    assert!(!v["scan"]["refuting"].as_array().unwrap().is_empty());
}

#[test]
fn full_is_byte_deterministic_and_timings_are_opt_in() {
    let args = ["full", "--group", "catalog:affine8", "--seed", "5", "--scan", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let timed = run(&["full", "--group", "catalog:affine8", "--timings"]);
    assert!(json(&timed)["timings_ms"]["intertwiner"].is_u64());
}

#[test]
fn stdout_is_json_and_stderr_is_human() {
    let r = run(&["verify", "--group", "catalog:gl32"]);
    assert!(r.stdout.trim_start().starts_with('{'));
    assert!(r.stderr.contains("GL(3,2)"));
    assert!(!r.stderr.contains('\x1b'));
    let quiet = run(&["verify", "--group", "catalog:gl32", "--json-only"]);
    assert!(quiet.stderr.is_empty());
    assert_eq!(quiet.stdout, r.stdout);
}

#[test]
fn search_exit_codes() {
    let r = run(&["search", "--group", "catalog:affine8", "--order", "4"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0]["h1"]["order"], 4);
    assert_eq!(run(&["search", "--group", "catalog:s3"]).code, 1);
    assert_eq!(run(&["search", "--group", "catalog:s4", "--exhaustive"]).code, 1);
    let capped = run(&["search", "--group", "catalog:gl32", "--cap", "100"]);
    assert_eq!(capped.code, 2);
    assert!(capped.stderr.contains("cap"));
    assert_eq!(run(&["search", "--group", "catalog:gl32", "--exhaustive"]).code, 2);
}

#[test]
fn export_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.dot");
    let args = DotArgs {
        group: group("gl32"),
        h: "G".into(),
        gens: None,
        out: out.clone(),
    };
    assert_eq!(cmd_export_dot(&args).unwrap().outcome, Outcome::Verified);
    let dot = fs::read_to_string(&out).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 1);
    assert!(dot.contains("v0 -- v0 [label=\"4\"]"));

    let c3 = dir.path().join("c3.json");
    fs::write(&c3, r#"{"name":"C3","degree":3,"generators":["(1 2 3)"]}"#).unwrap();
    let tri = dir.path().join("tri.dot");
    let r = run(&["export-dot", "--group", c3.to_str().unwrap(), "--h", "1", "-o", tri.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let dot = fs::read_to_string(&tri).unwrap();
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count(), 3);
    assert_eq!(dot.lines().filter(|l| l.contains("--")).count(), 3);

    let gl = dir.path().join("gl.dot");
    let r = run(&["export-dot", "--group", "catalog:gl32", "--h", "point", "-o", gl.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["vertices"], 7);
    assert_eq!(v["degree"], 4);
    let dot = fs::read_to_string(&gl).unwrap();
    // Multiplicities on the records add up to 4 per vertex.
    let mut degree = [0u32; 7];
    for line in dot.lines().filter(|l| l.contains("--")) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let a: usize = parts[0][1..].parse().unwrap();
        let b: usize = parts[2][1..].parse().unwrap();
        let m: u32 = line.split('"').nth(1).unwrap().parse().unwrap();
        degree[a] += m;
        if a != b {
            degree[b] += m;
        }
    }
    assert_eq!(degree, [4; 7]);
    assert_eq!(v["edge_records"], dot.lines().filter(|l| l.contains("--")).count());

    let r = run(&["export-dot", "--group", "catalog:gl32", "--h", "point", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn catalog_command_and_self_verification() {
    let r = run(&["catalog"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["gl32", "affine8", "s4", "s3"]);
    for entry in catalog() {
        let out = cmd_verify(&pair(&entry.name)).unwrap();
        let v: Value = serde_json::from_str(out.json.as_deref().unwrap()).unwrap();
        assert_eq!(v["certificate"]["is_gassmann"], entry.expected.gassmann, "{}", entry.name);
        assert_eq!(
            !v["certificate"]["conjugacy_witness"].is_null(),
            entry.expected.conjugate,
            "{}",
            entry.name
        );
        let expected = if entry.expected.gassmann && !entry.expected.conjugate {
            Outcome::Verified
        } else {
            Outcome::Refuted
        };
        assert_eq!(out.outcome, expected);
    }
}
