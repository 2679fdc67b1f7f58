//! End-to-end tests of the binary: golden help text, JSON schemas, exit
//! codes, and the seeded-output contracts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hypersat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersat"))
        .args(args)
        .env_remove("HYPERSAT_WORKCAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hypersat-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn help_matches_golden() {
    let out = hypersat(&["--help"]);
    assert!(out.status.success());
    let golden = include_str!("golden/help.txt");
    assert_eq!(stdout(&out), golden, "--help drifted from tests/golden/help.txt");
}

#[test]
fn every_subcommand_is_documented() {
    let top = stdout(&hypersat(&["--help"]));
    for sub in [
        "gen", "count", "tree", "decompose", "split", "crosscut", "verify", "sweep", "expect",
        "bench",
    ] {
        assert!(top.contains(sub), "`{sub}` missing from --help");
        let sub_help = hypersat(&[sub, "--help"]);
        assert!(sub_help.status.success(), "`{sub} --help` failed");
    }
}

#[test]
fn gen_empty_graph() {
    let out = hypersat(&[
        "gen", "--family", "gnp", "--n", "10", "--p", "0", "--seed", "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "lhg 2 10\n");
}

#[test]
fn count_golden_on_k4() {
    let path = temp_path("k4.lhg");
    let gen = hypersat(&[
        "gen", "--family", "gnp", "--n", "4", "--p", "1", "--seed", "1", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let count = hypersat(&["count", "--input", path.to_str().unwrap(), "--k", "2"]);
    assert!(count.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&count)).unwrap();
    assert_eq!(json["r"], 2);
    assert_eq!(json["k"], 2);
    assert_eq!(json["copies"], 3);
    assert!(json.get("elapsed_ms").is_none());

    let timed = hypersat(&[
        "count", "--input", path.to_str().unwrap(), "--k", "2", "--timings",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(json.get("elapsed_ms").is_some());
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_suite_passes_and_reports() {
    let out = hypersat(&[
        "verify", "--suite", "oracle_equiv", "--instances", "50", "--seed", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "oracle_equiv: 50/50\n");
}

#[test]
fn unknown_suite_is_a_domain_error() {
    let out = hypersat(&[
        "verify", "--suite", "nonsense", "--instances", "1", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "BadParameter");
}

#[test]
fn missing_input_exits_one_with_json_error() {
    let out = hypersat(&["count", "--input", "/nonexistent/x.lhg", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "Io");
}

#[test]
fn usage_error_exits_two() {
    let out = hypersat(&["count"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hypersat(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_lhg_reports_line_number() {
    let path = temp_path("bad.lhg");
    std::fs::write(&path, "lhg 3 5\n0 1 2\n0 1 3\n").unwrap();
    let out = hypersat(&["count", "--input", path.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "Parse");
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("line 3"));
    std::fs::remove_file(path).ok();
}

#[test]
fn work_cap_env_is_honored() {
    let path = temp_path("dense.lhg");
    let gen = hypersat(&[
        "gen", "--family", "gnp", "--n", "30", "--p", "0.5", "--seed", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_hypersat"))
        .args(["count", "--input", path.to_str().unwrap(), "--k", "2"])
        .env("HYPERSAT_WORKCAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "WorkCapExceeded");
    std::fs::remove_file(path).ok();
}

#[test]
fn tree_and_split_audit_json() {
    let path = temp_path("rp.lhg");
    let gen = hypersat(&[
        "gen", "--family", "rpartite", "--classes", "12,12,12", "--budget", "110", "--seed",
        "5", "--out", path.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "{}", String::from_utf8_lossy(&gen.stderr));

    let split = hypersat(&[
        "split", "--input", path.to_str().unwrap(), "--classes", "12,12,12", "--parts", "2",
        "--floor", "1", "--seed", "9", "--max-retries", "200",
    ]);
    assert!(split.status.success(), "{}", String::from_utf8_lossy(&split.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&split)).unwrap();
    assert_eq!(json["audit_ok"], true);

    let tree = hypersat(&[
        "tree", "--input", path.to_str().unwrap(), "--classes", "12,12,12", "--root", "0",
        "--height", "2", "--parts", "2", "--floor", "1", "--seed", "9", "--max-retries", "200",
    ]);
    assert!(tree.status.success(), "{}", String::from_utf8_lossy(&tree.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&tree)).unwrap();
    assert_eq!(json["audit"]["rainbow"], true);
    assert_eq!(json["audit"]["strongly_proper"], true);
    assert_eq!(json["audit"]["lifts_to_linear_paths"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn decompose_and_crosscut_json() {
    let path = temp_path("g.lhg");
    let gen = hypersat(&[
        "gen", "--family", "gnp", "--n", "48", "--p", "0.4", "--seed", "11", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let dec = hypersat(&[
        "decompose", "--input", path.to_str().unwrap(), "--alpha", "0.5", "--s", "2", "--t",
        "2", "--c", "0.2", "--override-p", "3",
    ]);
    assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&dec)).unwrap();
    assert_eq!(json["edge_disjoint"], true);

    let steiner = temp_path("f.lhg");
    let gen = hypersat(&[
        "gen", "--family", "steiner", "--n", "12", "--r", "3", "--seed", "2", "--out",
        steiner.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let cut = hypersat(&["crosscut", "--input", steiner.to_str().unwrap(), "--seed", "4"]);
    assert!(cut.status.success(), "{}", String::from_utf8_lossy(&cut.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&cut)).unwrap();
    assert!(json["kept_sets"].as_u64().unwrap() > 0);
    std::fs::remove_file(path).ok();
    std::fs::remove_file(steiner).ok();
}
