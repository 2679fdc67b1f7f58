//! Acceptance criterion: repeated runs with identical seeds produce
//! byte-identical .lhg, JSON, and CSV outputs, independent of --jobs.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

fn hypersat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersat"))
        .args(args)
        .env_remove("HYPERSAT_WORKCAP")
        .output()
        .expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hypersat-acc-{}-{name}", std::process::id()));
    p
}

fn read_and_remove(path: &PathBuf) -> Vec<u8> {
    let bytes = std::fs::read(path).expect("output file written");
    std::fs::remove_file(path).ok();
    bytes
}

#[test]
fn criterion_7_cli_determinism() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();

    // .lhg generation: identical seeds, identical bytes
    for family in [
        vec!["gen", "--family", "gnp", "--n", "40", "--p", "0.3", "--seed", "17"],
        vec!["gen", "--family", "steiner", "--n", "25", "--r", "3", "--seed", "17"],
        vec![
            "gen", "--family", "rpartite", "--classes", "10,10,10", "--budget", "80", "--seed",
            "17",
        ],
    ] {
        let a = hypersat(&family);
        let b = hypersat(&family);
        if !(a.status.success() && a.stdout == b.stdout) {
            pass = false;
            detail.push(format!("gen {:?} not byte-identical", family[2]));
        }
    }

    // count JSON: byte-identical across repeated runs
    let k4 = temp_path("det-k4.lhg");
    assert!(hypersat(&[
        "gen", "--family", "gnp", "--n", "8", "--p", "0.9", "--seed", "3", "--out",
        k4.to_str().unwrap(),
    ])
    .status
    .success());
    let c1 = hypersat(&["count", "--input", k4.to_str().unwrap(), "--k", "2"]);
    let c2 = hypersat(&["count", "--input", k4.to_str().unwrap(), "--k", "2"]);
    if c1.stdout != c2.stdout {
        pass = false;
        detail.push("count JSON not byte-identical".into());
    }
    std::fs::remove_file(&k4).ok();

    // sweep CSV + JSON: byte-identical and independent of --jobs
    let mut outputs: Vec<(Vec<u8>, Vec<u8>, Vec<u8>)> = Vec::new();
    for (tag, jobs) in [("j1", "1"), ("j4", "4"), ("j1b", "1")] {
        let csv = temp_path(&format!("det-{tag}.csv"));
        let json = temp_path(&format!("det-{tag}.json"));
        let out = hypersat(&[
            "sweep", "--family", "gnp", "--n", "28", "--k", "2", "--grid", "0.2,0.3",
            "--trials", "8", "--seed", "23", "--jobs", jobs, "--csv",
            csv.to_str().unwrap(), "--json", json.to_str().unwrap(),
        ]);
        if !out.status.success() {
            pass = false;
            detail.push(format!("sweep --jobs {jobs} failed"));
            break;
        }
        outputs.push((out.stdout, read_and_remove(&csv), read_and_remove(&json)));
    }
    if outputs.len() == 3 {
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        if !same {
            pass = false;
            detail.push("sweep outputs differ across runs or --jobs".into());
        }
    }

    // expectation reports: byte-identical across --jobs
    let e1 = temp_path("det-e1.json");
    let e2 = temp_path("det-e2.json");
    for (path, jobs) in [(&e1, "1"), (&e2, "3")] {
        assert!(hypersat(&[
            "expect", "--n", "20", "--p", "0.3", "--k", "2", "--trials", "10", "--seed", "9",
            "--jobs", jobs, "--json", path.to_str().unwrap(),
        ])
        .status
        .success());
    }
    if read_and_remove(&e1) != read_and_remove(&e2) {
        pass = false;
        detail.push("expect JSON differs across --jobs".into());
    }

    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "acceptance: {:<24} {} ({elapsed:>6.1}s) {}",
        "cli_determinism",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            "gen/count/sweep/expect byte-identical, --jobs independent".to_string()
        } else {
            detail.join("; ")
        }
    );
    assert!(pass, "{}", detail.join("; "));
}
