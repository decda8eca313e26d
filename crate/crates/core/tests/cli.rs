//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

use seidel::extremal;
use seidel::graph::{self, Graph};

const BIN: &str = env!("CARGO_BIN_EXE_seidel");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("SEIDEL_JOBS")
        .output()
        .expect("spawn seidel")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn max_index_examples() {
    let out = run(&["max-index", "--n", "6", "--m", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rho = 5.000000000000"));

    let out = run(&["max-index", "--n", "7", "--m", "7"]);
    assert!(out.status.success());
    let rho: f64 = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("rho = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((rho - (3.0 + 65.0_f64.sqrt()) / 2.0).abs() <= 1e-10);
}

#[test]
fn max_index_domain_error_is_exit_2() {
    let out = run(&["max-index", "--n", "5", "--m", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("7"), "error should name the offending size: {err}");
}

fn construct_into(dir: &Path, n: usize, m: usize) -> Vec<Graph> {
    let out = run(&[
        "construct",
        "--n",
        &n.to_string(),
        "--m",
        &m.to_string(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "construct {n} {m}: {:?}", out);
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| {
            p.file_name()
                .unwrap()
                .to_str()
                .unwrap()
                .starts_with(&format!("hnm_{n}_{m}_"))
        })
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| graph::read_edge_list(&std::fs::read_to_string(p).unwrap()).unwrap())
        .collect()
}

#[test]
fn construct_writes_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let gs = construct_into(dir.path(), 6, 8);
    assert_eq!(gs.len(), 1);
    assert_eq!(gs[0].size(), 8);

    let gs = construct_into(dir.path(), 7, 7);
    assert_eq!(gs.len(), 1);
    assert_eq!(gs[0].size(), 7);

    let gs = construct_into(dir.path(), 8, 13);
    assert_eq!(gs.len(), 2);
    assert!(gs.iter().all(|g| g.size() == 13));
}

#[test]
fn construct_unwritable_path_is_exit_3() {
    let out = run(&["construct", "--n", "6", "--m", "8", "--out", "/dev/null/x"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn spectrum_examples() {
    let dir = tempfile::tempdir().unwrap();

    let empty4 = dir.path().join("empty4.txt");
    std::fs::write(&empty4, graph::write_edge_list(&Graph::empty(4).unwrap())).unwrap();
    let out = run(&["spectrum", empty4.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("index = 3.000000000000"));

    let s61 = dir.path().join("s61.txt");
    std::fs::write(&s61, graph::write_edge_list(&Graph::star_union(6, 1).unwrap())).unwrap();
    let out = run(&["spectrum", s61.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4.464101615138"));
    assert!(text.contains("-2.464101615138"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "not a header\n").unwrap();
    let out = run(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // Parse errors carry the line number.
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1"));

    let out = run(&["spectrum", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_m_for_n5() {
    let out = run(&["verify", "--n", "5", "--all-m", "--jobs", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7); // m = 0..=6
    assert!(text.lines().all(|l| l.ends_with("HOLDS")));
}

#[test]
fn verify_single_m_and_cap() {
    let out = run(&["verify", "--n", "7", "--m", "7", "--jobs", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("classes=1"));

    let out = run(&["verify", "--n", "9", "--all-m"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reads_jobs_from_env() {
    let out = Command::new(BIN)
        .args(["verify", "--n", "5", "--m", "3"])
        .env("SEIDEL_JOBS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn compare_conjecture_examples() {
    let out = run(&["compare-conjecture", "--n", "6", "--m", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("AGREE"));

    let out = run(&["compare-conjecture", "--n", "7", "--m", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("CONJECTURE_LOWER"));
    assert!(text.contains("conjecture_index = 5.000000000000"));
    let theory: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("theorem_index    = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((theory - (3.0 + 65.0_f64.sqrt()) / 2.0).abs() <= 1e-10);

    let out = run(&["compare-conjecture", "--n", "8", "--m", "13"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("CONJECTURE_LOWER"));
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["max-index", "--n", "7", "--m", "7", "--format", "json"],
        vec!["verify", "--n", "6", "--m", "4", "--jobs", "2", "--format", "json"],
        vec!["compare-conjecture", "--n", "8", "--m", "13", "--format", "json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn construct_spectrum_round_trip_matches_max_index() {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..=10usize {
        for m in 0..=extremal::size_cap(n) {
            let rho = extremal::max_index(n, m).unwrap().rho;
            for g in construct_into(dir.path(), n, m) {
                let path = dir.path().join("roundtrip.txt");
                std::fs::write(&path, graph::write_edge_list(&g)).unwrap();
                let out = run(&["spectrum", path.to_str().unwrap()]);
                assert!(out.status.success());
                let text = stdout(&out);
                let idx: f64 = text
                    .lines()
                    .find_map(|l| l.strip_prefix("index = "))
                    .unwrap()
                    .parse()
                    .unwrap();
                assert!((idx - rho).abs() <= 1e-8, "n={n} m={m}: {idx} vs {rho}");
            }
        }
    }
}
