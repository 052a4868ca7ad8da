use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use splitkit::format::{
    parse_scan_csv, parse_tiling_export, CertificateDoc, ScanReportDoc, SearchAttestationDoc,
};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_splitkit"));
    cmd.args(args)
        .env_remove("SPLITKIT_NODE_LIMIT")
        .env_remove("SPLITKIT_TIME_LIMIT_SECS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// The final stdout line, parsed as `key=value` pairs.
fn summary(out: &Output) -> Vec<(String, String)> {
    let text = stdout(out);
    let last = text.lines().last().expect("summary line");
    last.split(' ')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .unwrap_or_else(|| panic!("not key=value: {last:?}"));
            (k.to_owned(), v.to_owned())
        })
        .collect()
}

fn field(out: &Output, key: &str) -> String {
    summary(out)
        .into_iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .unwrap_or_else(|| panic!("no {key} in summary"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn search_to(dir: &TempDir, n: u64, k: u64) -> PathBuf {
    let path = dir.path().join(format!("z{n}_k{k}.json"));
    let out = run(&[
        "search",
        "--N",
        &n.to_string(),
        "--k",
        &k.to_string(),
        "--out",
        path_str(&path),
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    path
}

#[test]
fn search_finds_z5() {
    let dir = TempDir::new().unwrap();
    let path = search_to(&dir, 5, 2);
    let doc = CertificateDoc::parse(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc.splitters, vec![vec![1], vec![4]]);
    assert!(doc.to_certificate().is_ok());
}

#[test]
fn search_attests_nonexistence() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("z105.json");
    let out = run(&["search", "--N", "105", "--k", "8", "--out", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&out, "result"), "exhausted_no_solution");
    let doc = SearchAttestationDoc::parse(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc.kind, "nonexistence_attestation");
    assert!(doc.nodes > 0);
}

#[test]
fn search_rejects_non_divisor() {
    let out = run(&["search", "--N", "10", "--k", "4"]);
    assert_eq!(code(&out), 2);
    assert_eq!(field(&out, "status"), "error");
}

#[test]
fn search_budget_from_environment() {
    let out = run_env(
        &["search", "--N", "105", "--k", "8"],
        &[("SPLITKIT_NODE_LIMIT", "2")],
    );
    assert_eq!(code(&out), 3);
    assert_eq!(field(&out, "result"), "resource_limit");
    assert!(stdout(&out).contains("\"kind\": \"search_inconclusive\""));
    let out = run_env(
        &["search", "--N", "105", "--k", "8", "--node-limit", "1000"],
        &[("SPLITKIT_NODE_LIMIT", "2")],
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = search_to(&dir, 9, 8);
    let out = run(&["verify", path_str(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&out, "status"), "valid");
    assert_eq!(field(&out, "classification"), "purely_singular");

    let z5 = search_to(&dir, 5, 2);
    let mut doc = CertificateDoc::parse(&fs::read_to_string(&z5).unwrap()).unwrap();
    doc.splitters = vec![vec![1], vec![3]];
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, doc.to_text()).unwrap();
    let out = run(&["verify", path_str(&tampered)]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&out, "failure"), "collision");

    let empty = dir.path().join("empty.json");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&run(&["verify", path_str(&empty)])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/cert.json"])), 2);
}

#[test]
fn verify_flags_stale_classification() {
    let dir = TempDir::new().unwrap();
    let path = search_to(&dir, 9, 8);
    let text = fs::read_to_string(&path)
        .unwrap()
        .replace("purely_singular", "nonsingular");
    fs::write(&path, text).unwrap();
    let out = run(&["verify", path_str(&path)]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&out, "failure"), "classification_mismatch");
}

fn scan_args<'a>(out: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["scan", "--k-min", "1", "--k-max", "12", "--out", out];
    v.extend_from_slice(extra);
    v
}

#[test]
fn scan_is_consistent_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let serial = dir.path().join("serial.json");
    let parallel = dir.path().join("parallel.json");
    let csv = dir.path().join("serial.csv");
    let out = run(&scan_args(
        path_str(&serial),
        &["--jobs", "1", "--csv", path_str(&csv)],
    ));
    assert_eq!(code(&out), 0);
    assert_eq!(field(&out, "status"), "consistent");
    assert_eq!(field(&out, "violations"), "0");
    let out = run(&scan_args(path_str(&parallel), &["--jobs", "4"]));
    assert_eq!(code(&out), 0);
    let a = fs::read(&serial).unwrap();
    assert_eq!(a, fs::read(&parallel).unwrap());

    let report = ScanReportDoc::parse(std::str::from_utf8(&a).unwrap()).unwrap();
    let rows = parse_scan_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), report.records.len());
    let found: BTreeSet<(u64, u64)> = report
        .records
        .iter()
        .filter(|r| r.splitters.is_some())
        .map(|r| (r.k, r.n))
        .collect();
    assert!(found.iter().all(|&(_, n)| n <= 2));
}

#[test]
fn scan_resume_matches_uninterrupted() {
    let dir = TempDir::new().unwrap();
    let full = dir.path().join("full.json");
    let half = dir.path().join("half.json");
    let resumed = dir.path().join("resumed.json");
    assert_eq!(code(&run(&scan_args(path_str(&full), &[]))), 0);
    let out = run(&scan_args(path_str(&half), &["--max-records", "7"]));
    assert_eq!(code(&out), 3);
    assert_eq!(field(&out, "status"), "partial");
    assert_eq!(field(&out, "complete"), "false");
    let out = run(&scan_args(
        path_str(&resumed),
        &["--resume", path_str(&half)],
    ));
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read(&full).unwrap(), fs::read(&resumed).unwrap());
}

#[test]
fn scan_usage_errors() {
    let dir = TempDir::new().unwrap();
    let half = dir.path().join("half.json");
    run(&scan_args(path_str(&half), &["--max-records", "3"]));
    let other = dir.path().join("other.json");
    let out = run(&[
        "scan",
        "--k-max",
        "9",
        "--resume",
        path_str(&half),
        "--out",
        path_str(&other),
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&run(&["scan", "--k-min", "5", "--k-max", "3"])), 2);
}

#[test]
fn scan_tabular_and_timing() {
    let out = run(&["scan", "--k-max", "4", "--format", "tabular", "--timing"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("k,n,N,factorization,verdict,nodes,millis\n"));
    assert!(field(&out, "millis").parse::<u64>().is_ok());
    let body: String = text
        .lines()
        .take(text.lines().count() - 1)
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(parse_scan_csv(&body)
        .unwrap()
        .iter()
        .all(|r| r.millis.is_some()));
}

#[test]
fn tile_z5() {
    let dir = TempDir::new().unwrap();
    let cert = search_to(&dir, 5, 2);
    let export = dir.path().join("tiles.csv");
    let out = run(&[
        "tile",
        "--cert",
        path_str(&cert),
        "--box",
        "0:9,0:9",
        "--out",
        path_str(&export),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&out, "anchors_in_box"), "20");
    assert_eq!(field(&out, "det"), "5");
    let (header, translates) = parse_tiling_export(&fs::read_to_string(&export).unwrap()).unwrap();
    assert_eq!((header.n, header.k, header.order), (2, 2, 5));
    let mut cells = BTreeSet::new();
    for t in &translates {
        for p in &t.points {
            if (0..=9).contains(&p[0]) && (0..=9).contains(&p[1]) {
                assert!(cells.insert(p.clone()), "cell {p:?} covered twice");
            }
        }
    }
    assert_eq!(cells.len(), 100);
}

#[test]
fn tile_one_dimensional_is_periodic() {
    let dir = TempDir::new().unwrap();
    let cert = search_to(&dir, 4, 3);
    let out = run(&["tile", "--cert", path_str(&cert), "--box", "0:11"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let body: String = text
        .lines()
        .take(text.lines().count() - 1)
        .map(|l| format!("{l}\n"))
        .collect();
    let (_, translates) = parse_tiling_export(&body).unwrap();
    let anchors: Vec<i64> = translates.iter().map(|t| t.anchor[0]).collect();
    assert_eq!(anchors, vec![0, 4, 8]);
}

#[test]
fn tile_rejections() {
    let dir = TempDir::new().unwrap();
    let z5 = search_to(&dir, 5, 2);
    let mut doc = CertificateDoc::parse(&fs::read_to_string(&z5).unwrap()).unwrap();
    doc.splitters = vec![vec![1], vec![3]];
    let bad = dir.path().join("bad.json");
    fs::write(&bad, doc.to_text()).unwrap();
    assert_eq!(
        code(&run(&["tile", "--cert", path_str(&bad), "--box", "0:4"])),
        1
    );

    let non_cyclic = dir.path().join("z3z3.json");
    fs::write(
        &non_cyclic,
        r#"{"format_version":1,"kind":"splitting_certificate","group_factors":[3,3],
            "multipliers":{"kind":"explicit","values":[1,2]},
            "splitters":[[0,1],[1,0],[1,1],[1,2]],
            "classification":{"tag":"nonsingular","witnesses":[{"prime":3,"multiplier":null}]}}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["verify", path_str(&non_cyclic)])), 0);
    assert_eq!(
        code(&run(&[
            "tile",
            "--cert",
            path_str(&non_cyclic),
            "--box",
            "0:4"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "tile",
            "--cert",
            path_str(&z5),
            "--box",
            "0:4,0:4,0:4"
        ])),
        2
    );
}

#[test]
fn checks() {
    let dir = TempDir::new().unwrap();
    let out = run(&["check", "abcde", "--k", "8", "--p", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&out, "verdict"), "pass");
    assert!(stdout(&out).contains("\"check_name\": \"abcde\""));

    let out = run(&[
        "check", "abcde", "--k", "20", "--p", "3", "--primes", "5:1:1",
    ]);
    assert_eq!(code(&out), 1);

    let out = run(&["check", "digits", "--k", "24", "--p", "5"]);
    assert_eq!(code(&out), 0);

    let z25 = search_to(&dir, 25, 24);
    assert_eq!(code(&run(&["check", "tw", "--cert", path_str(&z25)])), 0);
    assert_eq!(
        code(&run(&["check", "strata", "--cert", path_str(&z25)])),
        0
    );

    let z9 = search_to(&dir, 9, 8);
    assert_eq!(code(&run(&["check", "tw", "--cert", path_str(&z9)])), 2);
    assert_eq!(code(&run(&["check", "s87", "--cert", path_str(&z9)])), 0);

    let out = run(&["check", "s87", "--N", "9"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"counterexamples\": []"));
    assert_eq!(code(&run(&["check", "s87", "--N", "10"])), 2);
}

#[test]
fn unknown_check_lists_names() {
    let out = run(&["check", "nope"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    for name in ["abcde", "digits", "strata", "tw", "s87"] {
        assert!(err.contains(name));
    }
    assert_eq!(code(&run(&["check", "abcde", "--k", "8"])), 2);
}
