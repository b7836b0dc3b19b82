use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isoscan::records::read_records;
use isoscan_core::scanner::defect_table;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/profiles").join(name)
}

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoscan")).args(args).env("ISOSCAN_CACHE", cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn predict_prints_exact_totals() {
    let tmp = tempfile::tempdir().unwrap();
    for (a, b, want) in [("400.g1.json", "400.g2.json", "1/240"), ("4225.m1.json", "4225.m2.json", "1/960"), ("maximal.json", "maximal.json", "1/30")] {
        let (a, b) = (fixture(a), fixture(b));
        let o = run(&["predict", "--profile1", a.to_str().unwrap(), "--profile2", b.to_str().unwrap()], tmp.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(&format!("total = {want}\n")), "{}", stdout(&o));
    }
    let p = fixture("400.g1.json");
    let p = p.to_str().unwrap();
    let o = run(&["predict", "--profile1", p, "--profile2", p, "--c", "1,0,0"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cm_classify_pairs_and_classes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["cm-classify", "--e1", "2304.i1", "--e2", "2304.i2"], tmp.path());
    assert!(stdout(&o).starts_with("2304.i1 / 2304.i2: 0 "), "{}", stdout(&o));
    let o = run(&["cm-classify", "--class", "36.a"], tmp.path());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2, "{out}");
    assert!(out.lines().all(|l| l.contains(": 1/12 ")), "{out}");
    let o = run(&["cm-classify", "--e1", "400.g1", "--e2", "400.g2"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_then_report_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("s.jsonl");
    let o = run(&["scan", "--e1", "400.g1", "--e2", "400.g2", "--n", "3000", "--out", out.to_str().unwrap()], tmp.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = read_records(&out).unwrap();
    assert_eq!(recs.len(), 3000);
    assert!(recs.windows(2).all(|w| w[0].p < w[1].p));
    let table = defect_table(&recs, None).unwrap();
    let o = run(&["report", out.to_str().unwrap()], tmp.path());
    assert_eq!(stdout(&o), isoscan::render::defect_report(&table));
    assert!(stdout(&o).contains("    3000  good primes scanned"));

    let o = run(&["estimate-c", out.to_str().unwrap(), "--m", "2"], tmp.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);

    let p = fixture("400.g1.json");
    let o = run(&["compare", out.to_str().unwrap(), "--profile1", p.to_str().unwrap(), "--profile2", p.to_str().unwrap()], tmp.path());
    assert!(stdout(&o).contains("expected ≈ 12.5"), "{}", stdout(&o));
}

#[test]
fn non_isogenous_pair_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("x.jsonl");
    let o = run(&["scan", "--e1", "[0,0,0,0,1]", "--e2", "[0,0,0,-1,0]", "--n", "10", "--out", out.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not 2-isogenous"));
}

#[test]
fn volcano_with_dot_export() {
    let tmp = tempfile::tempdir().unwrap();
    let dot = tmp.path().join("v.dot");
    let o = run(&["volcano", "--e", "400.g1", "--p", "101", "--dot", dot.to_str().unwrap()], tmp.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("agrees"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph volcano {"));
    let o = run(&["volcano", "--e", "400.g1", "--p", "101", "--squared"], tmp.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // 5 is a bad prime.
    let o = run(&["volcano", "--e", "400.g1", "--p", "5"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn network_is_opt_in() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["fetch-lmfdb", "--label", "11.a2"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["volcano", "--e", "11.a2", "--p", "13"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-network"));
}
