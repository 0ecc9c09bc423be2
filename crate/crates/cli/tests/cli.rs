use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use wildprim_cli::catalog::{self, CatalogFile};

fn wildprim(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wildprim"))
        .args(args)
        .env("WILDPRIM_CACHE_DIR", cache)
        .output()
        .expect("run wildprim")
}

fn ok(out: Output) -> Vec<u8> {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn parse(bytes: &[u8]) -> CatalogFile {
    CatalogFile::from_json(std::str::from_utf8(bytes).unwrap()).unwrap()
}

const QUARTIC: [&str; 9] = ["enumerate", "--p", "2", "--f", "1", "--char", "0", "--n", "2"];

#[test]
fn json_and_csv_hold_the_same_records() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&QUARTIC[..], &["enumerate", "--p", "2", "--char", "p", "--n", "2", "--level-bound", "5"], &["enumerate", "--p", "3", "--n", "1"]] {
        let json = parse(&ok(wildprim(args, dir.path())));
        let csv = ok(wildprim(&[args, &["--format", "csv"]].concat(), dir.path()));
        assert_eq!(catalog::read_csv(csv.as_slice()).unwrap(), json.records);
        assert_eq!(json.metadata.record_count, json.records.len());
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_execution_modes() {
    let dir = tempfile::tempdir().unwrap();
    let a = ok(wildprim(&QUARTIC, dir.path()));
    let b = ok(wildprim(&QUARTIC, dir.path()));
    let c = ok(wildprim(&[&QUARTIC[..], &["--single-thread"]].concat(), dir.path()));
    let d = ok(wildprim(&[&QUARTIC[..], &["--seed", "17", "--no-cache"]].concat(), dir.path()));
    assert_eq!(a, b);
    assert_eq!(a, c);
    // Only the recorded seed differs.
    let (mut pa, pd) = (parse(&a), parse(&d));
    pa.metadata.seed = 17;
    assert_eq!(pa, pd);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quartics.json");
    let stdout = ok(wildprim(&QUARTIC, dir.path()));
    let written = ok(wildprim(&[&QUARTIC[..], &["--out", path.to_str().unwrap()]].concat(), dir.path()));
    assert!(written.is_empty());
    assert_eq!(fs::read(&path).unwrap(), stdout);
}

#[test]
fn cache_never_changes_results() {
    let cache = tempfile::tempdir().unwrap();
    let cold = ok(wildprim(&[&QUARTIC[..], &["--no-cache"]].concat(), cache.path()));
    assert_eq!(fs::read_dir(cache.path()).unwrap().count(), 0);
    let filling = ok(wildprim(&QUARTIC, cache.path()));
    let entries: Vec<_> = fs::read_dir(cache.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    let warm = ok(wildprim(&QUARTIC, cache.path()));
    assert_eq!(cold, filling);
    assert_eq!(cold, warm);

    // A corrupt entry and a well-formed but wrong entry are both ignored.
    fs::write(&entries[0], b"{not json").unwrap();
    assert_eq!(ok(wildprim(&QUARTIC, cache.path())), cold);
    let good = fs::read_to_string(&entries[0]).unwrap();
    let mut classes: serde_json::Value = serde_json::from_str(&good).unwrap();
    classes[0]["multiplicity"] = serde_json::json!(7);
    fs::write(&entries[0], classes.to_string()).unwrap();
    assert_eq!(ok(wildprim(&QUARTIC, cache.path())), cold);

    // The --cache-dir flag beats the environment variable.
    let other = tempfile::tempdir().unwrap();
    ok(wildprim(&[&QUARTIC[..], &["--cache-dir", other.path().to_str().unwrap()]].concat(), cache.path()));
    assert_eq!(fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn reps_lists_simple_classes() {
    let dir = tempfile::tempdir().unwrap();
    let count = |n: &str| {
        let v: serde_json::Value =
            serde_json::from_slice(&ok(wildprim(&["reps", "--p", "2", "--f", "1", "--char", "0", "--n", n], dir.path()))).unwrap();
        v["representations"].as_array().unwrap().len()
    };
    assert_eq!(count("2"), 2);
    assert_eq!(count("1"), 1);
    let csv = ok(wildprim(&["reps", "--p", "2", "--n", "2", "--format", "csv"], dir.path()));
    assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| wildprim(args, dir.path()).status.code();
    assert_eq!(code(&["enumerate", "--p", "2", "--n", "1", "--precision", "2"]), Some(3));
    assert_eq!(code(&["enumerate", "--p", "2", "--char", "p", "--n", "1"]), Some(1));
    assert_eq!(code(&["enumerate", "--p", "4", "--n", "1"]), Some(1));
    assert_eq!(code(&["enumerate", "--p", "2"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn quick_verification_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(wildprim(&["verify", "--suite", "quick"], dir.path()));
    let text = String::from_utf8(out).unwrap();
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.trim_end().ends_with("0 failed"));
    let json = ok(wildprim(&["verify", "--format", "json", "--single-thread"], dir.path()));
    let report: wildprim::verify::VerificationReport = serde_json::from_slice(&json).unwrap();
    assert!(report.all_passed());
}
