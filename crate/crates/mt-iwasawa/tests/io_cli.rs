use std::path::PathBuf;
use std::process::Command;

use mt_iwasawa::arith::PrimeContext;
use mt_iwasawa::cyclotomic::{weight_constants, Iota};
use mt_iwasawa::error::MtError;
use mt_iwasawa::io::{compute_form, exit_code, ingest_form, run_oracle, Cache, ComputeOptions, OracleCheck};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn mt(args: &[&str]) -> std::process::Output {
    let cache = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_mt")).args(args).env("MT_CACHE_DIR", cache.path()).output().unwrap()
}

#[test]
fn cache_cold_and_warm_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let spec = ingest_form(&fixture("G0N32k2A.json")).unwrap();
    let (cold, hit_cold) = cache.rational(&spec).unwrap();
    let (warm, hit_warm) = cache.rational(&spec).unwrap();
    assert!(!hit_cold && hit_warm);
    assert_eq!(cold, warm);

    let opts = ComputeOptions::new(4);
    let a = compute_form(&spec, Some(&cache), &opts).unwrap();
    let b = compute_form(&spec, None, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cache_rebuilds_corrupt_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let spec = ingest_form(&fixture("G0N32k2A.json")).unwrap();
    let (good, _) = cache.rational(&spec).unwrap();
    let entry = dir.path().join(format!("{}.symbols.json", Cache::key(&spec)));
    std::fs::write(&entry, "{ not json").unwrap();
    let (again, hit) = cache.rational(&spec).unwrap();
    assert!(!hit);
    assert_eq!(good, again);
}

#[test]
fn oracles_are_reproducible_from_the_seed() {
    for check in [OracleCheck::Smalllam, OracleCheck::Mainpl, OracleCheck::Newton] {
        let a = run_oracle(check, 3, 2, 50, 7).unwrap();
        let b = run_oracle(check, 3, 2, 50, 7).unwrap();
        assert_eq!(a, b, "{check}");
        assert!(a.ok(), "{check}: {:?}", a.failures);
    }
    assert!(run_oracle(OracleCheck::Division, 2, 0, 1, 0).is_err());
}

#[test]
fn error_exit_codes() {
    assert_eq!(exit_code(&MtError::DivisibilityFails("x".into())), 2);
    assert_eq!(exit_code(&MtError::Unstable("x".into())), 3);
    assert_eq!(exit_code(&MtError::InconsistentBranches("x".into())), 3);
    assert_eq!(exit_code(&MtError::RamifiedContext), 3);
}

#[test]
fn number_field_form_has_trivial_invariants() {
    let spec = ingest_form(&fixture("23-2-a-a.json")).unwrap();
    assert!(!spec.is_rational());
    let r = compute_form(&spec, None, &ComputeOptions::new(3)).unwrap();
    assert_eq!(r.meta.path, "number_field");
    assert!(r.table.rows.iter().all(|row| row.lambda == 0 && row.mu == Some(0)), "{:?}", r.table.rows);
    assert!(r.checks_passed(), "{:?}", r.checks);
}

#[test]
fn exceptional_weight_constants() {
    let w = weight_constants(&PrimeContext::new(3).unwrap(), 13);
    assert_eq!((w.nu, w.nu_minus, w.nu_plus), (1, 3, 9));
    assert!(matches!(w.iota(1), Iota::Branches { ge: 4, lt: 3 }) || matches!(w.iota(-1), Iota::Branches { ge: 4, lt: 3 }));
}

#[test]
fn cli_compute_and_extract() {
    let out = mt(&["compute", "--form", fixture("26-6-a-a.json").to_str().unwrap(), "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lambdas: Vec<&str> =
        text.lines().filter(|l| !l.starts_with('#') && !l.starts_with("n\t")).filter_map(|l| l.split('\t').nth(1)).collect();
    assert_eq!(lambdas, ["1", "5", "17", "47"]);

    let out = mt(&["extract", "--table", fixture("theta-26-6-a-a-p3.tsv").to_str().unwrap(), "--p", "3", "--k", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["lambda_plus"].as_i64(), v["lambda_minus"].as_i64()), (Some(5), Some(1)));
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // residuals keep growing: no branch stabilizes
    let unstable = dir.path().join("unstable.tsv");
    std::fs::write(&unstable, "n\tlambda\n1\t0\n2\t1\n3\t0\n4\t1\n5\t0\n6\t1\n").unwrap();
    let out = mt(&["extract", "--table", unstable.to_str().unwrap(), "--p", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));

    let bad = dir.path().join("bad.json");
    let spec = std::fs::read_to_string(fixture("G0N32k2A.json")).unwrap().replacen("\"level\": 32", "\"level\": 0", 1);
    assert!(spec.contains("\"level\": 0"), "fixture layout changed");
    std::fs::write(&bad, spec).unwrap();
    assert_eq!(mt(&["compute", "--form", bad.to_str().unwrap()]).status.code(), Some(1));

    assert_eq!(mt(&["selfcheck"]).status.code(), Some(0));
    assert_eq!(mt(&["constants", "--p", "3", "--k", "13"]).status.code(), Some(0));
}
