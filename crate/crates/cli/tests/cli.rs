use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn permzhu(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_permzhu"));
    cmd.args(args).env_remove("PERMZHU_CACHE_DIR");
    if let Some(c) = cache {
        cmd.env("PERMZHU_CACHE_DIR", c);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn compute_untwisted_fermion() {
    let out = permzhu(&["compute", "--k", "1", "--cutoff", "2"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let alg = &v["report"]["algebras"][0];
    assert_eq!(alg["dim"], 1);
    assert_eq!(alg["stable"], true);
    assert_eq!(v["report"]["config"]["gen_cutoff"], "4");
    assert!(v["run"]["timing_ms"].is_array());
}

#[test]
fn compute_reports_targets_and_coefficients() {
    let v = json(&permzhu(&["compute", "--k", "2", "--cutoff", "3/2"], None));
    let algs = v["report"]["algebras"].as_array().unwrap();
    assert_eq!(algs.len(), 2);
    assert_eq!(algs[0]["dim"], 2);
    assert_eq!(algs[1]["dim"], 2);
    assert_eq!(v["report"]["a_coeffs"][0]["a"][0], "-1/2");
    assert_eq!(v["report"]["all_stable"], true);
}

#[test]
fn verify_passes_and_cycle_type_is_checked() {
    let out = permzhu(&["verify", "--cycles", "2,1", "--cutoff", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["all_passed"], true);
    assert_eq!(v["report"]["cycle_type"]["product"], 2);
    assert_eq!(v["report"]["per_cycle"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["compute"][..],
        &["compute", "--k", "2", "--algebra", "boson"],
        &["compute", "--k", "2", "--cutoff", "1/3"],
        &["compute", "--k", "3", "--cycles", "2,2"],
        &["verify", "--k", "2", "--checks", "everything"],
        &["compute", "--k", "2", "--cutoff", "2", "--gen-cutoff", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(permzhu(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn small_generation_cutoff_warns() {
    let out = permzhu(&["verify", "--k", "2", "--gen-cutoff", "1/2"], None);
    let v = json(&out);
    let warnings = v["report"]["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("cutoff too small")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn second_run_hits_cache_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--k", "3", "--cutoff", "1"];
    let first = json(&permzhu(&args, Some(dir.path())));
    let second = json(&permzhu(&args, Some(dir.path())));
    assert_eq!(first["run"]["cache_hit"], false);
    assert_eq!(second["run"]["cache_hit"], true);
    assert_eq!(first["report"], second["report"]);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = permzhu(&["compute", "--k", "2", "--cutoff", "1", "--out", path.to_str().unwrap()], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["command"], "compute");
}
