use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nogo::schema::{candidate_file, ObservableFile, RaySetFile};
use nogo_core::bell::BlochState;
use nogo_core::expectation::{bell_candidate, BellHook, Violation};
use nogo_core::{Complex64, Ray};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn nogo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nogo")).args(args).env_remove("NOGO_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn selfcheck_passes() {
    let o = nogo(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = json(&nogo(&["selfcheck", "--json"]));
    assert!(j["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn joint_spectrum_of_diagonal_pair() {
    let o = nogo(&["joint-spectrum", path(&data("diagonal_pair.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "{(1,1),(1,0),(0,0)}");
    let j = json(&nogo(&["joint-spectrum", path(&data("diagonal_pair.json")), "--json"]));
    assert_eq!(j["points"].as_array().unwrap().len(), 3);
}

#[test]
fn unknown_flag_is_an_input_error() {
    assert_eq!(nogo(&["selfcheck", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(nogo(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(nogo(&[]).status.code(), Some(2));
}

#[test]
fn malformed_files_report_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"dim\": 3,\n  \"rays\": [1, 2,\n").unwrap();
    let o = nogo(&["check-valuation", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    std::fs::write(&bad, r#"{"dim": 2, "scalars": "exact", "name": "x", "rays": [[[1,0,0,0], [0,0,"a",0]]]}"#).unwrap();
    let o = nogo(&["check-valuation", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rays[0]"), "{}", String::from_utf8_lossy(&o.stderr));

    assert_eq!(nogo(&["check-valuation", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(nogo(&["bell-sim", "--state", "1,0", "--obs", "0,0,0,1"]).status.code(), Some(2));
    assert_eq!(nogo(&["bell-sim", "--state", "1,1,0", "--obs", "0,0,0,1"]).status.code(), Some(2));
}

#[test]
fn check_valuation_exit_codes() {
    // Matches "expected".
    let o = nogo(&["check-valuation", path(&data("peres33.json")), "--sat"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(nogo(&["check-valuation", path(&data("peres_mermin.json"))]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("peres33.json")).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("expected");
    let f = dir.path().join("noexp.json");
    std::fs::write(&f, v.to_string()).unwrap();
    assert_eq!(nogo(&["check-valuation", path(&f)]).status.code(), Some(11));
    assert_eq!(nogo(&["check-valuation", path(&f), "--general", "--budget", "1"]).status.code(), Some(3));

    let colorable = dir.path().join("basis.json");
    std::fs::write(&colorable, r#"{"dim": 2, "scalars": "float", "name": "basis", "rays": [[1, 0], [0, 1], [{"re": 0.6, "im": 0}, 0.8]]}"#).unwrap();
    let o = nogo(&["check-valuation", path(&colorable), "--json"]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(json(&o)["report"]["verdict"]["verdict"], "accepted");
}

#[test]
fn outcome_is_independent_of_thread_count() {
    let run = |t: &str| {
        let j = json(&nogo(&["check-valuation", path(&data("peres33.json")), "--json", "--threads", t]));
        j["report"]["certificate"]["outcome"].clone()
    };
    assert_eq!(run("1"), run("4"));
    let o = Command::new(env!("CARGO_BIN_EXE_nogo")).args(["selfcheck"]).env("NOGO_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nogo")).args(["selfcheck"]).env("NOGO_THREADS", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lift_and_tensor_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lift4.json");
    let o = nogo(&["lift", "--in", path(&data("peres33.json")), "--to-dim", "4", "--out", path(&out), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["verified"], true);
    let file: RaySetFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(file.verified && file.recipe.is_some() && file.certificate.is_some());
    assert_eq!(file.dim, 4);
    // The written file is itself a valid input whose verdict matches.
    assert_eq!(nogo(&["check-valuation", path(&out)]).status.code(), Some(0));

    let tout = dir.path().join("tensor.json");
    let o = nogo(&["tensor-id", "--in", path(&data("peres33.json")), "--k", "2", "--out", path(&tout)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let file: ObservableFile = serde_json::from_str(&std::fs::read_to_string(&tout).unwrap()).unwrap();
    assert!(file.verified);
    assert_eq!(file.dim, 6);
    assert_eq!(nogo(&["check-valuation", path(&tout)]).status.code(), Some(0));

    // A colorable input is rejected as a precondition failure, and nothing is claimed.
    let basis = dir.path().join("basis.json");
    std::fs::write(&basis, r#"{"dim": 2, "scalars": "exact", "name": "b", "rays": [[[1,0,0,0],[0,0,0,0]]]}"#).unwrap();
    let o = nogo(&["lift", "--in", path(&basis), "--to-dim", "3", "--out", path(&dir.path().join("x.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn bell_sim_reports() {
    let o = nogo(&["bell-sim", "--state", "0,0,1", "--obs", "0,0,0,1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert!((j["exact"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = nogo(&["bell-sim", "--state", "1,0,0", "--obs", "[[1, 0], [0, -1]]", "--exact"]);
    assert_eq!(o.status.code(), Some(0));

    let mc = |t: &str| json(&nogo(&["bell-sim", "--state", "0.6,0,0.8", "--obs", "0.5,1,0,0", "--mc", "20000", "--seed", "9", "--threads", t, "--json"]));
    let (a, b) = (mc("3"), mc("3"));
    assert_eq!(a["mc"], b["mc"]);
    let est = &a["mc"];
    assert_eq!(est["samples"], 20000);
    let z = (est["estimate"].as_f64().unwrap() - a["exact"].as_f64().unwrap()).abs() / est["stderr"].as_f64().unwrap();
    assert!(z < 5.0);
}

#[test]
fn bell_certificate_is_rechecked_from_json() {
    let o = nogo(&["bell-certificate"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Violation = serde_json::from_slice(&o.stdout).unwrap();
    let gap = v.recheck(None).unwrap();
    assert!((gap - 0.5).abs() <= 1e-12 && (gap - v.gap).abs() <= 1e-12);
}

#[test]
fn falsify_bundled_candidates() {
    let o = nogo(&["falsify", path(&data("pure_theory.json")), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let j = json(&o);
    assert_eq!(j["violation"]["kind"], "mixture-consistency");
    assert!((j["violation"]["gap"].as_f64().unwrap() - 0.5).abs() < 1e-9);

    let j = json(&nogo(&["falsify", path(&data("half_constant.json")), "--json", "--hook", "none"]));
    assert_eq!(j["violation"]["kind"], "eq1");
    assert!((j["violation"]["gap"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    // Consistent tables with no probing, or no rounds, end in a budget report.
    assert_eq!(nogo(&["falsify", path(&data("pure_theory.json")), "--hook", "none"]).status.code(), Some(3));
    assert_eq!(nogo(&["falsify", path(&data("pure_theory.json")), "--budget", "0"]).status.code(), Some(3));
    assert_eq!(nogo(&["falsify", path(&data("pure_theory.json")), "--hook", "bell"]).status.code(), Some(2));

    // The qubit value model as a finite table: consistent on pure states only.
    let mut hook = BellHook::new(BlochState::new([0.0, 0.0, 1.0]).unwrap(), 16);
    let rays = [Ray::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap()];
    let c = bell_candidate(&mut hook, &rays, &rays).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bell.json");
    std::fs::write(&f, serde_json::to_string(&candidate_file(&c)).unwrap()).unwrap();
    let o = nogo(&["falsify", path(&f), "--hook", "bell", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(&o)["violation"]["gap"].as_f64().unwrap() > 1e-9);
}

#[test]
fn help_exits_zero() {
    let o = nogo(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check-valuation"));
}
