//! The `sovlab` binary end to end on the in-repo presets.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn sovlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sovlab"))
}

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(format!("{name}.json"))
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_s");
            m.remove("out");
            m.values_mut().for_each(strip_timings);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

fn run_t0(dir: &Path, tag: &str, extra: &[&str]) -> (i32, Value) {
    let out = dir.join(format!("{tag}.json"));
    let st = sovlab().args(["run", "--config"]).arg(preset("t0")).args(["--jobs", "1", "--out"]).arg(&out).args(extra).output().unwrap();
    let report = std::fs::read_to_string(&out).map(|s| serde_json::from_str(&s).unwrap()).unwrap_or(Value::Null);
    (st.status.code().unwrap(), report)
}

#[test]
fn describe_t1() {
    let o = sovlab().args(["describe", "--config"]).arg(preset("t1")).output().unwrap();
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("Hilbert dimension: 64"), "{s}");
    assert!(s.contains("B-operator degree: 6"), "{s}");
}

#[test]
fn t0_run_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (code, mut a) = run_t0(dir.path(), "a", &[]);
    assert_eq!(code, 0);
    assert_eq!(a["schema"], "sovlab.report/1");
    assert_eq!(a["passed"], true);
    assert_eq!(a["suites"].as_array().unwrap().len(), 7);
    let (code, mut b) = run_t0(dir.path(), "b", &[]);
    assert_eq!(code, 0);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(a, b);
}

#[test]
fn suite_and_seed_flags_override_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_t0(dir.path(), "gt", &["--suite", "gt", "--suite", "yangian", "--seed", "9"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["yangian", "gt"]);
    assert_eq!(r["config"]["seed"], 9);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_t0(dir.path(), "low", &["--precision", "10"]);
    assert_eq!((code, r), (2, Value::Null));
    let (code, _) = run_t0(dir.path(), "unknown", &["--suite", "nope"]);
    assert_ne!(code, 0);
    let cfg = dir.path().join("lattice.json");
    std::fs::write(&cfg, r#"{"n":2,"nu":[[1,0],[1,0]],"theta":["0","1"]}"#).unwrap();
    let o = sovlab().args(["describe", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}
