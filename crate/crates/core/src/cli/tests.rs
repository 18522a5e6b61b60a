use super::*;

#[test]
fn config_parsing() {
    let c = RunConfig::from_json(r#"{"preset":"t0","suites":["sov","yangian","sov"],"precision":40,"seed":3}"#).unwrap();
    assert_eq!(c.suites, vec![Suite::Yangian, Suite::Sov]);
    assert_eq!((c.precision, c.seed), (40, 3));
    let raw = RunConfig::from_json(r#"{"n":2,"nu":[[1,0]],"theta":["0"],"z":["2","3"],"w":["7"]}"#).unwrap();
    assert_eq!(raw.chain, c.chain);
    assert_eq!(raw.suites, Suite::ALL.to_vec());
    assert!(RunConfig::from_json(r#"{"preset":"t0","colour":1}"#).is_err());
    assert!(RunConfig::from_json(r#"{"preset":"t0","suites":["nope"]}"#).is_err());
    assert!(RunConfig::from_json(r#"{"preset":"t0","n":2}"#).is_err());
}

#[test]
fn theta_on_the_lattice_is_rejected() {
    let e = RunConfig::from_json(r#"{"n":2,"nu":[[1,0],[1,0]],"theta":["0","1"]}"#).unwrap_err();
    assert!(matches!(e, Error::Genericness(_)), "{e}");
}

#[test]
fn bethe_preconditions() {
    let e = RunConfig::from_json(r#"{"preset":"t0","precision":20}"#).unwrap_err();
    assert!(matches!(e, Error::PrecisionTooLow { digits: 20, needed: 30 }));
    // equal twists are fine without the Bethe suite
    let raw = r#"{"n":2,"nu":[[1,0]],"theta":["0"],"z":["2","2"],"suites":["gt"]}"#;
    assert!(RunConfig::from_json(raw).is_ok());
    let bad = raw.replace(r#"["gt"]"#, r#"["bethe"]"#);
    assert!(matches!(RunConfig::from_json(&bad).unwrap_err(), Error::Genericness(_)));
}

#[test]
fn describe_presets() {
    let t1 = describe(&RunConfig::from_json(r#"{"preset":"t1"}"#).unwrap()).unwrap();
    assert!(t1.contains("Hilbert dimension: 64"));
    assert!(t1.contains("B-operator degree: 6"));
    assert!(t1.contains("site 2: nu = [2, 1, 0], 8 GT patterns"));
    let t0 = describe(&RunConfig::from_json(r#"{"preset":"t0"}"#).unwrap()).unwrap();
    assert!(t0.contains("Hilbert dimension: 2") && t0.contains("B-operator degree: 1"));
    let one = describe(&RunConfig::from_json(r#"{"n":2,"nu":[[1,1]],"theta":["0"]}"#).unwrap()).unwrap();
    assert!(one.contains("Hilbert dimension: 1"));
}

#[test]
fn t0_full_run_passes_and_is_deterministic() {
    let cfg = RunConfig::from_json(r#"{"preset":"t0","seed":5}"#).unwrap();
    let a = run(&cfg).unwrap();
    for s in &a.suites {
        assert!(s.status.passed(), "{}: {:#?}", s.suite, s.checks);
    }
    assert!(a.passed);
    assert_eq!(a.suites.iter().map(|s| s.suite).collect::<Vec<_>>(), Suite::ALL.to_vec());
    let b = run(&cfg).unwrap();
    assert_eq!(a.without_timings().to_json().unwrap(), b.without_timings().to_json().unwrap());
    let v: serde_json::Value = serde_json::from_str(&a.to_json().unwrap()).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["suites"][4]["suite"], "bethe");
    assert_eq!(v["suites"][4]["artifacts"].as_array().unwrap().len(), 2);
    assert!(v["suites"][0]["worst_residual"].is_string());
}
