//! End-to-end tests against the built binary: exit codes, determinism, and
//! JSON round-trips.

use std::process::{Command, Output};

fn isofib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofib"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn kummer_worked_example() {
    let out = isofib(&["kummer", "mu", "--lambda", "2,3,6", "--l", "12"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "mu = (5/3, 5/4, 1)\n");
    let out = isofib(&["kummer", "dual", "--mu", "5/3,5/4,1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "dual mu = (13/3, 7/2, 1)\n");
}

#[test]
fn exit_codes() {
    // 0: verification passes
    let out = isofib(&["chl", "equiv", "--moduli", "2,0,1;1,1/2,3;1,0,2"]);
    assert_eq!(out.status.code(), Some(0));
    // 2: input error (normalization undefined at alpha2 = 0)
    let out = isofib(&["chl", "normalize", "--moduli", "0,1,2;3,5,7;6,7,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("normalization undefined"), "stderr: {}", err);
    // 2: malformed rationals
    let out = isofib(&["kummer", "dual", "--mu", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    // 2: float literals are rejected by the polynomial parser
    let out = isofib(&[
        "family",
        "--tag",
        "Generic",
        "--params",
        r#"{"a": "0.5*t", "b": {"expr":"t^4","homdeg":4}, "c": {"expr":"t^4-16","homdeg":4}}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("floating-point"));
}

#[test]
fn classify_is_deterministic() {
    let dir = std::env::temp_dir().join("isofib-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    std::fs::write(
        &spec,
        r#"{"family":"SixLinesParams","params":{"a":"2","b":"3","c":"5","d":"11"}}"#,
    )
    .unwrap();
    let run = || isofib(&["--json", "classify", "--spec", spec.to_str().unwrap()]);
    let first = run();
    let second = run();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "byte-identical output required");
    // the emitted JSON re-parses
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["x"]["summary"], "2I0* + 2I4 + 4I1");
    assert_eq!(v["y"]["summary"], "2I0* + 6I2");
    assert_eq!(v["x"]["euler_total"], 24);
    // round-trip: re-serializing the parsed document is stable
    let reser = serde_json::to_string_pretty(&v).unwrap();
    let v2: serde_json::Value = serde_json::from_str(&reser).unwrap();
    assert_eq!(v, v2);
}

#[test]
fn family_report_flags_match() {
    let out = isofib(&[
        "--json",
        "family",
        "--tag",
        "CHL14",
        "--params",
        r#"{"alpha": {"expr":"2*t^2+1","homdeg":2}, "beta": {"expr":"t^2+t+3","homdeg":2}, "gamma": {"expr":"t^2+2","homdeg":2}}"#,
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["x"]["summary"], "2I0* + 4I2 + 4I1");
    assert_eq!(v["x_matches_expected"], true);
    assert_eq!(v["delta_y_equals_delta_z"], true);
}

#[test]
fn chl_report_and_isogeny_verify() {
    let out = isofib(&["--json", "chl", "report", "--moduli", "2,0,1;1,1/2,3;1,0,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["flags"]["j_jac_matches_ehat"], true);
    assert_eq!(v["flags"]["monodromy_gamma0_2"], true);
    assert_eq!(v["flags"]["j_formula_match"], false);
    assert_eq!(v["bundle_surface"]["summary"], "4I2 + 4I1");

    let out = isofib(&["isogeny-verify", "--a", "1", "--b", "0", "--c", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all passed: true"));
}

#[test]
fn extra_corpus_entries() {
    let dir = std::env::temp_dir().join("isofib-cli-corpus");
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("corpus.json");
    std::fs::write(
        &corpus,
        r#"[{
            "name": "four-I0* with beta 17/8",
            "kind": {"family": "FourI0star", "params": {"a": {"expr":"t^4-1","homdeg":4}, "beta": "17/8"}},
            "expect_x": "4I0*", "expect_y": "4I0*", "expect_z": "4I0*"
        }]"#,
    )
    .unwrap();
    // a bad expectation makes verify-all exit 1
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"[{
            "name": "wrong expectation",
            "kind": {"family": "FourI0star", "params": {"a": {"expr":"t^4-1","homdeg":4}, "beta": "17/8"}},
            "expect_x": "12I2", "expect_y": "4I0*", "expect_z": "4I0*"
        }]"#,
    )
    .unwrap();
    // run only the corpus-entry path: full verify-all is exercised by the
    // acceptance suite; here we only watch the corpus-driven exit codes, so
    // keep the run cheap by including the bundled fixtures once
    let out = isofib(&["verify-all", "--corpus", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("wrong expectation"));
    assert!(text.contains("FAIL"));
    let _ = corpus;
}
