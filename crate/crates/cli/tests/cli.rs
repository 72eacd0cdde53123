//! Binary-level tests: exit codes, JSON shapes, and output determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn wittrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittrep"))
        .args(args)
        .env_remove("WITTREP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn rho_identity_is_identity_matrix() {
    let out = wittrep(&["rho", "--p", "3", "--q", "3", "--element", "I"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["p"], 3);
    assert_eq!(v["q"], 3);
    assert_eq!(v["basis"][0], "A0^3");
    for i in 0..6 {
        for j in 0..6 {
            let entry = &v["matrix"][i][j];
            let expect = if i == j { 1 } else { 0 };
            assert_eq!(entry[0], expect);
        }
    }
}

#[test]
fn rho_matches_library() {
    use wittrep_core::group::parse_element;
    use wittrep_core::rep::rho_matrix;
    use wittrep_core::ring::FieldContext;

    let out = wittrep(&["rho", "--p", "3", "--q", "3", "--element", "Z(1)"]);
    assert!(out.status.success());
    let v = stdout_json(&out);

    let ctx = FieldContext::new(3, 1).unwrap();
    let m = rho_matrix(&parse_element("Z(1)", &ctx).unwrap()).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(
                v["matrix"][i][j][0].as_u64().unwrap(),
                m.at(i, j).digits()[0]
            );
        }
    }
}

#[test]
fn exit_codes() {
    // 2: element parse error, with a position diagnostic
    let out = wittrep(&["rho", "--p", "3", "--q", "3", "--element", "X(1)"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("position"), "stderr: {stderr}");

    // 2: zero torus parameter propagates as an element error
    let out = wittrep(&["rho", "--p", "3", "--q", "3", "--element", "Phi(0)"]);
    assert_eq!(out.status.code(), Some(2));

    // 3: composite characteristic
    let out = wittrep(&["verify", "--p", "4", "--q", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));

    // 3: q not a power of p
    let out = wittrep(&["verify", "--p", "3", "--q", "10", "--suite", "witt-iso"]);
    assert_eq!(out.status.code(), Some(3));

    // 3: reducible modulus
    let out = wittrep(&[
        "rho", "--p", "3", "--r", "2", "--modulus", "2,0,1", "--element", "I",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // 3: unknown suite
    let out = wittrep(&["verify", "--p", "3", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_reports_shape() {
    let out = wittrep(&[
        "verify", "--p", "3", "--q", "3", "--suite", "witt-iso,jordan",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let reports = v.as_array().unwrap();
    assert!(reports.len() >= 5);
    for r in reports {
        assert!(r["check"].is_string());
        assert_eq!(r["p"], 3);
        assert_eq!(r["q"], 3);
        assert_eq!(r["status"], "pass");
        assert!(r["timing_ms"].is_number());
    }
    // fixed order: witt-iso first, then the jordan checks
    assert_eq!(reports[0]["check"], "witt-iso/digit-map");
    assert_eq!(reports[1]["check"], "jordan/unipotent-orders");
}

#[test]
fn verify_output_is_deterministic_modulo_timing() {
    let args = [
        "verify", "--p", "3", "--q", "9", "--suite", "weights,distops,lie", "--seed", "5",
    ];
    let a = stdout_json(&wittrep(&args));
    let b = stdout_json(&wittrep(&args));
    let strip = |v: &Value| -> Value {
        let mut arr = v.as_array().unwrap().clone();
        for r in &mut arr {
            r.as_object_mut().unwrap().remove("timing_ms");
        }
        Value::Array(arr)
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn verify_weights_payload() {
    let out = wittrep(&["verify", "--p", "3", "--q", "9", "--suite", "weights"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let decomposition = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "weights/decomposition")
        .unwrap();
    assert_eq!(decomposition["witness"]["multiset"]["-3"], 2);
    assert_eq!(decomposition["witness"]["multiset"]["3"], 2);
    assert_eq!(decomposition["witness"]["multiset"]["-1"], 1);
    assert_eq!(decomposition["witness"]["multiset"]["1"], 1);
}

#[test]
fn report_order_and_enumerate() {
    let out = wittrep(&[
        "report", "order", "--p", "3", "--q", "3", "--element", "X(1,0)",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["order"], 9);
    assert_eq!(v["rho_jordan"]["order"], 9);

    let out = wittrep(&[
        "report", "enumerate", "--p", "3", "--q", "3", "--count-only",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["count"], 648);
}

#[test]
fn report_gauss_split_and_inert() {
    let out = wittrep(&["report", "gauss", "--p", "5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["split"], true);
    assert_eq!(v["iso_found"], true);
    assert_eq!(v["residue_field_size"], 5);
    assert_eq!(v["quotient_size"], 25);

    let out = wittrep(&["report", "gauss", "--p", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["split"], false);
    assert_eq!(v["iso_found"], true);
    assert_eq!(v["compared_with"], "W2(GF(9))");

    let out = wittrep(&["report", "gauss", "--p", "2"]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["skipped"].is_string());
}

#[test]
fn text_format_and_out_file() {
    let out = wittrep(&[
        "verify", "--p", "3", "--q", "3", "--suite", "witt-iso", "--format", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("witt-iso/digit-map"));
    assert!(text.contains("pass"));

    let dir = std::env::temp_dir().join("wittrep-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = wittrep(&[
        "rho", "--p", "3", "--q", "3", "--element", "I", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dim"], 6);
    std::fs::remove_file(&path).ok();
}

#[test]
fn budget_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_wittrep"))
        .args(["report", "enumerate", "--p", "3", "--q", "3", "--count-only"])
        .env("WITTREP_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn extension_field_flags() {
    // --q and --r agree; extension elements in expressions
    let out = wittrep(&[
        "rho", "--p", "3", "--q", "9", "--r", "2", "--element", "Phi([0,1])",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["q"], 9);
    // entries are digit lists of length 2
    assert_eq!(v["matrix"][0][0].as_array().unwrap().len(), 2);
}
