use std::process::{Command, Output};

fn hopfcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcx")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn lists_every_instance() {
    let out = hopfcx(&["list-instances"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "circle",
        "sphere",
        "three_sasaki",
        "product",
        "stiefel_complex",
        "stiefel_real",
        "g2",
        "spin7",
    ] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn verify_product_passes() {
    let out = hopfcx(&[
        "verify",
        "--instance",
        "product",
        "--n",
        "1",
        "--samples",
        "10",
        "--pairs",
        "3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["subject"], "product n=1 [convention 0]");
    assert!(stderr(&out).contains("all checks pass"));
}

#[test]
fn broken_convention_exits_one() {
    let out = hopfcx(&[
        "verify",
        "--instance",
        "stiefel_complex",
        "--n",
        "1",
        "--convention",
        "2",
        "--samples",
        "5",
        "--pairs",
        "2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("bundle.bracket_convention"), "{}", stderr(&out));
}

#[test]
fn manifest_problems_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"instance": "product", "colour": 3}"#).unwrap();
    let out = hopfcx(&["verify", "--manifest", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    assert_eq!(code(&hopfcx(&["verify", "--instance", "stiefel_real", "--n", "2"])), 3);
    assert_eq!(code(&hopfcx(&["verify", "--instance", "torus"])), 3);
    assert_eq!(code(&hopfcx(&["verify"])), 3);
    assert_eq!(code(&hopfcx(&["verify", "--instance", "product", "--samples", "0"])), 3);
}

#[test]
fn manifest_fields_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let report = dir.path().join("r.json");
    std::fs::write(
        &manifest,
        r#"{"instance": "sphere", "n": 5, "samples": 6, "pairs": 2, "seed": 3, "fiber_matrix": null}"#,
    )
    .unwrap();
    let out = hopfcx(&[
        "verify",
        "--manifest",
        manifest.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["environment"]["samples"], 6);
    assert_eq!(doc["subject"], "sphere n=5");
    assert!(doc["environment"]["manifest_sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn audit_of_v2_c2_exits_zero() {
    let out = hopfcx(&[
        "audit",
        "--instance",
        "stiefel_complex",
        "--n",
        "1",
        "--samples",
        "4",
        "--pairs",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    assert_eq!(rows[0]["index"], 0);
}

#[test]
fn audit_of_real_stiefel_is_deterministic() {
    let args = [
        "audit",
        "--instance",
        "stiefel_real",
        "--n",
        "3",
        "--samples",
        "2",
        "--pairs",
        "1",
    ];
    let a = hopfcx(&args);
    let b = hopfcx(&[&args[..], &["--workers", "2"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 32);
    let mut seen: Vec<u64> = rows.iter().map(|r| r["index"].as_u64().unwrap()).collect();
    seen.sort_unstable();
    assert_eq!(seen, (0..32).collect::<Vec<_>>());
    let ranks: Vec<u64> = rows.iter().map(|r| r["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, (1..=32).collect::<Vec<_>>());
}

#[test]
fn audit_needs_a_bundle() {
    assert_eq!(code(&hopfcx(&["audit", "--instance", "sphere", "--n", "3"])), 3);
}
