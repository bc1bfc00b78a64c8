use std::path::PathBuf;
use std::process::Command;

use cesaro_oc::cli::{run, Outcome, EXIT_ANALYTIC, EXIT_INAPPLICABLE, EXIT_OK, EXIT_PARSE, EXIT_VERIFY_FAILED};
use cesaro_oc::doc::{self, FunctionDoc, SpaceDoc};
use serde_json::Value;

fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden")
}

fn fixture(name: &str) -> String {
    golden().join(name).to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    let mut all = vec!["cesaro-oc".to_string()];
    all.extend(args.iter().map(|a| {
        if a.ends_with(".json") && !a.contains('/') {
            fixture(a)
        } else {
            a.to_string()
        }
    }));
    run(all)
}

fn fixtures(prefix: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(golden())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(prefix))
        .collect();
    v.sort();
    v
}

#[test]
fn function_documents_round_trip() {
    let files = fixtures("function_");
    assert!(files.len() >= 5);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let f = doc::parse_function(&text).unwrap();
        let emitted = doc::emit_function(&f);
        let a: Value = serde_json::from_str(&text).unwrap();
        let b: Value = serde_json::from_str(&emitted).unwrap();
        assert_eq!(a, b, "{}", path.display());
        assert_eq!(doc::parse_function(&emitted).unwrap(), f);
    }
}

#[test]
fn space_documents_round_trip() {
    let files = fixtures("space_");
    assert!(files.len() >= 10);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let x = doc::parse_space(&text).unwrap();
        let emitted = doc::emit_space(&x);
        assert_eq!(emitted.trim_end(), text.trim_end(), "{}", path.display());
        assert_eq!(doc::from_json::<SpaceDoc>(&emitted).unwrap(), doc::from_json::<SpaceDoc>(&text).unwrap());
    }
}

#[test]
fn parse_errors_name_the_field() {
    let bad = r#"{"schema":"ppl-doc/1","domain":"unit","pieces":[{"interval":[0,"x"],"terms":[]}]}"#;
    let e = doc::parse_function(bad).unwrap_err().to_string();
    assert!(e.contains("pieces[0].interval[1]"), "{e}");
    assert!(e.contains("line 1"), "{e}");

    let overlap = r#"{"schema":"ppl-doc/1","domain":"unit","pieces":[
        {"interval":[0,0.6],"terms":[{"c":1,"alpha":0,"logpow":0}]},
        {"interval":[0.5,1],"terms":[{"c":1,"alpha":0,"logpow":0}]}]}"#;
    assert!(doc::parse_function(overlap).unwrap_err().to_string().contains("pieces"));

    let schema = r#"{"schema":"ppl-doc/2","domain":"unit","pieces":[]}"#;
    assert!(doc::parse_function(schema).unwrap_err().to_string().contains("schema"));

    let unknown = r#"{"schema":"space-doc/1","domain":"unit","space":{"tag":"sobolev"}}"#;
    assert!(doc::parse_space(unknown).unwrap_err().to_string().contains("space"));

    // u^(1/2) is not convex
    let concave = r#"{"schema":"space-doc/1","domain":"unit","space":{"tag":"orlicz",
        "phi":[{"interval":[0,"inf"],"terms":[{"c":1,"alpha":0.5,"logpow":0}]}],"a_phi":0,"b_phi":"inf"}}"#;
    assert!(doc::parse_space(concave).is_err());
}

#[test]
fn cli_outputs_match_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("cesaro_chi_0_1.out", &["cesaro", "function_halfline_chi_0_1.json"]),
        ("norm_chi_0_1_ces2.out", &["norm", "function_halfline_chi_0_1.json", "space_halfline_C_L2.json"]),
        ("norm_chi_0_1_ces1.csv", &["norm", "function_halfline_chi_0_1.json", "space_halfline_C_L1.json", "--out", "csv"]),
        ("rearrange_chi_2_3.out", &["rearrange", "function_halfline_chi_2_3.json", "--grid", "4"]),
        ("rearrange_reciprocal_tail.csv", &["rearrange", "function_halfline_reciprocal_tail.json", "--grid", "8", "--out", "csv"]),
        ("oc_space_unit_ces_inf.csv", &["oc-space", "space_unit_C_Linf.json", "--out", "csv"]),
        ("oc_point_half_unit_ces_inf.csv", &["oc-point", "function_unit_chi_half_1.json", "space_unit_C_Linf.json", "--method", "all", "--out", "csv"]),
        ("oc_point_half_unit_ces_inf.out", &["oc-point", "function_unit_chi_half_1.json", "space_unit_C_Linf.json"]),
        ("verify_battery_small.csv", &["verify", "battery_small.json"]),
    ];
    for (file, args) in cases {
        let out = cli(args);
        assert_eq!(out.code, EXIT_OK, "{file}: {}", out.stderr);
        let want = std::fs::read_to_string(golden().join("cli").join(file)).unwrap();
        assert_eq!(out.stdout, want, "{file}");
    }
}

#[test]
fn cesaro_output_is_a_function_document() {
    let out = cli(&["cesaro", "function_halfline_chi_0_1.json"]);
    let g: FunctionDoc = doc::from_json(&out.stdout).unwrap();
    let g = g.to_ppl().unwrap();
    for t in [0.25, 0.5, 1.0, 2.0, 10.0] {
        let want = if t <= 1.0 { 1.0 } else { 1.0 / t };
        assert!((g.evaluate(t).unwrap() - want).abs() < 1e-15);
    }
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let args: &[&str] = &["oc-point", "function_unit_log.json", "space_unit_C_Linf.json", "--method", "all", "--search", "12", "--seed", "3"];
    let a = cli(args);
    let b = cli(args);
    assert_eq!(a, b);
    let v = cli(&["verify", "battery_small.json"]);
    assert_eq!(v, cli(&["verify", "battery_small.json"]));
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["norm", "missing.json", "space_unit_L2.json"]).code, EXIT_PARSE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_PARSE);
    assert_eq!(cli(&["rearrange", "function_unit_log.json", "--grid", "0"]).code, EXIT_PARSE);
    let recip = golden().parent().unwrap().join("function_unit_reciprocal.json");
    let out = cli(&["cesaro", recip.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_ANALYTIC, "{}", out.stderr);
    let out = cli(&["oc-point", "function_unit_log.json", "space_unit_L2.json"]);
    assert_eq!(out.code, EXIT_INAPPLICABLE);
    assert!(out.stderr.contains("Cesaro"));
    assert_eq!(cli(&["verify", "battery_small.json", "--tol", "1e-300"]).code, EXIT_VERIFY_FAILED);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn tolerance_from_environment() {
    let bin = env!("CARGO_BIN_EXE_cesaro-oc");
    let status = Command::new(bin)
        .args(["verify", &fixture("battery_small.json")])
        .env("CESARO_OC_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_VERIFY_FAILED));
    let status = Command::new(bin)
        .args(["verify", &fixture("battery_small.json")])
        .env("CESARO_OC_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("1e-6"));
}

#[test]
fn norm_command_values() {
    let out = cli(&["norm", "function_halfline_chi_0_1.json", "space_halfline_C_L2.json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);
    let out = cli(&["norm", "function_halfline_chi_0_1.json", "space_halfline_C_L1.json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["value"], "inf");
}

#[test]
fn space_verdict_examples() {
    let out = cli(&["oc-space", "space_halfline_C_Marcinkiewicz_sqrt.json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "not-OC");
    let out = cli(&["oc-space", "space_halfline_C_L2.json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "OC");
}
