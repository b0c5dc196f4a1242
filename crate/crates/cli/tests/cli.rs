use std::process::Command as Proc;

use dhom_cli::{run, CliError, Command, Format, Options};
use jsonschema::JSONSchema;
use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn opts() -> Options {
    Options { dim_cap: dhom_core::modcat::DEFAULT_DIM_CAP, ..Options::default() }
}

fn validate(json: &str) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let instance: Value = serde_json::from_str(json).unwrap();
    let msgs: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn every_command_validates_against_schema() {
    let cmds = [
        Command::CheckDct,
        Command::Wide,
        Command::Homoepi,
        Command::Univloc,
        Command::TheoremB,
        Command::ArQuiver,
        Command::DerivedIndec,
    ];
    for spec in ["vaso-3-2-2", "ka2"] {
        for cmd in cmds {
            let out = run(cmd, spec, &opts()).unwrap();
            assert!(out.report.pass, "{spec} {}", cmd.name());
            validate(&out.render(Format::Json));
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for cmd in [Command::TheoremB, Command::ArQuiver, Command::DerivedIndec] {
        let a = run(cmd, "vaso-3-2-2", &opts()).unwrap();
        let b = run(cmd, "vaso-3-2-2", &opts()).unwrap();
        assert_eq!(a.render(Format::Json), b.render(Format::Json));
        assert_eq!(a.render(Format::Md), b.render(Format::Md));
    }
}

#[test]
fn check_dct_line() {
    let out = run(Command::CheckDct, "vaso-3-2-2", &opts()).unwrap();
    assert!(out.render(Format::Md).contains("F is 2-cluster-tilting: true"));
}

#[test]
fn table_rows_on_fixture() {
    let md = run(Command::TheoremB, "vaso-3-2-2", &opts()).unwrap().render(Format::Md);
    assert!(md.contains("| 1 | End(f1) | 1 | add{f1} | 1_Φ ↦ id_{f1} |"), "{md}");
    assert!(md.contains("| 7 | End(f1 ⊕ f2 ⊕ f3) ≅ Φ | 5 | add{f1, f2, f3, f4} |"), "{md}");
    assert!(md.contains("| 1 | add{Σ^ℤ f1} | add{Σ^ℤ {f2, f3, x}} |"), "{md}");
    assert!(md.contains("| 7 | D^b(mod Φ) | 0 |"), "{md}");
}

#[test]
fn hereditary_base_case_has_four_rows() {
    let out = run(Command::TheoremB, "ka2", &opts()).unwrap();
    assert_eq!(out.report.result["localizations"].as_array().unwrap().len(), 4);
    assert_eq!(out.report.result["sizes"], serde_json::json!([4, 4, 4, 4]));
}

#[test]
fn malformed_relation_names_the_arrow() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bad-arrow.json");
    let err = run(Command::CheckDct, path, &opts()).unwrap_err();
    assert!(matches!(&err, CliError::Parse { location, message }
        if location == "relations[0][0].path[1]" && message.contains("'b7'")), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn sibling_name_map_is_picked_up() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("alg.json");
    std::fs::write(&spec, dhom_cli::AlgebraSpecDoc::nakayama(2, 0, 1).to_json()).unwrap();
    let out = run(Command::ArQuiver, spec.to_str().unwrap(), &opts()).unwrap();
    assert!(out.render(Format::Md).contains("M1"));
    std::fs::write(dir.path().join("alg.names.json"), r#"{"modules": [{"name": "top", "dims": [1, 1]}]}"#).unwrap();
    let out = run(Command::ArQuiver, spec.to_str().unwrap(), &opts()).unwrap();
    assert!(out.render(Format::Md).contains("top"));
}

#[test]
fn syntax_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("broken.json");
    std::fs::write(&spec, "{\n  \"field\": \"Q\",\n  \"vertices\": [1]\n}").unwrap();
    let err = run(Command::Wide, spec.to_str().unwrap(), &opts()).unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
}

#[test]
fn wrong_d_is_an_input_error() {
    // kA3/rad^2 has no 3-cluster-tilting subcategory
    let err = run(Command::Wide, "nakayama-3-2-3", &opts()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let out = run(Command::CheckDct, "nakayama-3-2-3", &opts()).unwrap();
    assert!(!out.report.pass);
    assert_eq!(out.exit_code(), 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dhom");
    let ok = Proc::new(bin).args(["check-dct", "vaso-3-2-2", "--format", "json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    validate(std::str::from_utf8(&ok.stdout).unwrap());
    let bad = Proc::new(bin).args(["check-dct", "no-such-fixture"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let anomaly = Proc::new(bin).args(["check-dct", "nakayama-3-2-3"]).output().unwrap();
    assert_eq!(anomaly.status.code(), Some(1));
}

#[test]
fn env_cap_is_honoured() {
    let bin = env!("CARGO_BIN_EXE_dhom");
    let out = Proc::new(bin).args(["check-dct", "vaso-3-2-2"]).env("DHOM_DIM_CAP", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}
