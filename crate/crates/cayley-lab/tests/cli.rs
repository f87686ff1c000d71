//! End-to-end tests of the binary: exit-code contract, output determinism,
//! JSON round trips and conformance to the shipped schemas.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cayley-lab"));
    cmd.env_remove("CAYLEY_LAB_MODE");
    cmd
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn model(name: &str) -> String {
    repo_root()
        .join("models")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn schema(name: &str) -> Value {
    let path = repo_root().join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

/// Minimal structural validator: understands `type` (with arrays and null),
/// `required`, `properties`, `items`, `enum` and same-directory `$ref`.
fn validate(value: &Value, schema: &Value, root_dir: &Path, path: &str) -> Result<(), String> {
    let obj = match schema.as_object() {
        Some(o) => o,
        None => return Ok(()),
    };
    if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
        let referenced: Value = serde_json::from_str(
            &std::fs::read_to_string(root_dir.join(reference))
                .map_err(|e| format!("{path}: cannot read {reference}: {e}"))?,
        )
        .map_err(|e| format!("{path}: bad schema {reference}: {e}"))?;
        return validate(value, &referenced, root_dir, path);
    }
    if let Some(variants) = obj.get("oneOf").and_then(Value::as_array) {
        let mut errors = Vec::new();
        for variant in variants {
            match validate(value, variant, root_dir, path) {
                Ok(()) => return Ok(()),
                Err(e) => errors.push(e),
            }
        }
        return Err(format!(
            "{path}: no oneOf variant matched ({})",
            errors.join(" | ")
        ));
    }
    if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
        return Ok(());
    }
    if let Some(ty) = obj.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{path}: expected {names:?}, found {value}"));
        }
    }
    if let Some(required) = obj.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if value.get(key).is_none() {
                return Err(format!("{path}: missing required key {key}"));
            }
        }
    }
    if let Some(properties) = obj.get("properties").and_then(Value::as_object) {
        for (key, subschema) in properties {
            if let Some(subvalue) = value.get(key) {
                validate(subvalue, subschema, root_dir, &format!("{path}.{key}"))?;
            }
        }
    }
    if let Some(items) = obj.get("items") {
        if let Some(array) = value.as_array() {
            for (i, item) in array.iter().enumerate() {
                validate(item, items, root_dir, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

fn assert_valid(value: &Value, schema_name: &str) {
    let schema = schema(schema_name);
    let dir = repo_root().join("schemas");
    if let Err(e) = validate(value, &schema, &dir, "$") {
        panic!("schema violation against {schema_name}: {e}");
    }
}

#[test]
fn verify_exit_codes() {
    let ok = bin().arg("verify").output().unwrap();
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stderr)
    );
    assert!(stdout_of(&ok).contains("verdict: pass"));

    let corrupted = bin().args(["verify", "--corrupt-phi"]).output().unwrap();
    assert_eq!(corrupted.status.code(), Some(1));
}

#[test]
fn verify_json_matches_schema() {
    let out = bin().args(["verify", "--output", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "verify_report.schema.json");
    // measured constants surface in the report
    let checks = value["checks"].as_array().unwrap();
    let schur = checks
        .iter()
        .find(|c| c["name"] == "lee_schur_constant")
        .unwrap();
    assert_eq!(schur["measured"], "1");
    let chain = checks
        .iter()
        .find(|c| c["name"] == "torsion_constant_chain")
        .unwrap();
    assert_eq!(chain["measured"], "7");
    assert_eq!(chain["warning"], true);
}

#[test]
fn classify_models_and_exit_codes() {
    let w0 = bin()
        .args(["classify", "--model", &model("abelian8.lie")])
        .output()
        .unwrap();
    assert_eq!(w0.status.code(), Some(0));
    assert!(stdout_of(&w0).contains("W0"));

    let w2 = bin()
        .args([
            "classify",
            "--model",
            &model("lcp_product.json"),
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(w2.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&w2)).unwrap();
    assert_valid(&value, "classification_report.schema.json");
    assert_eq!(value["fernandez_class"], "W2");
    assert_eq!(value["residual_lcp"], "0");
    assert_eq!(value["dtheta_zero"], true);

    // missing file and malformed files exit 2
    let missing = bin()
        .args(["classify", "--model", "no-such-file.lie"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let dir = tempdir();
    let malformed = dir.join("broken.lie");
    std::fs::write(&malformed, "dim 8\n2 1 3 1\n").unwrap();
    let bad = bin()
        .args(["classify", "--model", malformed.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    // Jacobi failure names the precondition
    let broken_jacobi = dir.join("nonjacobi.lie");
    std::fs::write(&broken_jacobi, "dim 8\n1 2 3 1\n1 3 3 1\n2 3 1 1\n").unwrap();
    let out = bin()
        .args(["classify", "--model", broken_jacobi.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Jacobi"));

    // float mode is rejected for exact classification
    let float = bin()
        .args([
            "classify",
            "--model",
            &model("lcp_product.json"),
            "--mode",
            "float",
        ])
        .output()
        .unwrap();
    assert_eq!(float.status.code(), Some(2));

    // a product model that fails admissibility names the precondition
    let inadmissible = dir.join("inadmissible.json");
    let mut text = std::fs::read_to_string(model("lcp_product.json")).unwrap();
    text = text.replace("\"1/2\"", "\"1\""); // the unit coefficient fails the pairing check
    std::fs::write(&inadmissible, text).unwrap();
    let out = bin()
        .args(["classify", "--model", inadmissible.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("admissib"));
}

#[test]
fn emitted_reports_reparse_to_typed_values() {
    let verify = bin().args(["verify", "--output", "json"]).output().unwrap();
    let report: cayley_lab::cli::VerifyReport = serde_json::from_str(&stdout_of(&verify)).unwrap();
    assert!(report.verdict);

    let classify = bin()
        .args([
            "classify",
            "--model",
            &model("lcp_product.json"),
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    let report: cayley_lab::cedga::ClassificationReport =
        serde_json::from_str(&stdout_of(&classify)).unwrap();
    assert_eq!(
        report.fernandez_class,
        cayley_lab::cedga::FernandezClass::W2
    );

    let scan = bin()
        .args(["scan", "--grid", "0,1,1/2", "--output", "json"])
        .output()
        .unwrap();
    let report: cayley_lab::cli::ScanCommandReport =
        serde_json::from_str(&stdout_of(&scan)).unwrap();
    let inner = report.scan.expect("scan present");
    assert_eq!(inner.conventions.len(), 2);

    let reconcile = bin()
        .args(["reconcile", "--output", "json"])
        .output()
        .unwrap();
    let report: cayley_lab::cedga::ReconcileReport =
        serde_json::from_str(&stdout_of(&reconcile)).unwrap();
    assert_eq!(report.admissible.len(), 12);
}

#[test]
fn project_spaces_and_degree_mismatch() {
    let dir = tempdir();
    let two_form = dir.join("two.json");
    std::fs::write(
        &two_form,
        r#"{"n":8,"k":2,"terms":[{"idx":[1,2],"c":"1"}]}"#,
    )
    .unwrap();
    let path = two_form.to_str().unwrap();

    let p7 = bin()
        .args([
            "project", "--form", path, "--space", "2_7", "--output", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(p7.status.code(), Some(0));
    let v7: Value = serde_json::from_str(&stdout_of(&p7)).unwrap();
    assert_valid(&v7, "form.schema.json");

    let p21 = bin()
        .args([
            "project", "--form", path, "--space", "2_21", "--output", "json",
        ])
        .output()
        .unwrap();
    let v21: Value = serde_json::from_str(&stdout_of(&p21)).unwrap();

    // the two projections sum back to the input
    let f7: cayley_lab::KForm<cayley_lab::Rational> = serde_json::from_value(v7).unwrap();
    let f21: cayley_lab::KForm<cayley_lab::Rational> = serde_json::from_value(v21).unwrap();
    let sum = f7.add(&f21).unwrap();
    let original: cayley_lab::KForm<cayley_lab::Rational> =
        serde_json::from_str(&std::fs::read_to_string(&two_form).unwrap()).unwrap();
    assert_eq!(sum, original);

    // degree mismatch is a usage error
    let mismatch = bin()
        .args(["project", "--form", path, "--space", "4_1"])
        .output()
        .unwrap();
    assert_eq!(mismatch.status.code(), Some(2));

    // unknown space name is a usage error via clap
    let unknown = bin()
        .args(["project", "--form", path, "--space", "9_9"])
        .output()
        .unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn project_phi_line_fixes_cayley_form() {
    // the standard form is its own projection onto the line it spans
    let dir = tempdir();
    let phi_file = dir.join("phi.json");
    let phi = cayley_lab::spin7::cayley_form();
    std::fs::write(&phi_file, serde_json::to_string(&phi).unwrap()).unwrap();
    let out = bin()
        .args([
            "project",
            "--form",
            phi_file.to_str().unwrap(),
            "--space",
            "4_1",
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let back: cayley_lab::KForm<cayley_lab::Rational> =
        serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(back, phi);
}

#[test]
fn project_float_mode() {
    let dir = tempdir();
    let form = dir.join("float_form.json");
    std::fs::write(&form, r#"{"n":8,"k":2,"terms":[{"idx":[1,2],"c":0.5}]}"#).unwrap();
    let out = bin()
        .args([
            "project",
            "--form",
            form.to_str().unwrap(),
            "--space",
            "2_7",
            "--mode",
            "float",
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "form.schema.json");
    // float coefficients serialize as numbers
    assert!(value["terms"][0]["c"].is_number());
    // float input is rejected in exact mode
    let exact = bin()
        .args([
            "project",
            "--form",
            form.to_str().unwrap(),
            "--space",
            "2_7",
        ])
        .output()
        .unwrap();
    assert_eq!(exact.status.code(), Some(2));
}

#[test]
fn lee_report_schema() {
    let out = bin()
        .args([
            "lee",
            "--model",
            &model("lcp_product.json"),
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "lee_report.schema.json");
    assert_eq!(value["residual"], "0");
    assert_eq!(value["torsion"]["scale"], "7");
}

#[test]
fn reconcile_schema_and_content() {
    let out = bin()
        .args(["reconcile", "--output", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "reconcile_report.schema.json");
    assert_eq!(value["literal_choice_admissible"], false);
    assert_eq!(value["admissible"].as_array().unwrap().len(), 12);
}

#[test]
fn scan_json_schema_and_locus() {
    let out = bin()
        .args(["scan", "--grid", "-1,0,1,1/2,-1/2", "--output", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "scan_report.schema.json");
    let conventions = value["scan"]["conventions"].as_array().unwrap();
    assert_eq!(conventions.len(), 2);
    for convention in conventions {
        assert_eq!(convention["lee_map_rank"], 8);
        assert_eq!(convention["locus_constraints"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn scan_empty_grid_is_usage_error() {
    let out = bin().args(["scan", "--grid", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_literal_convention_records_inadmissibility() {
    let out = bin()
        .args([
            "scan",
            "--conventions",
            "literal",
            "--grid",
            "0,1",
            "--output",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["literal_choice_admissible"], false);
    assert!(value.get("scan").is_none() || value["scan"].is_null());
}

#[test]
fn float_scan_agrees_with_exact_locus() {
    let out = bin()
        .args([
            "scan", "--grid", "0,1,1/2", "--mode", "float", "--output", "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_valid(&value, "scan_report.schema.json");
    let sweeps = value["scan"]["float_sweeps"].as_array().unwrap();
    assert_eq!(sweeps.len(), 16); // 2 conventions x 8 angles
    for sweep in sweeps {
        assert_eq!(sweep["agrees_with_exact_locus"], true);
        assert_eq!(sweep["all_locus_theta_normal"], true);
    }
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["verify", "--output", "json"],
        vec!["reconcile", "--output", "json"],
        vec!["scan", "--grid", "0,1,1/2", "--output", "json"],
    ] {
        let first = bin().args(&args).output().unwrap();
        let second = bin().args(&args).output().unwrap();
        assert_eq!(
            first.stdout, second.stdout,
            "nondeterministic output for {args:?}"
        );
    }
}

#[test]
fn env_var_selects_mode() {
    // an invalid value is a usage error
    let out = bin()
        .env("CAYLEY_LAB_MODE", "sometimes")
        .args(["reconcile"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // float default via the environment is accepted and used by scan
    let out = bin()
        .env("CAYLEY_LAB_MODE", "float")
        .args(["scan", "--grid", "0,1", "--output", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(value["scan"]["float_sweeps"].is_array());

    // an explicit flag wins over the environment
    let out = bin()
        .env("CAYLEY_LAB_MODE", "float")
        .args([
            "scan", "--grid", "0,1", "--mode", "exact", "--output", "json",
        ])
        .output()
        .unwrap();
    let value: Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(value["scan"].get("float_sweeps").is_none());
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verify"));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cayley-lab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
