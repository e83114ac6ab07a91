//! CLI behavior: exit codes, deterministic output, environment overrides,
//! file overrides, and schema conformance of the JSON outputs.

use std::path::PathBuf;
use std::process::Command;

fn jordan() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jordan"));
    for var in [
        "JL_ORDER_CAP",
        "JL_ELEMENT_CAP",
        "JL_DEGREE_CAP",
        "JL_TIME_BUDGET_SECONDS",
        "JL_FORMAT",
        "JL_CATALOG",
        "JL_LEDGER",
        "JL_JOBS",
    ] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(cmd: &mut Command) -> (String, String, i32) {
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("jordan-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

/// Minimal structural validation against a shipped draft-07 schema: required
/// keys are present and no unknown top-level keys appear.
fn check_against_schema(output: &serde_json::Value, schema_text: &str) {
    let schema: serde_json::Value = serde_json::from_str(schema_text).unwrap();
    let required = schema["required"].as_array().unwrap();
    let obj = output.as_object().expect("top-level object");
    for key in required {
        assert!(
            obj.contains_key(key.as_str().unwrap()),
            "missing required key {key}"
        );
    }
    if schema["additionalProperties"] == serde_json::Value::Bool(false) {
        let known = schema["properties"].as_object().unwrap();
        for key in obj.keys() {
            assert!(known.contains_key(key), "unexpected key {key}");
        }
    }
}

#[test]
fn parse_errors_exit_with_one() {
    let (_, stderr, code) = run(jordan().args(["compute", "S5 $$"]));
    assert_eq!(code, 1);
    assert!(stderr.contains("parse error"), "stderr: {stderr}");
}

#[test]
fn usage_errors_exit_with_one() {
    let (_, _, code) = run(jordan().args(["no-such-command"]));
    assert_eq!(code, 1);
    let (_, _, code) = run(jordan().args(["compute", "S5", "--json", "--csv"]));
    assert_eq!(code, 1);
}

#[test]
fn bound_only_results_exit_with_three() {
    // order 14400 with an abelian minimal normal subgroup: neither the
    // lattice nor the socle shortcut certifies J exactly
    let (stdout, _, code) = run(jordan().args([
        "compute",
        "C2 * ((A5 * A5) : C2 [swap])",
        "--no-timing",
    ]));
    assert_eq!(code, 3, "stdout: {stdout}");
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["method"], "bound-only");
    assert_eq!(report["nu"], 7200);
    assert_eq!(report["j"]["lower"], 7200);
    assert_eq!(report["j"]["upper"], 14400);
}

#[test]
fn cap_overruns_exit_with_two_and_partial_json() {
    let (stdout, stderr, code) = run(jordan().args([
        "compute",
        "(A5 * A5) : C2 [swap]",
        "--element-cap",
        "1000",
    ]));
    assert_eq!(code, 2, "stderr: {stderr}");
    let partial: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(partial["partial"], true);
    assert!(partial["error"].as_str().unwrap().contains("uncertified"));
}

#[test]
fn no_timing_output_is_byte_identical_across_runs() {
    let (a, _, code_a) = run(jordan().args(["compute", "S5", "--no-timing"]));
    let (b, _, code_b) = run(jordan().args(["compute", "S5", "--no-timing"]));
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(a, b);

    let (a, _, _) = run(jordan().args(["verify-paper", "--field", "P2R", "--json", "--no-timing"]));
    let (b, _, _) = run(jordan().args(["verify-paper", "--field", "P2R", "--json", "--no-timing"]));
    assert_eq!(a, b);
}

#[test]
fn parallel_verification_matches_serial() {
    let serial = run(jordan().args(["verify-paper", "--field", "S2", "--json", "--no-timing"]));
    let parallel = run(jordan().args([
        "verify-paper",
        "--field",
        "S2",
        "--json",
        "--no-timing",
        "--jobs",
        "4",
    ]));
    assert_eq!(serial.2, 0);
    assert_eq!(parallel.2, 0);
    assert_eq!(serial.0, parallel.0);
}

#[test]
fn environment_overrides_and_flag_precedence() {
    // with a tiny lattice cap S5 falls back to the socle shortcut
    let (stdout, _, code) = run(jordan()
        .args(["compute", "S5", "--no-timing"])
        .env("JL_ORDER_CAP", "50"));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["method"], "socle-shortcut");
    assert_eq!(report["j"]["exact"], 120);

    // an explicit flag wins over the environment
    let (stdout, _, _) = run(jordan()
        .args(["compute", "S5", "--no-timing", "--order-cap", "1000"])
        .env("JL_ORDER_CAP", "50"));
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["method"], "full-enumeration");

    // JL_FORMAT selects the default output format
    let (stdout, _, _) = run(jordan()
        .args(["subgroups", "C6"])
        .env("JL_FORMAT", "md"));
    assert!(stdout.contains("4 subgroups"));
}

#[test]
fn catalog_override_is_used_and_validated() {
    let good = temp_file(
        "cat-good.json",
        r#"[{"label": "my-v4", "expr": "D2", "expected": {"order": 4}}]"#,
    );
    let (stdout, _, code) = run(jordan()
        .args(["compute", "my-v4", "--no-timing"])
        .arg("--catalog")
        .arg(&good));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["order"], 4);
    assert_eq!(report["j"]["exact"], 1);

    let bad = temp_file(
        "cat-bad.json",
        r#"[{"label": "impossible", "expr": "C5", "expected": {"order": 6}}]"#,
    );
    let (_, stderr, code) = run(jordan()
        .args(["compute", "C5"])
        .arg("--catalog")
        .arg(&bad));
    assert_eq!(code, 1);
    assert!(stderr.contains("impossible"), "stderr: {stderr}");
}

#[test]
fn tampered_ledger_fails_verification() {
    let rows: Vec<serde_json::Value> = serde_json::from_str(include_str!(
        "../../core/data/ledger.json"
    ))
    .unwrap();
    let mut tampered = rows.clone();
    for row in &mut tampered {
        if row["id"] == "dP-C-5" {
            row["value"] = serde_json::json!(60); // S5 attains 120, not 60
        }
    }
    let path = temp_file("ledger-bad.json", &serde_json::to_string(&tampered).unwrap());
    let (_, _, code) = run(jordan()
        .args(["verify-paper", "--field", "C"])
        .arg("--ledger")
        .arg(&path));
    assert_eq!(code, 1);
}

#[test]
fn verify_paper_prints_the_theorem_lines() {
    let (stdout, _, code) = run(jordan().args(["verify-paper", "--field", "P2R"]));
    assert_eq!(code, 0);
    assert!(
        stdout.contains("J(Aut(P2(R))) = 60, Jbar = 12"),
        "stdout: {stdout}"
    );
    let (stdout, _, code) = run(jordan().args(["verify-paper", "--field", "C", "--jobs", "2"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("J(Cr2(C)) = 7200 — attained by swap-A5"));
}

#[test]
fn subgroup_and_cd_summaries() {
    let (stdout, _, code) = run(jordan().args(["subgroups", "C6"]));
    assert_eq!(code, 0);
    let summary: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(summary["subgroups"], 4);
    check_against_schema(
        &summary,
        include_str!("../../core/data/schema/subgroups_summary.schema.json"),
    );

    let (stdout, _, code) = run(jordan().args(["subgroups", "S5", "--md"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("156 subgroups in 19 classes"));

    let (stdout, _, code) = run(jordan().args(["cd-lattice", "S3"]));
    assert_eq!(code, 0);
    let cd: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(cd["max_measure"], 9);
    assert_eq!(cd["members"].as_array().unwrap().len(), 1);
    assert_eq!(cd["members"][0]["order"], 3);
    check_against_schema(
        &cd,
        include_str!("../../core/data/schema/cd_lattice.schema.json"),
    );
}

#[test]
fn json_outputs_validate_against_the_shipped_schemas() {
    let (stdout, _, code) = run(jordan().args(["compute", "heis-108", "--no-timing"]));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    check_against_schema(
        &report,
        include_str!("../../core/data/schema/jordan_report.schema.json"),
    );

    let (stdout, _, code) =
        run(jordan().args(["verify-paper", "--field", "R", "--json", "--no-timing"]));
    assert_eq!(code, 0);
    let verification: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    check_against_schema(
        &verification,
        include_str!("../../core/data/schema/verification_report.schema.json"),
    );
}

#[test]
fn csv_output_has_the_documented_columns() {
    let (stdout, _, code) = run(jordan().args(["compute", "A5", "--csv", "--no-timing"]));
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "label,order,degree,nu,abar,j,j_lower,j_upper,jbar,jbar_lower,jbar_upper,method,timing_ms"
    );
    let row = lines.next().unwrap();
    assert_eq!(row.split(',').count(), header.split(',').count());
    assert!(row.starts_with("A5,60,5,60,12,60"));
}

#[test]
fn compute_resolves_catalog_labels_before_expressions() {
    // fermat-648 is a catalog label, not expression syntax
    let (stdout, _, code) = run(jordan().args(["compute", "fermat-648", "--no-timing"]));
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["order"], 648);
    assert_eq!(report["nu"], 24);
}

#[test]
fn report_command_checks_catalog_assertions() {
    let (stdout, _, code) = run(jordan().args(["report", "--md", "--no-timing"]));
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("| S5 | 120 | 120 | 120 | 20 |"));
    assert!(!stdout.contains("MISMATCH"));
}
