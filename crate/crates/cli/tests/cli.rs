use std::path::{Path, PathBuf};

use uwcam_cli::{run, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn path(rel: &str) -> String {
    root().join(rel).display().to_string()
}

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn uwcam(args: &[&str]) -> Outcome {
    let data = path("data");
    let mut full = vec!["uwcam", "--data-dir", data.as_str()];
    full.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(full, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str, actual: &str) {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UWCAM_UPDATE_GOLDEN").is_some() {
        std::fs::write(&file, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&file).unwrap();
    assert_eq!(actual, expected, "{name} differs from the pinned golden file");
}

fn temp_scenario(edit: impl FnOnce(&mut serde_json::Value)) -> tempfile::NamedTempFile {
    let text = std::fs::read_to_string(root().join("scenarios/tank-validation.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    edit(&mut doc);
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), doc.to_string()).unwrap();
    file
}

#[test]
fn evaluate_matches_golden_report() {
    let r = uwcam(&["evaluate", "--scenario", &path("scenarios/tank-validation.json")]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["feasible"], true);
    golden("tank-validation.json", &r.out);
}

#[test]
fn spectrum_csv_matches_golden_and_stage_order() {
    let r = uwcam(&["spectrum", "--scenario", &path("scenarios/tank-validation.json")]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r
        .out
        .starts_with("wavelength_nm,source,at-target,after-reflection,at-lens,at-sensor\n"));
    assert_eq!(r.out.lines().count(), 1 + 91);
    golden("tank-validation.spectra.csv", &r.out);
    let same = uwcam(&[
        "evaluate",
        "--scenario",
        &path("scenarios/tank-validation.json"),
        "--format",
        "csv",
        "--stage-spectra",
    ]);
    assert_eq!(same.out, r.out);
}

#[test]
fn aperture_sweep_has_74_rows() {
    let r = uwcam(&[
        "sweep",
        "--scenario",
        &path("scenarios/tank-validation.json"),
        "--param",
        "lens.aperture_number",
        "--range",
        "1.4:16:0.2",
        "--metric",
        "dof",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "lens.aperture_number,dof_m");
    assert_eq!(lines.len() - 1, 74);
    assert!(
        lines[74].starts_with("16,") || lines[74].starts_with("16.0,"),
        "{}",
        lines[74]
    );
}

#[test]
fn two_axis_sweep_json() {
    let r = uwcam(&[
        "sweep",
        "--scenario",
        &path("scenarios/auv-survey.json"),
        "--param",
        "mission.focus_distance_m",
        "--range",
        "0.5:5:0.5",
        "--param2",
        "lens.aperture_number",
        "--range",
        "2:16:2",
        "--metric",
        "dof_m,response_dn",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 10 * 8);
    assert_eq!(doc["metrics"], serde_json::json!(["dof_m", "response_dn"]));
}

#[test]
fn overlap_above_one_is_an_input_error_naming_the_field() {
    let file = temp_scenario(|d| d["mission"]["overlap_fraction"] = serde_json::json!(1.2));
    let r = uwcam(&["evaluate", "--scenario", &file.path().display().to_string()]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.out.is_empty());
    assert!(r.err.contains("mission.overlap_fraction"), "{}", r.err);
}

#[test]
fn infeasible_scenario_exits_one_with_report() {
    let file = temp_scenario(|d| d["mission"]["min_dof_m"] = serde_json::json!(0.01));
    let r = uwcam(&["evaluate", "--scenario", &file.path().display().to_string()]);
    assert_eq!(r.code, EXIT_INFEASIBLE);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["feasible"], false);
    assert!(r.err.contains("dof-insufficient"));
}

#[test]
fn input_errors_exit_two() {
    let missing = uwcam(&["evaluate", "--scenario", "/no/such/file.json"]);
    assert_eq!(missing.code, EXIT_INPUT);
    let garbage = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(garbage.path(), "{ nope").unwrap();
    let bad = uwcam(&["evaluate", "--scenario", &garbage.path().display().to_string()]);
    assert_eq!(bad.code, EXIT_INPUT);
    assert!(bad.err.contains("malformed-json"));
    let metric = uwcam(&[
        "sweep",
        "--scenario",
        &path("scenarios/tank-validation.json"),
        "--param",
        "lens.aperture_number",
        "--range",
        "2:4:1",
        "--metric",
        "sharpness",
    ]);
    assert_eq!(metric.code, EXIT_INPUT);
    assert!(metric.err.contains("unknown-metric"));
    let path_err = uwcam(&[
        "sweep",
        "--scenario",
        &path("scenarios/tank-validation.json"),
        "--param",
        "lens.zoom",
        "--range",
        "2:4:1",
    ]);
    assert_eq!(path_err.code, EXIT_INPUT);
    assert!(path_err.err.contains("unresolvable-parameter"));
    assert_eq!(uwcam(&["frobnicate"]).code, EXIT_INPUT);
}

#[test]
fn presets_lists_bundled_profiles() {
    let r = uwcam(&["presets"]);
    assert_eq!(r.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let water = doc["presets"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| p["kind"] == "water")
        .count();
    assert!(water >= 8);
}

#[test]
fn validate_reports_profile_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("water.bad.csv");
    std::fs::write(&file, "wavelength_nm,b_per_m\n400,0.1\n500,0.2\n450,0.3\n").unwrap();
    let r = uwcam(&["validate", "--profile", &file.display().to_string()]);
    assert_eq!(r.code, EXIT_INPUT);
    let doc: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc["valid"], false);
    assert_eq!(doc["diagnostics"][0]["code"], "non-monotonic-grid");
    assert_eq!(doc["diagnostics"][0]["line"], 4);

    let ok = uwcam(&["validate", "--profile", &path("data/sensor.imx250.profile")]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.out);
    let scenario = uwcam(&["validate", "--scenario", &path("scenarios/auv-survey.json")]);
    assert_eq!(scenario.code, EXIT_OK);
}
