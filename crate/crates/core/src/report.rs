//! Output documents shared by the command line and the HTTP service.
//!
//! Numbers are rounded to 9 significant digits. Non-finite values are
//! written as the strings `"inf"`, `"-inf"` and `"nan"` because JSON has no
//! literal for them.

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::diagnostics::Diagnostic;
use crate::engine::{EvaluationReport, SweepTable};
use crate::presets::Catalog;
use crate::scenario::SCHEMA_VERSION;
use crate::sensor::ResponseResult;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// A report number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_nan() {
            s.serialize_str("nan")
        } else if x == f64::INFINITY {
            s.serialize_str("inf")
        } else if x == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(round_sig(x))
        }
    }
}

fn n(x: f64) -> Value {
    serde_json::to_value(Num(x)).expect("number serializes")
}

fn opt(x: Option<f64>) -> Value {
    x.map(n).unwrap_or(Value::Null)
}

/// Text form of a number for CSV cells.
pub fn format_number(x: f64) -> String {
    match serde_json::to_value(Num(x)).expect("number serializes") {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

fn response(r: &ResponseResult) -> Value {
    json!({
        "digital_value_dn": n(r.digital_value),
        "absorbed_electrons": n(r.absorbed_electrons),
        "absorbed_photons": n(r.absorbed_photons),
        "snr": n(r.snr),
        "snr_db": n(r.snr_db),
        "saturated": r.saturated,
    })
}

/// The evaluation report document.
pub fn evaluation_document(name: Option<&str>, report: &EvaluationReport) -> Value {
    let c = &report.constraints;
    let d = &report.derived;
    let o = &d.optics;
    let grid = report.stage_spectra[0].spectrum.wavelengths();
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "evaluation",
        "scenario": name,
        "feasible": c.feasible,
        "response": response(&report.response),
        "response_frame_average": response(&report.response_frame_average),
        "constraints": {
            "feasible": c.feasible,
            "violations": c.violations,
            "acquisition_rate_hz": n(c.acquisition_rate_hz),
            "max_exposure_time_s": n(c.max_exposure_time_s),
            "dof_m": n(c.dof_m),
            "fov_x_m": n(c.fov_x_m),
            "fov_y_m": n(c.fov_y_m),
            "fov_along_track_m": n(c.fov_along_track_m),
            "circle_of_confusion_mm": n(c.circle_of_confusion_mm),
            "focus_distance_m": n(c.focus_distance_m),
            "min_aperture_for_dof": c.min_aperture_for_dof.map(|a| json!({
                "kind": a.kind,
                "aperture_number": n(a.aperture_number),
                "aperture_number_effective": n(a.aperture_number_effective),
            })),
            "widest_aperture_number": n(c.widest_aperture_number),
        },
        "derived_settings": {
            "exposure_mode": d.exposure_mode,
            "exposure_time_s": n(d.exposure_time_s),
            "gain_db": n(d.gain_db),
            "target_dn": opt(d.target_dn),
            "required_exposure_s": opt(d.required_exposure_s),
            "exposure_capped_by_blur": d.exposure_capped_by_blur,
            "light_path_m": n(d.light_path_m),
            "return_path_m": n(d.return_path_m),
            "incident_angle_deg": n(d.incident_angle_deg),
            "focal_length_effective_mm": n(o.focal_length_effective_mm),
            "aperture_number_effective": n(o.aperture_number_effective),
            "angular_fov_x_rad": n(o.angular_fov_x_rad),
            "angular_fov_y_rad": n(o.angular_fov_y_rad),
            "focus_distance_required_m": opt(o.focus_distance_required_m),
            "vignetting_frame_average": n(o.vignetting_frame_average),
            "acquisition_rate_hz": n(d.acquisition_rate_hz),
        },
        "stage_spectra": {
            "wavelength_nm": grid.iter().map(|&w| n(w)).collect::<Vec<_>>(),
            "stages": report.stage_spectra.iter().map(|s| json!({
                "stage": s.stage.name(),
                "unit": s.stage.unit(),
                "integral": n(s.integral()),
                "values": s.spectrum.values().iter().map(|&v| n(v)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        },
        "warnings": report.warnings,
    })
}

/// Document returned when input is rejected.
pub fn diagnostics_document(diagnostics: &[Diagnostic]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "diagnostics",
        "valid": !crate::diagnostics::has_errors(diagnostics),
        "diagnostics": diagnostics,
    })
}

/// Stage spectra as CSV, one column per stage in pipeline order.
pub fn stage_spectra_csv(report: &EvaluationReport) -> String {
    let mut out = String::from("wavelength_nm");
    for s in &report.stage_spectra {
        out.push(',');
        out.push_str(s.stage.name());
    }
    out.push('\n');
    let grid = report.stage_spectra[0].spectrum.wavelengths();
    for (i, w) in grid.iter().enumerate() {
        out.push_str(&format_number(*w));
        for s in &report.stage_spectra {
            out.push(',');
            out.push_str(&format_number(s.spectrum.values()[i]));
        }
        out.push('\n');
    }
    out
}

/// Key scalar outputs as a two-column CSV.
pub fn evaluation_csv(report: &EvaluationReport) -> String {
    let c = &report.constraints;
    let r = &report.response;
    let rows: [(&str, f64); 12] = [
        ("response_dn", r.digital_value),
        ("response_frame_average_dn", report.response_frame_average.digital_value),
        ("electrons", r.absorbed_electrons),
        ("snr", r.snr),
        ("snr_db", r.snr_db),
        ("exposure_time_s", report.derived.exposure_time_s),
        ("acquisition_rate_hz", c.acquisition_rate_hz),
        ("max_exposure_time_s", c.max_exposure_time_s),
        ("dof_m", c.dof_m),
        ("fov_x_m", c.fov_x_m),
        ("fov_y_m", c.fov_y_m),
        ("feasible", if c.feasible { 1.0 } else { 0.0 }),
    ];
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        out.push_str(&format!("{k},{}\n", format_number(v)));
    }
    out
}

/// Sweep table as CSV: swept parameters then metrics, one row per cell.
/// Cells that failed carry the error code in every metric column.
pub fn sweep_csv(table: &SweepTable) -> String {
    let mut header: Vec<&str> = table.params.iter().map(String::as_str).collect();
    header.extend(table.metrics.iter().map(|m| m.name()));
    let mut out = header.join(",");
    out.push('\n');
    for cell in &table.cells {
        let mut row: Vec<String> = cell.params.iter().map(|&p| format_number(p)).collect();
        match &cell.values {
            Ok(values) => row.extend(values.iter().map(|&v| format_number(v))),
            Err(code) => row.extend(table.metrics.iter().map(|_| code.clone())),
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Sweep table as a JSON document.
pub fn sweep_document(table: &SweepTable) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "sweep",
        "params": table.params,
        "metrics": table.metrics.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "rows": table.cells.iter().map(|c| {
            let params: Vec<Value> = c.params.iter().map(|&p| n(p)).collect();
            match &c.values {
                Ok(v) => json!({"params": params, "values": v.iter().map(|&x| n(x)).collect::<Vec<_>>()}),
                Err(code) => json!({"params": params, "error": code}),
            }
        }).collect::<Vec<_>>(),
    })
}

/// Catalog listing document.
pub fn presets_document(catalog: &Catalog) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "presets",
        "presets": catalog.listing(),
        "diagnostics": catalog.diagnostics(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document serializes");
    s.push('\n');
    s
}
