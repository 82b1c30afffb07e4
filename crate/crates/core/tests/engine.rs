use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde_json::json;
use uwcam_core::engine::{evaluate, evaluate_point, sweep, Metric, Stage, SweepAxis, SweepSpec};
use uwcam_core::mission::depth_of_field;
use uwcam_core::presets::{load_catalog, Catalog};
use uwcam_core::propagation::{attenuate, irradiance_at_distance};
use uwcam_core::report::evaluation_document;
use uwcam_core::scenario::{load_scenario, parse_scenario, resolve, ScenarioDoc};
use uwcam_core::sensor::{PLANCK, SPEED_OF_LIGHT};
use uwcam_validation::chain::{self, ChainInputs};
use uwcam_validation::table::Table;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn catalog() -> Catalog {
    load_catalog(&root().join("data")).unwrap()
}

fn bundled(name: &str) -> ScenarioDoc {
    parse_scenario(&std::fs::read_to_string(root().join("scenarios").join(name)).unwrap()).unwrap()
}

fn flat(v: f64) -> serde_json::Value {
    json!([[400, v], [700, v]])
}

/// Every stage is a single multiplication: no water loss, white Lambertian
/// target at normal incidence, lossless lens, η ≡ 1.
fn identity_doc(lumens: f64) -> serde_json::Value {
    json!({
        "schema_version": 1,
        "grid": {"start_nm": 400, "stop_nm": 700, "step_nm": 5},
        "light": {"samples": flat(1.0), "luminous_flux_lm": lumens, "beam_half_angle_deg": 30},
        "water": {"samples": flat(0.0)},
        "surface": {"samples": flat(1.0)},
        "geometry": {"camera_altitude_m": 1.5},
        "viewport": {"kind": "dome", "inner_radius_mm": 50, "outer_radius_mm": 55, "glass_index": 1.5},
        "lens": {"focal_length_mm": 16, "aperture_number": 2.0},
        "sensor": {"custom": {
            "name": "ideal", "pixel_area_m2": 1e-11, "resolution_x": 1000, "resolution_y": 1000,
            "sensor_size_x_mm": 3.16, "sensor_size_y_mm": 3.16, "qe_samples": flat(1.0),
            "system_gain_dn_per_e": 0.01, "dark_signal_dn": 0, "dark_noise_var_e2": 0, "bit_depth": 16
        }},
        "exposure": {"mode": "manual", "exposure_time_s": 0.001},
        "mission": {"vehicle_speed_m_s": 0.1, "overlap_fraction": 0.5, "max_blur_pixels": 2, "min_dof_m": 0.05}
    })
}

#[test]
fn identity_chain_matches_closed_form() {
    let cat = Catalog::default();
    // Lumens that make the flat 400–700 nm source exactly 1 W on this grid.
    let probe = load_scenario(&identity_doc(1000.0).to_string(), &cat).unwrap().1;
    let watts_per_1000 = evaluate(&probe).unwrap().stage(Stage::Source).integrate();
    let lumens = 1000.0 / watts_per_1000;
    let sc = load_scenario(&identity_doc(lumens).to_string(), &cat).unwrap().1;
    let r = evaluate(&sc).unwrap();

    let total_w = r.stage(Stage::Source).integrate();
    assert!((total_w - 1.0).abs() < 1e-12);
    let per_nm = 1.0 / 300.0;
    let omega = 2.0 * PI * (1.0 - 30f64.to_radians().cos());
    let d = 1.5;
    let e_target = per_nm / (omega * d * d);
    let radiance = e_target / PI;
    let e_sensor = radiance * PI / 4.0 / 4.0;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs();
    for (stage, expected) in [
        (Stage::Source, per_nm),
        (Stage::AtTarget, e_target),
        (Stage::AfterReflection, radiance),
        (Stage::AtLens, radiance),
        (Stage::AtSensor, e_sensor),
    ] {
        for &v in r.stage(stage).values() {
            assert!(close(v, expected), "{stage:?}: {v} vs {expected}");
        }
    }
    // ∫ E·λ dλ for constant E over 400–700 nm is E·(700² − 400²)/2 (nm²).
    let electrons =
        1e-11 * 1e-3 / (PLANCK * SPEED_OF_LIGHT) * e_sensor * 1e-9 * (700f64.powi(2) - 400f64.powi(2)) / 2.0;
    assert!(close(r.response.absorbed_electrons, electrons));
    assert!(close(r.response.digital_value, 0.01 * electrons));
}

#[test]
fn evaluation_is_deterministic() {
    let cat = catalog();
    for name in ["tank-validation.json", "auv-survey.json"] {
        let doc = bundled(name);
        let a = evaluate(&resolve(&doc, &cat).unwrap()).unwrap();
        let b = evaluate(&resolve(&doc, &cat).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            evaluation_document(None, &a).to_string(),
            evaluation_document(None, &b).to_string()
        );
    }
}

#[test]
fn bundled_scenarios_are_feasible() {
    let cat = catalog();
    for name in ["tank-validation.json", "auv-survey.json"] {
        let r = evaluate(&resolve(&bundled(name), &cat).unwrap()).unwrap();
        assert!(r.feasible(), "{name}: {:?}", r.constraints.violations);
    }
}

#[test]
fn stage_energy_never_increases_after_the_target() {
    let cat = catalog();
    for name in ["tank-validation.json", "auv-survey.json"] {
        let r = evaluate(&resolve(&bundled(name), &cat).unwrap()).unwrap();
        let integrals: Vec<f64> = r.stage_spectra[1..].iter().map(|s| s.integral()).collect();
        assert!(integrals.windows(2).all(|w| w[1] <= w[0]), "{name}: {integrals:?}");
    }
}

#[test]
fn two_segment_attenuation_lifts_the_semigroup() {
    let cat = catalog();
    let mut doc = serde_json::to_value(bundled("tank-validation.json")).unwrap();
    doc["surface"] = json!({"samples": flat(1.0)});
    doc["geometry"] = json!({"camera_altitude_m": 0.7, "light_path_m": 0.4});
    let sc = load_scenario(&doc.to_string(), &cat).unwrap().1;
    let r = evaluate(&sc).unwrap();
    let direct = attenuate(&irradiance_at_distance(&sc.light, 0.4).unwrap(), &sc.water, 1.1).unwrap();
    for (a, b) in r.stage(Stage::AtLens).values().iter().zip(direct.values()) {
        assert!((a * PI - b).abs() <= 1e-12 * b, "{a} vs {b}");
    }
}

fn monotone(doc: &ScenarioDoc, cat: &Catalog, path: &str, lo: f64, hi: f64) -> Vec<f64> {
    let axis = SweepAxis {
        path: path.into(),
        start: lo,
        stop: hi,
        step: (hi - lo) / 49.0,
    };
    let spec = SweepSpec {
        axes: vec![axis],
        metrics: vec![Metric::ResponseDn, Metric::Saturated],
    };
    let table = sweep(doc, cat, &spec).unwrap();
    assert_eq!(table.cells.len(), 50, "{path}");
    table
        .cells
        .iter()
        .map(|c| {
            let v = c.values.as_ref().unwrap_or_else(|e| panic!("{path}: {e}"));
            assert_eq!(v[1], 0.0, "{path} saturates");
            v[0]
        })
        .collect()
}

#[test]
fn response_is_monotone_in_the_eight_directions() {
    let cat = catalog();
    let mut doc = bundled("tank-validation.json");
    doc.geometry.light_path_m = Some(0.45);
    doc.geometry.return_path_m = Some(0.45);
    doc.surface.scale = 0.5;
    doc.exposure = uwcam_core::scenario::ExposureDoc::Manual {
        exposure_time_s: 2e-5,
        gain_db: 0.0,
    };
    let down = [
        ("geometry.light_path_m", 0.3, 3.0),
        ("geometry.return_path_m", 0.3, 3.0),
        ("water.scale", 0.0, 20.0),
        ("lens.aperture_number", 2.0, 16.0),
    ];
    let up = [
        ("light.luminous_flux_lm", 1000.0, 30000.0),
        ("exposure.exposure_time_s", 1e-6, 5e-5),
        ("exposure.gain_db", 0.0, 6.0),
        ("surface.scale", 0.05, 1.0),
    ];
    for (path, lo, hi) in down {
        let r = monotone(&doc, &cat, path, lo, hi);
        assert!(r.windows(2).all(|w| w[1] <= w[0]), "{path}: {r:?}");
        assert!(r[49] < r[0], "{path}");
    }
    for (path, lo, hi) in up {
        let r = monotone(&doc, &cat, path, lo, hi);
        assert!(r.windows(2).all(|w| w[1] >= w[0]), "{path}: {r:?}");
        assert!(r[49] > r[0], "{path}");
    }
}

#[test]
fn sweep_cells_equal_point_evaluations() {
    let cat = catalog();
    let doc = bundled("auv-survey.json");
    let spec = SweepSpec {
        axes: vec![
            SweepAxis {
                path: "lens.aperture_number".into(),
                start: 2.0,
                stop: 8.0,
                step: 2.0,
            },
            SweepAxis {
                path: "geometry.camera_altitude_m".into(),
                start: 1.0,
                stop: 3.0,
                step: 0.5,
            },
        ],
        metrics: Metric::ALL.to_vec(),
    };
    let table = sweep(&doc, &cat, &spec).unwrap();
    assert_eq!(table.cells.len(), 4 * 5);
    for cell in &table.cells {
        let point = evaluate_point(
            &doc,
            &cat,
            &[
                ("lens.aperture_number", cell.params[0]),
                ("geometry.camera_altitude_m", cell.params[1]),
            ],
        )
        .unwrap();
        let expected: Vec<f64> = spec.metrics.iter().map(|m| m.extract(&point)).collect();
        let got = cell.values.as_ref().unwrap();
        for (g, e) in got.iter().zip(&expected) {
            assert!(g.to_bits() == e.to_bits() || (g.is_nan() && e.is_nan()));
        }
    }
    // Row-major order: the first axis varies slowest.
    assert_eq!(table.cells[0].params, vec![2.0, 1.0]);
    assert_eq!(table.cells[1].params, vec![2.0, 1.5]);
    assert_eq!(table.cells[5].params, vec![4.0, 1.0]);
}

#[test]
fn one_point_sweep_is_evaluate() {
    let cat = catalog();
    let doc = bundled("tank-validation.json");
    let spec = SweepSpec {
        axes: vec![SweepAxis {
            path: "lens.aperture_number".into(),
            start: 2.0,
            stop: 2.0,
            step: 1.0,
        }],
        metrics: vec![Metric::ResponseDn, Metric::SnrDb],
    };
    let table = sweep(&doc, &cat, &spec).unwrap();
    let r = evaluate(&resolve(&doc, &cat).unwrap()).unwrap();
    assert_eq!(table.cells.len(), 1);
    assert_eq!(
        table.cells[0].values,
        Ok(vec![r.response.digital_value, r.response.snr_db])
    );
}

#[test]
fn aperture_sweep_strictly_decreases_response() {
    let cat = catalog();
    let mut doc = bundled("tank-validation.json");
    doc.exposure = uwcam_core::scenario::ExposureDoc::Manual {
        exposure_time_s: 1e-5,
        gain_db: 0.0,
    };
    let spec = SweepSpec {
        axes: vec![SweepAxis::parse_range("lens.aperture_number", "2:16:0.5").unwrap()],
        metrics: vec![Metric::ResponseDn],
    };
    let values: Vec<f64> = sweep(&doc, &cat, &spec)
        .unwrap()
        .cells
        .iter()
        .map(|c| c.values.as_ref().unwrap()[0])
        .collect();
    assert_eq!(values.len(), 29);
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn aperture_range_row_count() {
    let axis = SweepAxis::parse_range("lens.aperture_number", "1.4:16:0.2").unwrap();
    assert_eq!(axis.len(), 74);
    assert!(SweepAxis::parse_range("x", "1:2").is_err());
}

#[test]
fn dof_surface_over_focus_and_aperture() {
    let cat = catalog();
    let mut doc = bundled("tank-validation.json");
    doc.mission.circle_of_confusion_mm = Some(0.03);
    let spec = SweepSpec {
        axes: vec![
            SweepAxis::parse_range("mission.focus_distance_m", "0.5:5:0.5").unwrap(),
            SweepAxis::parse_range("lens.aperture_number", "1.4:16:0.2").unwrap(),
        ],
        metrics: vec![Metric::DofM],
    };
    let table = sweep(&doc, &cat, &spec).unwrap();
    let (ns, nn) = (10, 74);
    assert_eq!(table.cells.len(), ns * nn);
    let dof = |i: usize, j: usize| table.cells[i * nn + j].values.as_ref().unwrap()[0];
    let mut infinite = 0;
    for i in 0..ns {
        for j in 0..nn {
            if j + 1 < nn {
                assert!(dof(i, j + 1) >= dof(i, j));
            }
            if i + 1 < ns {
                assert!(dof(i + 1, j) >= dof(i, j));
            }
            infinite += dof(i, j).is_infinite() as usize;
        }
    }
    assert!(infinite > 0 && infinite < ns * nn);
    // Hand checks: flat port, f_eff = 39.9 mm, N_eff = 1.33·N.
    let c = 0.03;
    for (i, j) in [(0, 0), (3, 20), (9, 73)] {
        let s = 500.0 * (i + 1) as f64;
        let n = 1.33 * (1.4 + 0.2 * j as f64);
        let f: f64 = 39.9;
        let den = f.powi(4) - (n * c * s).powi(2);
        let expected = if den <= 0.0 {
            f64::INFINITY
        } else {
            2.0 * n * c * f * f * s * s / den / 1e3
        };
        let got = dof(i, j);
        assert!(
            got == expected || ((got - expected) / expected).abs() < 1e-9,
            "({i},{j}) {got} vs {expected}"
        );
        assert_eq!(got.is_infinite(), depth_of_field(n, c, f, s).is_infinite());
    }
}

#[test]
fn sweep_rejects_bad_specs() {
    let cat = catalog();
    let doc = bundled("tank-validation.json");
    let bad_path = SweepSpec {
        axes: vec![SweepAxis {
            path: "lens.zoom".into(),
            start: 1.0,
            stop: 2.0,
            step: 1.0,
        }],
        metrics: vec![Metric::DofM],
    };
    assert_eq!(
        sweep(&doc, &cat, &bad_path).unwrap_err()[0].code,
        "unresolvable-parameter"
    );
    let bad_step = SweepSpec {
        axes: vec![SweepAxis {
            path: "lens.aperture_number".into(),
            start: 1.0,
            stop: 2.0,
            step: 0.0,
        }],
        metrics: vec![Metric::DofM],
    };
    assert_eq!(sweep(&doc, &cat, &bad_step).unwrap_err()[0].code, "invalid-range");
    let axis = SweepAxis {
        path: "lens.aperture_number".into(),
        start: 1.0,
        stop: 2.0,
        step: 1.0,
    };
    let three = SweepSpec {
        axes: vec![axis.clone(), axis.clone(), axis],
        metrics: vec![Metric::DofM],
    };
    assert_eq!(sweep(&doc, &cat, &three).unwrap_err()[0].code, "invalid-sweep");
}

#[test]
fn failing_cells_carry_codes() {
    let cat = catalog();
    let doc = bundled("tank-validation.json");
    let spec = SweepSpec {
        axes: vec![SweepAxis::parse_range("mission.overlap_fraction", "0.8:1.2:0.2").unwrap()],
        metrics: vec![Metric::AcquisitionRateHz],
    };
    let table = sweep(&doc, &cat, &spec).unwrap();
    assert!(table.cells[0].values.is_ok());
    assert_eq!(table.cells[1].values, Err("invalid-field".to_string()));
    assert_eq!(table.cells[2].values, Err("invalid-field".to_string()));
}

fn codes(doc: &ScenarioDoc, cat: &Catalog) -> Vec<&'static str> {
    evaluate(&resolve(doc, cat).unwrap())
        .unwrap()
        .constraints
        .violations
        .iter()
        .map(|v| v.code)
        .collect()
}

#[test]
fn feasibility_codes() {
    let cat = catalog();
    let generous = bundled("auv-survey.json");
    assert!(codes(&generous, &cat).is_empty());

    let mut fast = generous.clone();
    fast.mission.vehicle_speed_m_s = 20.0;
    assert_eq!(codes(&fast, &cat), vec!["underexposed-at-blur-limit"]);

    // Twice the depth of field available at the smallest stop.
    let mut near = generous.clone();
    near.mission.focus_distance_m = Some(0.5);
    let sc = resolve(&near, &cat).unwrap();
    let f = 12.0;
    let s = sc.mission.focus_distance_m * 1e3;
    let at_max = depth_of_field(16.0, sc.mission.circle_of_confusion_mm, f, s);
    assert!(at_max.is_finite());
    let mut deep = near;
    deep.mission.min_dof_m = 2.0 * at_max / 1e3;
    assert_eq!(codes(&deep, &cat), vec!["dof-unreachable"]);
    let r = evaluate(&resolve(&deep, &cat).unwrap()).unwrap();
    assert!(r.constraints.min_aperture_for_dof.is_none());

    let mut shallow = generous.clone();
    shallow.lens.aperture_number = 1.4;
    shallow.mission.min_dof_m = 1.5;
    assert_eq!(codes(&shallow, &cat), vec!["dof-insufficient"]);

    let mut bright = generous.clone();
    bright.exposure = uwcam_core::scenario::ExposureDoc::Manual {
        exposure_time_s: 0.0014,
        gain_db: 24.0,
    };
    assert_eq!(codes(&bright, &cat), vec!["saturated"]);

    let mut slow = generous;
    slow.exposure = uwcam_core::scenario::ExposureDoc::Manual {
        exposure_time_s: 0.01,
        gain_db: 0.0,
    };
    assert!(codes(&slow, &cat).contains(&"motion-blur-exceeded"));
}

#[test]
fn minimum_aperture_reported_in_lens_units() {
    let cat = catalog();
    let doc = bundled("tank-validation.json");
    let r = evaluate(&resolve(&doc, &cat).unwrap()).unwrap();
    let a = r.constraints.min_aperture_for_dof.unwrap();
    assert!((a.aperture_number_effective - 1.33 * a.aperture_number).abs() < 1e-12);
    assert_eq!(r.constraints.widest_aperture_number, 2.0);
}

#[test]
fn auto_exposure_hits_target_when_uncapped() {
    let cat = catalog();
    let doc = bundled("auv-survey.json");
    let r = evaluate(&resolve(&doc, &cat).unwrap()).unwrap();
    assert!(!r.derived.exposure_capped_by_blur);
    assert!((r.response.digital_value - 2047.5).abs() < 1e-6);
}

/// Section-4-style tank setup against a straight-line 1 nm chain built from
/// the raw data files.
#[test]
fn end_to_end_matches_fine_grid_chain() {
    let cat = catalog();
    let doc = bundled("tank-validation.json");
    let sc = resolve(&doc, &cat).unwrap();
    let r = evaluate(&sc).unwrap();
    let data = root().join("data");
    let inputs = ChainInputs {
        lumens: 25_000.0,
        beam_half_angle_rad: 60f64.to_radians(),
        light: Table::read_csv(&data.join("light.led.csv")),
        water_b: Table::read_csv(&data.join("water.fresh-pure.csv")),
        reflectance: Table::read_csv(&data.join("material.white-target.csv")),
        transmission: Table::read_csv(&data.join("lens.multicoated.csv")),
        qe: Table::read_csv(&data.join("qe.imx250.csv")),
        light_path_m: 0.45,
        return_path_m: 0.45,
        incident_angle_rad: 0.0,
        aperture_number_effective: 1.33 * 2.0,
        field_angle_rad: 0.0,
        pixel_area_m2: 1.19025e-11,
        exposure_s: 1e-4,
        system_gain: 0.3955,
        gain_db: 0.0,
        dark_dn: 5.0,
        band: (350.0, 800.0),
    };
    let oracle = chain::run(&inputs, 1.0);
    let rel = (r.response.digital_value - oracle.digital_value).abs() / oracle.digital_value;
    assert!(
        rel < 5e-3,
        "engine {} vs oracle {} ({rel})",
        r.response.digital_value,
        oracle.digital_value
    );
    let rel_e = (r.response.absorbed_electrons - oracle.electrons).abs() / oracle.electrons;
    assert!(rel_e < 5e-3);
}

#[test]
fn led_preset_watts_match_half_nm_quadrature() {
    let cat = catalog();
    let mut doc = bundled("tank-validation.json");
    doc.light.luminous_flux_lm = 25_000.0;
    let sc = resolve(&doc, &cat).unwrap();
    let watts = uwcam_core::propagation::radiant_spectrum(&sc.light)
        .unwrap()
        .integrate();
    let shape = Table::read_csv(&root().join("data/light.led.csv"));
    let oracle = uwcam_validation::quadrature::lumens_to_watts(25_000.0, |nm| shape.at(nm), 350.0, 800.0, 0.5);
    assert!(((watts - oracle) / oracle).abs() < 5e-3, "{watts} vs {oracle}");
}
