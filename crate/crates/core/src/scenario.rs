//! Scenario documents and their resolution against the preset catalog.
//!
//! A scenario file is JSON whose nested keys mirror [`Scenario`]. Spectra
//! are given either by preset name or inline as `[[wavelength_nm, value], ...]`
//! samples. Parsing reports the JSON path of malformed fields; resolution
//! checks every component invariant and names the offending field.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::diagnostics::Diagnostic;
use crate::mission::{CameraOrientation, MissionRequirements};
use crate::optics::{Lens, Transmission, Viewport};
use crate::presets::Catalog;
use crate::propagation::{solve_geometry, LightKind, LightSource, SceneGeometry, SurfaceMaterial, WaterProfile};
use crate::sensor::{ExposureSettings, SensorModel, SnrDenominator};
use crate::spectral::{Spectrum, UnitRole, WavelengthGrid};

/// Version of the scenario and report documents.
pub const SCHEMA_VERSION: u32 = 1;

/// Default lens stop range when a scenario does not give one.
pub const DEFAULT_MIN_APERTURE: f64 = 1.4;
pub const DEFAULT_MAX_APERTURE: f64 = 22.0;

/// Inline spectrum samples: `[[wavelength_nm, value], ...]`.
pub type Samples = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub schema_version: u32,
    #[serde(default)]
    pub name: Option<String>,
    /// Evaluation grid; 350–800 nm at 5 nm when absent.
    #[serde(default)]
    pub grid: Option<GridDoc>,
    pub light: LightDoc,
    pub water: WaterDoc,
    pub surface: SurfaceDoc,
    pub geometry: GeometryDoc,
    #[serde(default = "flat_viewport")]
    pub viewport: Viewport,
    pub lens: LensDoc,
    pub sensor: SensorDoc,
    pub exposure: ExposureDoc,
    pub mission: MissionDoc,
    #[serde(default)]
    pub options: OptionsDoc,
}

fn flat_viewport() -> Viewport {
    Viewport::Flat
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    pub start_nm: f64,
    pub stop_nm: f64,
    pub step_nm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct LightDoc {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub samples: Option<Samples>,
    /// Overrides the preset's kind.
    #[serde(default)]
    pub kind: Option<LightKind>,
    pub luminous_flux_lm: f64,
    pub beam_half_angle_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct WaterDoc {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub samples: Option<Samples>,
    /// Uniform multiplier on b(λ).
    #[serde(default = "one")]
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub samples: Option<Samples>,
    /// Uniform multiplier on M(λ); the product must stay within [0, 1].
    #[serde(default = "one")]
    pub scale: f64,
}

/// Camera looks straight down from `camera_altitude_m`; the light sits
/// `light_offset_m` to the side. The explicit path and angle fields
/// override the derived values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GeometryDoc {
    pub camera_altitude_m: f64,
    #[serde(default)]
    pub light_offset_m: f64,
    #[serde(default)]
    pub light_tilt_deg: f64,
    #[serde(default)]
    pub light_path_m: Option<f64>,
    #[serde(default)]
    pub return_path_m: Option<f64>,
    #[serde(default)]
    pub incident_angle_deg: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct LensDoc {
    pub focal_length_mm: f64,
    pub aperture_number: f64,
    /// Constant transmission; 1 when neither this nor a spectrum is given.
    #[serde(default)]
    pub transmission: Option<f64>,
    #[serde(default)]
    pub transmission_preset: Option<String>,
    #[serde(default)]
    pub transmission_samples: Option<Samples>,
    #[serde(default)]
    pub min_aperture_number: Option<f64>,
    #[serde(default)]
    pub max_aperture_number: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SensorDoc {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub custom: Option<CustomSensorDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CustomSensorDoc {
    pub name: String,
    pub pixel_area_m2: f64,
    pub resolution_x: u32,
    pub resolution_y: u32,
    pub sensor_size_x_mm: f64,
    pub sensor_size_y_mm: f64,
    #[serde(default)]
    pub qe_preset: Option<String>,
    #[serde(default)]
    pub qe_samples: Option<Samples>,
    pub system_gain_dn_per_e: f64,
    pub dark_signal_dn: f64,
    pub dark_noise_var_e2: f64,
    pub bit_depth: u32,
    #[serde(default = "yes")]
    pub monochrome: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "mode", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExposureDoc {
    Manual {
        exposure_time_s: f64,
        #[serde(default)]
        gain_db: f64,
    },
    /// Exposure chosen to hit `target_dn` (half of full scale by default),
    /// capped by the motion-blur limit.
    Auto {
        #[serde(default)]
        target_dn: Option<f64>,
        #[serde(default)]
        gain_db: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MissionDoc {
    pub vehicle_speed_m_s: f64,
    pub overlap_fraction: f64,
    pub max_blur_pixels: f64,
    pub min_dof_m: f64,
    /// Two pixel pitches when absent.
    #[serde(default)]
    pub circle_of_confusion_mm: Option<f64>,
    /// Camera-to-target distance when absent.
    #[serde(default)]
    pub focus_distance_m: Option<f64>,
    #[serde(default)]
    pub orientation: CameraOrientation,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default)]
    pub snr_denominator: SnrDenominator,
    /// Field angle of the evaluated pixel; 0 is the image centre.
    #[serde(default)]
    pub field_angle_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ExposureMode {
    Manual(ExposureSettings),
    Auto { target_dn: f64, gain_db: f64 },
}

impl ExposureMode {
    pub fn gain_db(&self) -> f64 {
        match self {
            ExposureMode::Manual(e) => e.gain_db,
            ExposureMode::Auto { gain_db, .. } => *gain_db,
        }
    }
}

/// A fully resolved design point.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    pub grid: WavelengthGrid,
    pub light: LightSource,
    pub water: WaterProfile,
    pub surface: SurfaceMaterial,
    pub geometry: SceneGeometry,
    pub viewport: Viewport,
    pub lens: Lens,
    pub sensor: SensorModel,
    pub exposure: ExposureMode,
    pub mission: MissionRequirements,
    pub snr_denominator: SnrDenominator,
    pub field_angle: f64,
}

/// Parses scenario JSON. Type errors carry the dotted path of the field.
pub fn parse_scenario(text: &str) -> Result<ScenarioDoc, Vec<Diagnostic>> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: ScenarioDoc = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let code = if inner.is_syntax() || inner.is_eof() {
            "malformed-json"
        } else {
            "invalid-field"
        };
        let mut d = Diagnostic::error(code, inner.to_string()).at_line(inner.line());
        if path != "." {
            d = d.for_field(path);
        }
        vec![d]
    })?;
    de.end()
        .map_err(|e| vec![Diagnostic::error("malformed-json", e.to_string()).at_line(e.line())])?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(vec![Diagnostic::error(
            "unsupported-schema-version",
            format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            ),
        )
        .for_field("schema_version")]);
    }
    Ok(doc)
}

/// JSON Schema of the scenario document.
pub fn scenario_schema() -> serde_json::Value {
    serde_json::to_value(schemars::schema_for!(ScenarioDoc)).expect("schema serializes")
}

struct Collector(Vec<Diagnostic>);

impl Collector {
    fn fail(&mut self, field: &str, code: &str, message: impl Into<String>) {
        self.0.push(Diagnostic::error(code, message).for_field(field));
    }

    fn check<T, E: std::fmt::Display>(&mut self, field: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(field, "invalid-field", e.to_string());
                None
            }
        }
    }

    fn positive(&mut self, field: &str, v: f64) -> Option<f64> {
        if v > 0.0 && v.is_finite() {
            Some(v)
        } else {
            self.fail(field, "invalid-field", format!("must be positive and finite, got {v}"));
            None
        }
    }

    fn samples(&mut self, field: &str, samples: &Samples, role: UnitRole) -> Option<Spectrum> {
        let (w, v): (Vec<f64>, Vec<f64>) = samples.iter().map(|[w, v]| (*w, *v)).unzip();
        self.check(field, Spectrum::from_samples(w, v, role))
    }

    /// Exactly one of preset or inline samples.
    #[allow(clippy::too_many_arguments)]
    fn spectrum_source<T>(
        &mut self,
        field: &str,
        preset: &Option<String>,
        samples: &Option<Samples>,
        preset_field: &str,
        samples_field: &str,
        lookup: impl FnOnce(&str) -> Option<T>,
        inline: impl FnOnce(&mut Self, &Samples) -> Option<T>,
    ) -> Option<T> {
        match (preset, samples) {
            (Some(_), Some(_)) => {
                self.fail(
                    field,
                    "conflicting-fields",
                    format!("give either `{preset_field}` or `{samples_field}`, not both"),
                );
                None
            }
            (None, None) => {
                self.fail(
                    field,
                    "missing-field",
                    format!("one of `{preset_field}` or `{samples_field}` is required"),
                );
                None
            }
            (Some(name), None) => {
                let found = lookup(name);
                if found.is_none() {
                    self.fail(
                        &format!("{field}.{preset_field}"),
                        "unknown-preset",
                        format!("no preset named `{name}`"),
                    );
                }
                found
            }
            (None, Some(s)) => inline(self, s),
        }
    }
}

/// Resolves a parsed document against `catalog`, reporting every invalid field.
pub fn resolve(doc: &ScenarioDoc, catalog: &Catalog) -> Result<Scenario, Vec<Diagnostic>> {
    let mut c = Collector(Vec::new());

    let grid = match &doc.grid {
        None => Some(WavelengthGrid::engine_default()),
        Some(g) => c.check("grid", WavelengthGrid::uniform(g.start_nm, g.stop_nm, g.step_nm)),
    };

    let light = {
        let l = &doc.light;
        let shape = c.spectrum_source(
            "light",
            &l.preset,
            &l.samples,
            "preset",
            "samples",
            |n| catalog.light(n).map(|(s, k)| (s.clone(), k)),
            |c, s| {
                c.samples("light.samples", s, UnitRole::RelativePower)
                    .map(|s| (s, LightKind::Custom))
            },
        );
        let flux = c.positive("light.luminous_flux_lm", l.luminous_flux_lm);
        let beam = c.positive("light.beam_half_angle_deg", l.beam_half_angle_deg);
        match (shape, flux, beam, &grid) {
            (Some((shape, kind)), Some(flux), Some(beam), Some(grid)) => c.check(
                "light",
                LightSource::new(flux, &shape.resample(grid), beam.to_radians(), l.kind.unwrap_or(kind)),
            ),
            _ => None,
        }
    };

    let water = {
        let w = &doc.water;
        let base = c.spectrum_source(
            "water",
            &w.preset,
            &w.samples,
            "preset",
            "samples",
            |n| catalog.water(n).cloned(),
            |c, s| {
                c.samples("water.samples", s, UnitRole::Attenuation)
                    .and_then(|s| c.check("water.samples", WaterProfile::new("inline", s)))
            },
        );
        let scale = if w.scale >= 0.0 && w.scale.is_finite() {
            Some(w.scale)
        } else {
            c.fail(
                "water.scale",
                "invalid-field",
                format!("must be non-negative, got {}", w.scale),
            );
            None
        };
        match (base, scale) {
            (Some(base), Some(k)) => c.check("water.scale", base.scaled(k)),
            _ => None,
        }
    };

    let surface = {
        let s = &doc.surface;
        let base = c.spectrum_source(
            "surface",
            &s.preset,
            &s.samples,
            "preset",
            "samples",
            |n| catalog.material(n).cloned(),
            |c, smp| {
                c.samples("surface.samples", smp, UnitRole::Dimensionless)
                    .and_then(|sp| c.check("surface.samples", SurfaceMaterial::new("inline", sp)))
            },
        );
        match base {
            Some(m) if s.scale == 1.0 => Some(m),
            Some(m) => {
                let scaled = m
                    .reflectance()
                    .scale(s.scale.max(0.0), UnitRole::Dimensionless)
                    .map_err(|e| e.to_string())
                    .and_then(|r| SurfaceMaterial::new(m.name.clone(), r).map_err(|e| e.to_string()));
                if !(s.scale >= 0.0) {
                    c.fail(
                        "surface.scale",
                        "invalid-field",
                        format!("must be non-negative, got {}", s.scale),
                    );
                    None
                } else {
                    c.check("surface.scale", scaled)
                }
            }
            None => None,
        }
    };

    let geometry = {
        let g = &doc.geometry;
        c.check(
            "geometry",
            solve_geometry(g.camera_altitude_m, g.light_offset_m, g.light_tilt_deg.to_radians()),
        )
        .and_then(|mut solved| {
            let mut ok = true;
            if let Some(d) = g.light_path_m {
                ok &= c.positive("geometry.light_path_m", d).is_some();
                solved.light_path_length = d;
            }
            if let Some(d) = g.return_path_m {
                ok &= c.positive("geometry.return_path_m", d).is_some();
                solved.return_path_length = d;
            }
            if let Some(a) = g.incident_angle_deg {
                if (0.0..=90.0).contains(&a) {
                    solved.incident_angle = if a == 90.0 {
                        std::f64::consts::FRAC_PI_2
                    } else {
                        a.to_radians()
                    };
                } else {
                    c.fail(
                        "geometry.incident_angle_deg",
                        "invalid-field",
                        format!("must lie in [0, 90], got {a}"),
                    );
                    ok = false;
                }
            }
            ok.then_some(solved)
        })
    };

    let viewport = c.check("viewport", doc.viewport.validate()).map(|_| doc.viewport);

    let lens = {
        let l = &doc.lens;
        let transmission = match (&l.transmission, &l.transmission_preset, &l.transmission_samples) {
            (None, None, None) => Some(Transmission::Constant(1.0)),
            (Some(t), None, None) => Some(Transmission::Constant(*t)),
            (None, Some(name), None) => match catalog.lens_transmission(name) {
                Some(s) => Some(Transmission::Spectral(s.clone())),
                None => {
                    c.fail(
                        "lens.transmission_preset",
                        "unknown-preset",
                        format!("no preset named `{name}`"),
                    );
                    None
                }
            },
            (None, None, Some(s)) => c
                .samples("lens.transmission_samples", s, UnitRole::Dimensionless)
                .map(Transmission::Spectral),
            _ => {
                c.fail(
                    "lens",
                    "conflicting-fields",
                    "give at most one of `transmission`, `transmission_preset`, `transmission_samples`",
                );
                None
            }
        };
        transmission.and_then(|t| {
            c.check(
                "lens",
                Lens::new(
                    l.focal_length_mm,
                    l.aperture_number,
                    t,
                    l.min_aperture_number.unwrap_or(DEFAULT_MIN_APERTURE),
                    l.max_aperture_number.unwrap_or(DEFAULT_MAX_APERTURE),
                ),
            )
        })
    };

    let sensor = match (&doc.sensor.preset, &doc.sensor.custom) {
        (Some(name), None) => {
            let s = catalog.sensor(name).cloned();
            if s.is_none() {
                c.fail("sensor.preset", "unknown-preset", format!("no sensor named `{name}`"));
            }
            s
        }
        (None, Some(custom)) => {
            let qe = c.spectrum_source(
                "sensor.custom",
                &custom.qe_preset,
                &custom.qe_samples,
                "qe_preset",
                "qe_samples",
                |n| catalog.qe(n).cloned(),
                |c, s| c.samples("sensor.custom.qe_samples", s, UnitRole::Dimensionless),
            );
            qe.and_then(|qe| {
                c.check(
                    "sensor.custom",
                    SensorModel::new(
                        custom.name.clone(),
                        custom.pixel_area_m2,
                        (custom.resolution_x, custom.resolution_y),
                        (custom.sensor_size_x_mm, custom.sensor_size_y_mm),
                        qe,
                        custom.system_gain_dn_per_e,
                        custom.dark_signal_dn,
                        custom.dark_noise_var_e2,
                        custom.bit_depth,
                        custom.monochrome,
                    ),
                )
            })
        }
        (Some(_), Some(_)) => {
            c.fail(
                "sensor",
                "conflicting-fields",
                "give either `preset` or `custom`, not both",
            );
            None
        }
        (None, None) => {
            c.fail("sensor", "missing-field", "one of `preset` or `custom` is required");
            None
        }
    };

    let exposure = match &doc.exposure {
        ExposureDoc::Manual {
            exposure_time_s,
            gain_db,
        } => c
            .check("exposure", ExposureSettings::new(*exposure_time_s, *gain_db))
            .map(ExposureMode::Manual),
        ExposureDoc::Auto { target_dn, gain_db } => {
            let gain_ok = *gain_db >= 0.0 && gain_db.is_finite();
            if !gain_ok {
                c.fail(
                    "exposure.gain_db",
                    "invalid-field",
                    format!("must be non-negative, got {gain_db}"),
                );
            }
            match (&sensor, gain_ok) {
                (Some(s), true) => {
                    let target = target_dn.unwrap_or(0.5 * s.saturation_dn());
                    if target > s.dark_signal_dn && target <= s.saturation_dn() {
                        Some(ExposureMode::Auto {
                            target_dn: target,
                            gain_db: *gain_db,
                        })
                    } else {
                        c.fail(
                            "exposure.target_dn",
                            "invalid-field",
                            format!(
                                "target {target} DN must exceed the dark signal {} DN and not exceed full scale {} DN",
                                s.dark_signal_dn,
                                s.saturation_dn()
                            ),
                        );
                        None
                    }
                }
                _ => None,
            }
        }
    };

    let mission = {
        let m = &doc.mission;
        if !(m.vehicle_speed_m_s > 0.0 && m.vehicle_speed_m_s.is_finite()) {
            c.fail(
                "mission.vehicle_speed_m_s",
                "invalid-field",
                format!("must be positive, got {}", m.vehicle_speed_m_s),
            );
        }
        if !(0.0..1.0).contains(&m.overlap_fraction) {
            c.fail(
                "mission.overlap_fraction",
                "invalid-field",
                format!("must lie in [0, 1), got {}", m.overlap_fraction),
            );
        }
        if !(m.max_blur_pixels >= 0.0 && m.max_blur_pixels.is_finite()) {
            c.fail(
                "mission.max_blur_pixels",
                "invalid-field",
                format!("must be non-negative, got {}", m.max_blur_pixels),
            );
        }
        if !(m.min_dof_m >= 0.0 && m.min_dof_m.is_finite()) {
            c.fail(
                "mission.min_dof_m",
                "invalid-field",
                format!("must be non-negative, got {}", m.min_dof_m),
            );
        }
        let coc = match m.circle_of_confusion_mm {
            Some(v) => c.positive("mission.circle_of_confusion_mm", v),
            None => sensor.as_ref().map(|s| 2.0 * s.pixel_pitch_mm()),
        };
        let focus = match m.focus_distance_m {
            Some(v) => c.positive("mission.focus_distance_m", v),
            None => geometry.map(|g| g.return_path_length),
        };
        match (coc, focus) {
            (Some(coc), Some(focus)) => {
                let req = MissionRequirements {
                    vehicle_speed: m.vehicle_speed_m_s,
                    overlap_fraction: m.overlap_fraction,
                    max_blur_pixels: m.max_blur_pixels,
                    min_dof_m: m.min_dof_m,
                    circle_of_confusion_mm: coc,
                    focus_distance_m: focus,
                    orientation: m.orientation,
                };
                req.validate().ok().map(|_| req)
            }
            _ => None,
        }
    };

    let fa = doc.options.field_angle_deg;
    if !(0.0..90.0).contains(&fa) {
        c.fail(
            "options.field_angle_deg",
            "invalid-field",
            format!("must lie in [0, 90), got {fa}"),
        );
    }

    if !c.0.is_empty() {
        return Err(c.0);
    }
    match (
        grid, light, water, surface, geometry, viewport, lens, sensor, exposure, mission,
    ) {
        (
            Some(grid),
            Some(light),
            Some(water),
            Some(surface),
            Some(geometry),
            Some(viewport),
            Some(lens),
            Some(sensor),
            Some(exposure),
            Some(mission),
        ) => Ok(Scenario {
            name: doc.name.clone(),
            grid,
            light,
            water,
            surface,
            geometry,
            viewport,
            lens,
            sensor,
            exposure,
            mission,
            snr_denominator: doc.options.snr_denominator,
            field_angle: fa.to_radians(),
        }),
        _ => Err(vec![Diagnostic::error(
            "invalid-scenario",
            "scenario could not be resolved",
        )]),
    }
}

/// Parses and resolves in one step.
pub fn load_scenario(text: &str, catalog: &Catalog) -> Result<(ScenarioDoc, Scenario), Vec<Diagnostic>> {
    let doc = parse_scenario(text)?;
    let sc = resolve(&doc, catalog)?;
    Ok((doc, sc))
}

/// Returns a copy of `doc` with the numeric field at `path` set to `value`.
/// The path must name an existing numeric (or unset optional) field.
pub fn set_parameter(doc: &ScenarioDoc, path: &str, value: f64) -> Result<ScenarioDoc, Diagnostic> {
    let unresolved =
        |why: &str| Diagnostic::error("unresolvable-parameter", format!("`{path}` {why}")).for_field(path.to_string());
    let mut tree = serde_json::to_value(doc).expect("scenario serializes");
    let mut node = &mut tree;
    for key in path.split('.') {
        node = match node {
            serde_json::Value::Object(map) => map.get_mut(key).ok_or_else(|| unresolved("does not exist"))?,
            _ => return Err(unresolved("does not exist")),
        };
    }
    match node {
        serde_json::Value::Number(_) | serde_json::Value::Null => {}
        _ => return Err(unresolved("is not a numeric parameter")),
    }
    let number = serde_json::Number::from_f64(value).ok_or_else(|| unresolved("cannot take a non-finite value"))?;
    *node = serde_json::Value::Number(number);
    serde_json::from_value(tree).map_err(|e| unresolved(&format!("cannot take {value}: {e}")))
}

/// Checks that `path` names a numeric parameter of `doc`.
pub fn check_parameter(doc: &ScenarioDoc, path: &str) -> Result<(), Diagnostic> {
    let tree = serde_json::to_value(doc).expect("scenario serializes");
    let mut node = &tree;
    for key in path.split('.') {
        node = node.get(key).ok_or_else(|| {
            Diagnostic::error("unresolvable-parameter", format!("`{path}` does not exist")).for_field(path.to_string())
        })?;
    }
    if node.is_number() || node.is_null() {
        Ok(())
    } else {
        Err(
            Diagnostic::error("unresolvable-parameter", format!("`{path}` is not a numeric parameter"))
                .for_field(path.to_string()),
        )
    }
}
