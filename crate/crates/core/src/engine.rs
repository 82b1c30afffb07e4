//! End-to-end pipeline: light → water → target → water → lens → sensor,
//! plus mission feasibility and parameter sweeps.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagnostics::Diagnostic;
use crate::mission::{
    acquisition_rate, depth_of_field, max_exposure_for_blur, min_aperture_for_dof_in, spatial_fov, ApertureSolution,
    CameraOrientation, MissionError,
};
use crate::optics::{effective_optics, lens_irradiance, EffectiveOptics, OpticsError};
use crate::presets::Catalog;
use crate::propagation::{attenuate, irradiance_at_distance, radiant_spectrum, reflect, PropagationError};
use crate::scenario::{check_parameter, resolve, set_parameter, ExposureMode, Scenario, ScenarioDoc};
use crate::sensor::{required_exposure, respond, ExposureSettings, ResponseResult};
use crate::spectral::Spectrum;

/// Sweep size limit applied by the service.
pub const MAX_SWEEP_CELLS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Source,
    AtTarget,
    AfterReflection,
    AtLens,
    AtSensor,
}

impl Stage {
    pub const ORDER: [Stage; 5] = [
        Stage::Source,
        Stage::AtTarget,
        Stage::AfterReflection,
        Stage::AtLens,
        Stage::AtSensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Source => "source",
            Stage::AtTarget => "at-target",
            Stage::AfterReflection => "after-reflection",
            Stage::AtLens => "at-lens",
            Stage::AtSensor => "at-sensor",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Stage::Source => "W/nm",
            Stage::AtTarget | Stage::AtSensor => "W/(m^2 nm)",
            Stage::AfterReflection | Stage::AtLens => "W/(m^2 sr nm)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("{stage}: {source}")]
    Propagation {
        stage: &'static str,
        #[source]
        source: PropagationError,
    },
    #[error("{stage}: {source}")]
    Optics {
        stage: &'static str,
        #[source]
        source: OpticsError,
    },
    #[error("mission: {0}")]
    Mission(#[from] MissionError),
}

impl EngineError {
    pub fn stage(&self) -> &'static str {
        match self {
            EngineError::Propagation { stage, .. } | EngineError::Optics { stage, .. } => stage,
            EngineError::Mission(_) => "mission",
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            EngineError::Propagation { source, .. } => match source {
                PropagationError::NoPhotopicOverlap => "no-photopic-overlap",
                _ => "propagation-error",
            },
            EngineError::Optics { .. } => "optics-error",
            EngineError::Mission(_) => "mission-error",
        }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.code(), self.to_string()).for_field(self.stage())
    }
}

fn at(stage: Stage) -> impl Fn(PropagationError) -> EngineError {
    move |source| EngineError::Propagation {
        stage: stage.name(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageSpectrum {
    pub stage: Stage,
    pub spectrum: Spectrum,
}

impl StageSpectrum {
    pub fn integral(&self) -> f64 {
        self.spectrum.integrate()
    }
}

/// Settings the engine chose or derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedSettings {
    pub exposure_mode: &'static str,
    pub exposure_time_s: f64,
    pub gain_db: f64,
    pub target_dn: Option<f64>,
    /// Exposure that would reach the target with no blur limit.
    pub required_exposure_s: Option<f64>,
    pub exposure_capped_by_blur: bool,
    pub light_path_m: f64,
    pub return_path_m: f64,
    pub incident_angle_deg: f64,
    pub optics: EffectiveOptics,
    pub acquisition_rate_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApertureReport {
    pub kind: &'static str,
    /// Lens setting.
    pub aperture_number: f64,
    /// Lens behind its viewport.
    pub aperture_number_effective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub acquisition_rate_hz: f64,
    pub max_exposure_time_s: f64,
    pub dof_m: f64,
    pub fov_x_m: f64,
    pub fov_y_m: f64,
    pub fov_along_track_m: f64,
    pub circle_of_confusion_mm: f64,
    pub focus_distance_m: f64,
    /// Smallest aperture number meeting the DoF requirement; `None` when
    /// unreachable within the lens stops.
    pub min_aperture_for_dof: Option<ApertureReport>,
    /// Widest stop the lens offers.
    pub widest_aperture_number: f64,
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    /// Pixel at the configured field angle (image centre by default).
    pub response: ResponseResult,
    /// Same pixel with cos⁴ falloff averaged over the frame.
    pub response_frame_average: ResponseResult,
    pub constraints: ConstraintReport,
    pub stage_spectra: Vec<StageSpectrum>,
    pub derived: DerivedSettings,
    pub warnings: Vec<Diagnostic>,
}

impl EvaluationReport {
    pub fn feasible(&self) -> bool {
        self.constraints.feasible
    }

    pub fn stage(&self, stage: Stage) -> &Spectrum {
        &self
            .stage_spectra
            .iter()
            .find(|s| s.stage == stage)
            .expect("every stage is present")
            .spectrum
    }
}

struct Mission {
    fov_x: f64,
    fov_y: f64,
    fov_along: f64,
    max_exposure: f64,
    rate: f64,
}

fn mission_geometry(sc: &Scenario, optics: &EffectiveOptics) -> Result<Mission, EngineError> {
    let f = optics.focal_length_effective_mm;
    let d = sc.geometry.return_path_length;
    let fov_x = spatial_fov(d, sc.sensor.sensor_size_x_mm, f);
    let fov_y = spatial_fov(d, sc.sensor.sensor_size_y_mm, f);
    let (fov_along, resolution_along) = match sc.mission.orientation {
        CameraOrientation::XAlongTrack => (fov_x, sc.sensor.resolution_x),
        CameraOrientation::YAlongTrack => (fov_y, sc.sensor.resolution_y),
    };
    let rate = acquisition_rate(sc.mission.vehicle_speed, fov_along, sc.mission.overlap_fraction)?;
    let max_exposure = max_exposure_for_blur(
        sc.mission.max_blur_pixels,
        fov_along,
        sc.mission.vehicle_speed,
        resolution_along,
    );
    Ok(Mission {
        fov_x,
        fov_y,
        fov_along,
        max_exposure,
        rate,
    })
}

/// Stage spectra from the source to the sensor plane at field angle `alpha`.
pub fn stage_spectra(sc: &Scenario, alpha: f64) -> Result<Vec<StageSpectrum>, EngineError> {
    let g = &sc.geometry;
    let source = radiant_spectrum(&sc.light).map_err(at(Stage::Source))?;
    let incident = irradiance_at_distance(&sc.light, g.light_path_length).map_err(at(Stage::AtTarget))?;
    let at_target = attenuate(&incident, &sc.water, g.light_path_length).map_err(at(Stage::AtTarget))?;
    let reflected = reflect(&at_target, &sc.surface, g.incident_angle).map_err(at(Stage::AfterReflection))?;
    let at_lens = attenuate(&reflected, &sc.water, g.return_path_length).map_err(at(Stage::AtLens))?;
    let at_sensor = lens_irradiance(&at_lens, &sc.lens, &sc.viewport, alpha).map_err(|source| EngineError::Optics {
        stage: Stage::AtSensor.name(),
        source,
    })?;
    Ok([source, at_target, reflected, at_lens, at_sensor]
        .into_iter()
        .zip(Stage::ORDER)
        .map(|(spectrum, stage)| StageSpectrum { stage, spectrum })
        .collect())
}

/// Runs the full pipeline on one scenario. Pure and deterministic.
pub fn evaluate(sc: &Scenario) -> Result<EvaluationReport, EngineError> {
    let optics = effective_optics(
        &sc.lens,
        &sc.viewport,
        sc.sensor.sensor_size_x_mm,
        sc.sensor.sensor_size_y_mm,
    )
    .map_err(|source| EngineError::Optics {
        stage: "optics",
        source,
    })?;
    let stages = stage_spectra(sc, sc.field_angle)?;
    let at_sensor = &stages[4].spectrum;
    let mission = mission_geometry(sc, &optics)?;

    let gain_db = sc.exposure.gain_db();
    let (exposure_time, target_dn, required, capped) = match sc.exposure {
        ExposureMode::Manual(e) => (e.exposure_time_s, None, None, false),
        ExposureMode::Auto { target_dn, gain_db } => {
            let required = required_exposure(target_dn, at_sensor, &sc.sensor, gain_db).ok();
            match required {
                Some(t) if t <= mission.max_exposure => (t, Some(target_dn), Some(t), false),
                _ => (mission.max_exposure, Some(target_dn), required, true),
            }
        }
    };
    // A zero blur budget leaves a zero exposure; the sensor then reads dark.
    let exposure = ExposureSettings {
        exposure_time_s: exposure_time,
        gain_db,
    };
    let response = respond(at_sensor, &sc.sensor, &exposure, sc.snr_denominator);
    let frame_irradiance = at_sensor
        .scale(
            optics.vignetting_frame_average / sc.field_angle.cos().powi(4),
            crate::spectral::UnitRole::Irradiance,
        )
        .expect("non-negative scale");
    let response_frame_average = respond(&frame_irradiance, &sc.sensor, &exposure, sc.snr_denominator);

    let constraints = constraints(sc, &optics, &mission, &response, &exposure, capped, required.is_none())?;

    let mut warnings = Vec::new();
    if !sc.sensor.monochrome {
        warnings.push(Diagnostic::warning(
            "color-sensor",
            "colour sensor approximated as monochrome through its QE curve, which should be the green channel; per-channel responses are not resolved",
        ));
    }
    if let Some(d) = optics.focus_distance_required_m {
        if d.is_finite() && (sc.mission.focus_distance_m - d).abs() > 1e-9 {
            warnings.push(Diagnostic::info(
                "dome-focus",
                format!("dome port: the lens must focus on the virtual image {d:.4} m in front of the dome"),
            ));
        }
    }

    let derived = DerivedSettings {
        exposure_mode: match sc.exposure {
            ExposureMode::Manual(_) => "manual",
            ExposureMode::Auto { .. } => "auto",
        },
        exposure_time_s: exposure_time,
        gain_db,
        target_dn,
        required_exposure_s: required,
        exposure_capped_by_blur: capped,
        light_path_m: sc.geometry.light_path_length,
        return_path_m: sc.geometry.return_path_length,
        incident_angle_deg: sc.geometry.incident_angle.to_degrees(),
        optics,
        acquisition_rate_hz: mission.rate,
    };
    Ok(EvaluationReport {
        response,
        response_frame_average,
        constraints,
        stage_spectra: stages,
        derived,
        warnings,
    })
}

fn constraints(
    sc: &Scenario,
    optics: &EffectiveOptics,
    mission: &Mission,
    response: &ResponseResult,
    exposure: &ExposureSettings,
    capped: bool,
    unreachable_target: bool,
) -> Result<ConstraintReport, EngineError> {
    let m = &sc.mission;
    let f = optics.focal_length_effective_mm;
    let s_mm = m.focus_distance_m * 1e3;
    let c = m.circle_of_confusion_mm;
    let dof_m = depth_of_field(optics.aperture_number_effective, c, f, s_mm) / 1e3;

    let port = optics.aperture_number_effective / sc.lens.aperture_number;
    let n_lo = sc.lens.min_aperture_number * port;
    let n_hi = sc.lens.max_aperture_number * port;
    let aperture = if m.min_dof_m > 0.0 {
        min_aperture_for_dof_in(m.min_dof_m * 1e3, c, f, s_mm, n_lo, n_hi)
    } else {
        Ok(ApertureSolution::Bounded { aperture_number: n_lo })
    };
    let min_aperture_for_dof = aperture.as_ref().ok().map(|sol| ApertureReport {
        kind: match sol {
            ApertureSolution::Bounded { .. } => "bounded",
            ApertureSolution::Hyperfocal { .. } => "hyperfocal",
        },
        aperture_number: sol.aperture_number() / port,
        aperture_number_effective: sol.aperture_number(),
    });

    let mut violations = Vec::new();
    if let ExposureMode::Auto { target_dn, .. } = sc.exposure {
        if capped {
            let why = if unreachable_target {
                "no exposure reaches the target".to_string()
            } else {
                format!(
                    "reaching {target_dn} DN needs more than the {:.6} s blur limit",
                    mission.max_exposure
                )
            };
            violations.push(Violation {
                code: "underexposed-at-blur-limit",
                message: why,
            });
        }
    } else if exposure.exposure_time_s > mission.max_exposure {
        violations.push(Violation {
            code: "motion-blur-exceeded",
            message: format!(
                "exposure {} s exceeds the {:.6} s blur limit",
                exposure.exposure_time_s, mission.max_exposure
            ),
        });
    }
    if response.saturated {
        violations.push(Violation {
            code: "saturated",
            message: format!("response clips at full scale {} DN", sc.sensor.saturation_dn()),
        });
    }
    if dof_m < m.min_dof_m {
        match &aperture {
            Ok(sol) => violations.push(Violation {
                code: "dof-insufficient",
                message: format!(
                    "depth of field {dof_m:.4} m below the required {} m; stop down to N = {:.4}",
                    m.min_dof_m,
                    sol.aperture_number() / port
                ),
            }),
            Err(_) => violations.push(Violation {
                code: "dof-unreachable",
                message: format!(
                    "depth of field {} m is not reachable within the lens stops (N ≤ {})",
                    m.min_dof_m, sc.lens.max_aperture_number
                ),
            }),
        }
    }

    Ok(ConstraintReport {
        acquisition_rate_hz: mission.rate,
        max_exposure_time_s: mission.max_exposure,
        dof_m,
        fov_x_m: mission.fov_x,
        fov_y_m: mission.fov_y,
        fov_along_track_m: mission.fov_along,
        circle_of_confusion_mm: c,
        focus_distance_m: m.focus_distance_m,
        min_aperture_for_dof,
        widest_aperture_number: sc.lens.min_aperture_number,
        feasible: violations.is_empty(),
        violations,
    })
}

/// Mission constraints without the radiometric evaluation's report payload.
pub fn feasibility(sc: &Scenario) -> Result<ConstraintReport, EngineError> {
    evaluate(sc).map(|r| r.constraints)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    ResponseDn,
    ResponseFrameAverageDn,
    Electrons,
    Snr,
    SnrDb,
    DofM,
    AcquisitionRateHz,
    MaxExposureS,
    ExposureTimeS,
    FovXM,
    FovYM,
    MinApertureForDof,
    Feasible,
    Saturated,
}

impl Metric {
    pub const ALL: [Metric; 14] = [
        Metric::ResponseDn,
        Metric::ResponseFrameAverageDn,
        Metric::Electrons,
        Metric::Snr,
        Metric::SnrDb,
        Metric::DofM,
        Metric::AcquisitionRateHz,
        Metric::MaxExposureS,
        Metric::ExposureTimeS,
        Metric::FovXM,
        Metric::FovYM,
        Metric::MinApertureForDof,
        Metric::Feasible,
        Metric::Saturated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::ResponseDn => "response_dn",
            Metric::ResponseFrameAverageDn => "response_frame_average_dn",
            Metric::Electrons => "electrons",
            Metric::Snr => "snr",
            Metric::SnrDb => "snr_db",
            Metric::DofM => "dof_m",
            Metric::AcquisitionRateHz => "acquisition_rate_hz",
            Metric::MaxExposureS => "max_exposure_s",
            Metric::ExposureTimeS => "exposure_time_s",
            Metric::FovXM => "fov_x_m",
            Metric::FovYM => "fov_y_m",
            Metric::MinApertureForDof => "min_aperture_for_dof",
            Metric::Feasible => "feasible",
            Metric::Saturated => "saturated",
        }
    }

    /// Accepts the canonical name and the short aliases `response` and `dof`.
    pub fn parse(s: &str) -> Option<Metric> {
        match s {
            "response" => Some(Metric::ResponseDn),
            "dof" => Some(Metric::DofM),
            _ => Self::ALL.into_iter().find(|m| m.name() == s),
        }
    }

    pub fn extract(self, r: &EvaluationReport) -> f64 {
        let flag = |b: bool| if b { 1.0 } else { 0.0 };
        match self {
            Metric::ResponseDn => r.response.digital_value,
            Metric::ResponseFrameAverageDn => r.response_frame_average.digital_value,
            Metric::Electrons => r.response.absorbed_electrons,
            Metric::Snr => r.response.snr,
            Metric::SnrDb => r.response.snr_db,
            Metric::DofM => r.constraints.dof_m,
            Metric::AcquisitionRateHz => r.constraints.acquisition_rate_hz,
            Metric::MaxExposureS => r.constraints.max_exposure_time_s,
            Metric::ExposureTimeS => r.derived.exposure_time_s,
            Metric::FovXM => r.constraints.fov_x_m,
            Metric::FovYM => r.constraints.fov_y_m,
            Metric::MinApertureForDof => r
                .constraints
                .min_aperture_for_dof
                .map(|a| a.aperture_number)
                .unwrap_or(f64::NAN),
            Metric::Feasible => flag(r.constraints.feasible),
            Metric::Saturated => flag(r.response.saturated),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct SweepAxis {
    pub path: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepAxis {
    /// Parses `a:b:step`.
    pub fn parse_range(path: &str, range: &str) -> Result<Self, Diagnostic> {
        let bad =
            || Diagnostic::error("invalid-range", format!("range `{range}` is not `start:stop:step`")).for_field(path);
        let parts: Vec<f64> = range
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match parts[..] {
            [start, stop, step] => Ok(Self {
                path: path.to_string(),
                start,
                stop,
                step,
            }),
            _ => Err(bad()),
        }
    }

    /// Number of grid points, endpoints inclusive.
    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    fn validate(&self) -> Result<(), Diagnostic> {
        let ok = [self.start, self.stop, self.step].iter().all(|v| v.is_finite())
            && self.step > 0.0
            && self.stop >= self.start;
        if ok {
            Ok(())
        } else {
            Err(Diagnostic::error(
                "invalid-range",
                format!(
                    "range {}:{}:{} needs a positive step and stop ≥ start",
                    self.start, self.stop, self.step
                ),
            )
            .for_field(self.path.clone()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axes: Vec<SweepAxis>,
    pub metrics: Vec<Metric>,
}

impl SweepSpec {
    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(SweepAxis::len).fold(1usize, usize::saturating_mul)
    }

    pub fn validate(&self, doc: &ScenarioDoc) -> Result<(), Vec<Diagnostic>> {
        let mut errors = Vec::new();
        if self.axes.is_empty() || self.axes.len() > 2 {
            errors.push(Diagnostic::error(
                "invalid-sweep",
                format!("a sweep takes 1 or 2 axes, got {}", self.axes.len()),
            ));
        }
        if self.metrics.is_empty() {
            errors.push(Diagnostic::error("invalid-sweep", "at least one metric is required"));
        }
        for axis in &self.axes {
            if let Err(d) = axis.validate() {
                errors.push(d);
            }
            if let Err(d) = check_parameter(doc, &axis.path) {
                errors.push(d);
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub params: Vec<f64>,
    /// Metric values in `SweepSpec::metrics` order, or the error code.
    pub values: Result<Vec<f64>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub params: Vec<String>,
    pub metrics: Vec<Metric>,
    /// Row-major: the first axis varies slowest.
    pub cells: Vec<SweepCell>,
}

/// Evaluates one sweep point; errors become codes.
pub fn evaluate_point(
    doc: &ScenarioDoc,
    catalog: &Catalog,
    assignments: &[(&str, f64)],
) -> Result<EvaluationReport, String> {
    let mut point = doc.clone();
    for (path, value) in assignments {
        point = set_parameter(&point, path, *value).map_err(|d| d.code)?;
    }
    let sc = resolve(&point, catalog).map_err(|d| d.first().map(|d| d.code.clone()).unwrap_or_default())?;
    evaluate(&sc).map_err(|e| e.code().to_string())
}

/// Runs the sweep in parallel; the row order is fixed by the axes.
pub fn sweep(doc: &ScenarioDoc, catalog: &Catalog, spec: &SweepSpec) -> Result<SweepTable, Vec<Diagnostic>> {
    spec.validate(doc)?;
    let shape: Vec<usize> = spec.axes.iter().map(SweepAxis::len).collect();
    let total = spec.cell_count();
    let cells = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut idx = vec![0; shape.len()];
            for (k, n) in shape.iter().enumerate().rev() {
                idx[k] = rem % n;
                rem /= n;
            }
            let params: Vec<f64> = spec.axes.iter().zip(&idx).map(|(a, &i)| a.value(i)).collect();
            let assignments: Vec<(&str, f64)> = spec
                .axes
                .iter()
                .zip(&params)
                .map(|(a, &v)| (a.path.as_str(), v))
                .collect();
            let values = evaluate_point(doc, catalog, &assignments)
                .map(|r| spec.metrics.iter().map(|m| m.extract(&r)).collect());
            SweepCell { params, values }
        })
        .collect();
    Ok(SweepTable {
        params: spec.axes.iter().map(|a| a.path.clone()).collect(),
        metrics: spec.metrics.clone(),
        cells,
    })
}
