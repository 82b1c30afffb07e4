//! Survey constraints: frame rate, depth of field, motion blur and coverage.
//!
//! Depth-of-field arithmetic is done in millimetres; the callers convert at
//! the boundary.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Aperture search bounds for [`min_aperture_for_dof`].
pub const APERTURE_SEARCH_MIN: f64 = 0.7;
pub const APERTURE_SEARCH_MAX: f64 = 64.0;
/// Absolute bracket width at which the aperture bisection stops.
pub const APERTURE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MissionError {
    #[error("overlap fraction must lie in [0, 1), got {0}")]
    Overlap(f64),
    #[error("field of view must be positive, got {0} m")]
    FieldOfView(f64),
    #[error("vehicle speed must be positive, got {0} m/s")]
    Speed(f64),
    #[error("resolution must be positive")]
    Resolution,
    #[error("target depth of field must be positive, got {0} mm")]
    TargetDof(f64),
    #[error("depth of field {target_mm} mm is not reachable even at N = {max_n}")]
    DofUnreachable { target_mm: f64, max_n: f64 },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, schemars::JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum CameraOrientation {
    /// Sensor x axis points along the track.
    #[default]
    XAlongTrack,
    YAlongTrack,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MissionRequirements {
    pub vehicle_speed: f64,
    pub overlap_fraction: f64,
    pub max_blur_pixels: f64,
    pub min_dof_m: f64,
    pub circle_of_confusion_mm: f64,
    pub focus_distance_m: f64,
    pub orientation: CameraOrientation,
}

impl MissionRequirements {
    pub fn validate(&self) -> Result<(), MissionError> {
        if !(self.vehicle_speed > 0.0) || !self.vehicle_speed.is_finite() {
            return Err(MissionError::Speed(self.vehicle_speed));
        }
        if !(0.0..1.0).contains(&self.overlap_fraction) {
            return Err(MissionError::Overlap(self.overlap_fraction));
        }
        if !(self.max_blur_pixels >= 0.0) {
            return Err(MissionError::NonPositive("max_blur_pixels"));
        }
        if !(self.min_dof_m >= 0.0) {
            return Err(MissionError::NonPositive("min_dof_m"));
        }
        if !(self.circle_of_confusion_mm > 0.0) {
            return Err(MissionError::NonPositive("circle_of_confusion_mm"));
        }
        if !(self.focus_distance_m > 0.0) {
            return Err(MissionError::NonPositive("focus_distance_m"));
        }
        Ok(())
    }
}

/// f = v / (FOV·(1 − OVR))
pub fn acquisition_rate(speed: f64, fov_along_track: f64, overlap: f64) -> Result<f64, MissionError> {
    if !(0.0..1.0).contains(&overlap) {
        return Err(MissionError::Overlap(overlap));
    }
    if !(fov_along_track > 0.0) {
        return Err(MissionError::FieldOfView(fov_along_track));
    }
    Ok(speed / (fov_along_track * (1.0 - overlap)))
}

/// DoF = 2Ncf²s² / (f⁴ − N²c²s²), all lengths in mm; `+∞` at or beyond
/// the hyperfocal distance.
pub fn depth_of_field(aperture_number: f64, coc_mm: f64, focal_mm: f64, focus_mm: f64) -> f64 {
    let f2 = focal_mm * focal_mm;
    let ncs = aperture_number * coc_mm * focus_mm;
    let denominator = f2 * f2 - ncs * ncs;
    if denominator <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * aperture_number * coc_mm * f2 * focus_mm * focus_mm / denominator
}

/// t = PIX·FOV / (v·RES)
pub fn max_exposure_for_blur(blur_pixels: f64, fov_along_track: f64, speed: f64, resolution: u32) -> f64 {
    blur_pixels * fov_along_track / (speed * resolution as f64)
}

/// FOV = D·SS/f (D in m, SS and f in mm).
pub fn spatial_fov(distance_m: f64, sensor_size_mm: f64, focal_mm: f64) -> f64 {
    distance_m * sensor_size_mm / focal_mm
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ApertureSolution {
    /// Smallest aperture number meeting the target.
    Bounded { aperture_number: f64 },
    /// Even the widest searched aperture focuses at or beyond hyperfocal.
    Hyperfocal { aperture_number: f64 },
}

impl ApertureSolution {
    pub fn aperture_number(&self) -> f64 {
        match *self {
            ApertureSolution::Bounded { aperture_number } | ApertureSolution::Hyperfocal { aperture_number } => {
                aperture_number
            }
        }
    }
}

/// Smallest N in `[n_min, n_max]` whose depth of field reaches `target_mm`.
pub fn min_aperture_for_dof_in(
    target_mm: f64,
    coc_mm: f64,
    focal_mm: f64,
    focus_mm: f64,
    n_min: f64,
    n_max: f64,
) -> Result<ApertureSolution, MissionError> {
    if !(target_mm > 0.0) {
        return Err(MissionError::TargetDof(target_mm));
    }
    let dof = |n: f64| depth_of_field(n, coc_mm, focal_mm, focus_mm);
    let widest = dof(n_min);
    if widest.is_infinite() {
        return Ok(ApertureSolution::Hyperfocal { aperture_number: n_min });
    }
    if widest >= target_mm {
        return Ok(ApertureSolution::Bounded { aperture_number: n_min });
    }
    if dof(n_max) < target_mm {
        return Err(MissionError::DofUnreachable {
            target_mm,
            max_n: n_max,
        });
    }
    let (mut lo, mut hi) = (n_min, n_max);
    while hi - lo > APERTURE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if dof(mid) >= target_mm {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ApertureSolution::Bounded { aperture_number: hi })
}

/// [`min_aperture_for_dof_in`] over the default N ∈ [0.7, 64] bracket.
pub fn min_aperture_for_dof(
    target_mm: f64,
    coc_mm: f64,
    focal_mm: f64,
    focus_mm: f64,
) -> Result<ApertureSolution, MissionError> {
    min_aperture_for_dof_in(
        target_mm,
        coc_mm,
        focal_mm,
        focus_mm,
        APERTURE_SEARCH_MIN,
        APERTURE_SEARCH_MAX,
    )
}
