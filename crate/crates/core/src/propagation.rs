//! Light emission, water-column attenuation and diffuse seafloor reflection.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::photopic::{photopic, LUMENS_PER_WATT_AT_555};
use crate::spectral::{SpectralError, Spectrum, UnitRole};

/// Narrowest accepted beam half-angle (1°).
pub const MIN_BEAM_HALF_ANGLE: f64 = PI / 180.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PropagationError {
    #[error("luminous flux must be positive, got {0} lm")]
    NonPositiveFlux(f64),
    #[error("beam half-angle {0} rad outside [1°, 90°]")]
    BeamAngle(f64),
    #[error("light spectrum has zero integral")]
    EmptySpectrum,
    #[error("light spectrum has no power inside the photopic band")]
    NoPhotopicOverlap,
    #[error("propagation distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("propagation distance must be non-negative, got {0} m")]
    NegativeDistance(f64),
    #[error("incident angle {0} rad outside [0, π/2]")]
    IncidentAngle(f64),
    #[error("camera altitude must be positive, got {0} m")]
    Altitude(f64),
    #[error("light offset must be non-negative, got {0} m")]
    Offset(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, schemars::JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum LightKind {
    Led,
    Fluorescent,
    SunlightLike,
    #[default]
    Custom,
}

/// Artificial light: lumens, spectral shape and a conical beam.
#[derive(Debug, Clone, PartialEq)]
pub struct LightSource {
    luminous_flux: f64,
    normalized_spectrum: Spectrum,
    beam_half_angle: f64,
    kind: LightKind,
    normalization_factor: f64,
}

impl LightSource {
    /// Validates the light and renormalizes its spectrum to unit integral.
    pub fn new(
        luminous_flux: f64,
        spectrum: &Spectrum,
        beam_half_angle: f64,
        kind: LightKind,
    ) -> Result<Self, PropagationError> {
        if !(luminous_flux > 0.0) || !luminous_flux.is_finite() {
            return Err(PropagationError::NonPositiveFlux(luminous_flux));
        }
        if !(MIN_BEAM_HALF_ANGLE..=FRAC_PI_2).contains(&beam_half_angle) {
            return Err(PropagationError::BeamAngle(beam_half_angle));
        }
        let area = spectrum.integrate();
        if !(area > 0.0) {
            return Err(PropagationError::EmptySpectrum);
        }
        let factor = 1.0 / area;
        let normalized_spectrum = spectrum.scale(factor, UnitRole::RelativePower)?;
        Ok(Self {
            luminous_flux,
            normalized_spectrum,
            beam_half_angle,
            kind,
            normalization_factor: factor,
        })
    }

    pub fn luminous_flux(&self) -> f64 {
        self.luminous_flux
    }

    pub fn normalized_spectrum(&self) -> &Spectrum {
        &self.normalized_spectrum
    }

    pub fn beam_half_angle(&self) -> f64 {
        self.beam_half_angle
    }

    pub fn kind(&self) -> LightKind {
        self.kind
    }

    /// Factor that was applied to bring the supplied spectrum to unit integral.
    pub fn normalization_factor(&self) -> f64 {
        self.normalization_factor
    }

    /// Solid angle of the beam cone [sr].
    pub fn beam_solid_angle(&self) -> f64 {
        2.0 * PI * (1.0 - self.beam_half_angle.cos())
    }

    pub fn with_luminous_flux(&self, luminous_flux: f64) -> Result<Self, PropagationError> {
        if !(luminous_flux > 0.0) || !luminous_flux.is_finite() {
            return Err(PropagationError::NonPositiveFlux(luminous_flux));
        }
        Ok(Self {
            luminous_flux,
            ..self.clone()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaterProfile {
    pub name: String,
    attenuation: Spectrum,
}

impl WaterProfile {
    pub fn new(name: impl Into<String>, attenuation: Spectrum) -> Result<Self, PropagationError> {
        let attenuation = attenuation.with_role(UnitRole::Attenuation)?;
        Ok(Self {
            name: name.into(),
            attenuation,
        })
    }

    /// b(λ) in 1/m.
    pub fn attenuation(&self) -> &Spectrum {
        &self.attenuation
    }

    /// Same profile with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, PropagationError> {
        Ok(Self {
            name: self.name.clone(),
            attenuation: self.attenuation.scale(factor, UnitRole::Attenuation)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMaterial {
    pub name: String,
    reflectance: Spectrum,
}

impl SurfaceMaterial {
    pub fn new(name: impl Into<String>, reflectance: Spectrum) -> Result<Self, PropagationError> {
        let reflectance = reflectance.with_role(UnitRole::Dimensionless)?;
        Ok(Self {
            name: name.into(),
            reflectance,
        })
    }

    /// M(λ), dimensionless.
    pub fn reflectance(&self) -> &Spectrum {
        &self.reflectance
    }
}

/// Camera/light/target layout. The camera looks straight down at the
/// target; the light sits `light_offset` to the side at camera height and
/// its beam is assumed aimed at the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SceneGeometry {
    pub camera_altitude: f64,
    pub light_offset: f64,
    pub light_tilt: f64,
    /// Light → target [m].
    pub light_path_length: f64,
    /// Target → camera [m].
    pub return_path_length: f64,
    /// Angle of incidence on the target [rad].
    pub incident_angle: f64,
}

/// Fills in the derived path lengths and incidence angle.
pub fn solve_geometry(
    camera_altitude: f64,
    light_offset: f64,
    light_tilt: f64,
) -> Result<SceneGeometry, PropagationError> {
    if !(camera_altitude > 0.0) || !camera_altitude.is_finite() {
        return Err(PropagationError::Altitude(camera_altitude));
    }
    if !(light_offset >= 0.0) || !light_offset.is_finite() {
        return Err(PropagationError::Offset(light_offset));
    }
    Ok(SceneGeometry {
        camera_altitude,
        light_offset,
        light_tilt,
        light_path_length: camera_altitude.hypot(light_offset),
        return_path_length: camera_altitude,
        incident_angle: (light_offset / camera_altitude).atan(),
    })
}

/// Converts the light's lumens and spectral shape to radiant flux [W/nm]
/// on the light's own grid.
pub fn radiant_spectrum(light: &LightSource) -> Result<Spectrum, PropagationError> {
    let shape = light.normalized_spectrum();
    let luminous_weight = shape.integrate_weighted(photopic);
    if !(luminous_weight > 0.0) {
        return Err(PropagationError::NoPhotopicOverlap);
    }
    let watts_per_unit = light.luminous_flux() / (LUMENS_PER_WATT_AT_555 * luminous_weight);
    Ok(shape.scale(watts_per_unit, UnitRole::RadiantFlux)?)
}

/// Irradiance at distance `d` inside a uniform cone: E = Φ / (Ω·d²).
pub fn irradiance_at_distance(light: &LightSource, d: f64) -> Result<Spectrum, PropagationError> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(PropagationError::NonPositiveDistance(d));
    }
    let flux = radiant_spectrum(light)?;
    let spread = light.beam_solid_angle() * d * d;
    Ok(flux.scale(1.0 / spread, UnitRole::Irradiance)?)
}

/// Exponential decay over `d` metres of water: s·exp(−b(λ)·d).
pub fn attenuate(s: &Spectrum, water: &WaterProfile, d: f64) -> Result<Spectrum, PropagationError> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(PropagationError::NegativeDistance(d));
    }
    let b = water.attenuation().resample(s.grid());
    let values = s
        .values()
        .iter()
        .zip(b.values())
        .map(|(&v, &coef)| v * (-coef * d).exp())
        .collect();
    Ok(Spectrum::new(s.grid().clone(), values, s.role())?)
}

/// Lambertian reflection: L = E·M(λ)/π·cos θᵢ.
pub fn reflect(e: &Spectrum, material: &SurfaceMaterial, incident_angle: f64) -> Result<Spectrum, PropagationError> {
    if !(0.0..=FRAC_PI_2).contains(&incident_angle) {
        return Err(PropagationError::IncidentAngle(incident_angle));
    }
    let cos_i = if incident_angle == FRAC_PI_2 {
        0.0
    } else {
        incident_angle.cos()
    };
    let m = material.reflectance().resample(e.grid());
    let values = e
        .values()
        .iter()
        .zip(m.values())
        .map(|(&irr, &refl)| irr * refl / PI * cos_i)
        .collect();
    Ok(Spectrum::new(e.grid().clone(), values, UnitRole::Radiance)?)
}
