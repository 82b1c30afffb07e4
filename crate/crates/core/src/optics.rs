//! Housing viewports and the lens radiometric transfer.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectral::{SpectralError, Spectrum, UnitRole};

/// Focal length scale factor behind a flat port in water.
pub const FLAT_PORT_FACTOR: f64 = 1.33;
pub const DEFAULT_WATER_INDEX: f64 = 1.33;

/// Side length of the field-angle lattice used for frame-averaged vignetting.
pub const VIGNETTING_LATTICE: usize = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("focal length must be positive, got {0} mm")]
    FocalLength(f64),
    #[error("aperture number must be positive, got {0}")]
    ApertureNumber(f64),
    #[error("aperture stops must satisfy 0 < min ≤ max, got {min}..{max}")]
    ApertureStops { min: f64, max: f64 },
    #[error("lens transmission {0} outside [0, 1]")]
    Transmission(f64),
    #[error("dome radii must satisfy outer > inner > 0, got inner {inner} mm, outer {outer} mm")]
    DomeRadii { inner: f64, outer: f64 },
    #[error("glass index must exceed 1, got {0}")]
    GlassIndex(f64),
    #[error("water index must be at least 1, got {0}")]
    WaterIndex(f64),
    #[error("virtual image is only defined for dome viewports")]
    NotADome,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Transmission {
    Constant(f64),
    Spectral(Spectrum),
}

impl Transmission {
    pub fn at(&self, wavelength: f64) -> f64 {
        match self {
            Transmission::Constant(t) => *t,
            Transmission::Spectral(s) => s.value_at(wavelength),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lens {
    pub focal_length_mm: f64,
    pub aperture_number: f64,
    pub transmission: Transmission,
    pub min_aperture_number: f64,
    pub max_aperture_number: f64,
}

impl Lens {
    pub fn new(
        focal_length_mm: f64,
        aperture_number: f64,
        transmission: Transmission,
        min_aperture_number: f64,
        max_aperture_number: f64,
    ) -> Result<Self, OpticsError> {
        if !(focal_length_mm > 0.0) || !focal_length_mm.is_finite() {
            return Err(OpticsError::FocalLength(focal_length_mm));
        }
        if !(aperture_number > 0.0) || !aperture_number.is_finite() {
            return Err(OpticsError::ApertureNumber(aperture_number));
        }
        if !(min_aperture_number > 0.0) || !(max_aperture_number >= min_aperture_number) {
            return Err(OpticsError::ApertureStops {
                min: min_aperture_number,
                max: max_aperture_number,
            });
        }
        let transmission = match transmission {
            Transmission::Constant(t) => {
                if !(0.0..=1.0).contains(&t) {
                    return Err(OpticsError::Transmission(t));
                }
                Transmission::Constant(t)
            }
            Transmission::Spectral(s) => Transmission::Spectral(s.with_role(UnitRole::Dimensionless)?),
        };
        Ok(Self {
            focal_length_mm,
            aperture_number,
            transmission,
            min_aperture_number,
            max_aperture_number,
        })
    }

    pub fn with_aperture_number(&self, n: f64) -> Result<Self, OpticsError> {
        Lens::new(
            self.focal_length_mm,
            n,
            self.transmission.clone(),
            self.min_aperture_number,
            self.max_aperture_number,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Viewport {
    Flat,
    Dome {
        inner_radius_mm: f64,
        outer_radius_mm: f64,
        glass_index: f64,
        #[serde(default = "default_water_index")]
        water_index: f64,
    },
}

fn default_water_index() -> f64 {
    DEFAULT_WATER_INDEX
}

impl Viewport {
    pub fn validate(&self) -> Result<(), OpticsError> {
        match *self {
            Viewport::Flat => Ok(()),
            Viewport::Dome {
                inner_radius_mm,
                outer_radius_mm,
                glass_index,
                water_index,
            } => {
                if !(inner_radius_mm > 0.0) || !(outer_radius_mm > inner_radius_mm) || !outer_radius_mm.is_finite() {
                    return Err(OpticsError::DomeRadii {
                        inner: inner_radius_mm,
                        outer: outer_radius_mm,
                    });
                }
                if !(glass_index > 1.0) {
                    return Err(OpticsError::GlassIndex(glass_index));
                }
                if !(water_index >= 1.0) {
                    return Err(OpticsError::WaterIndex(water_index));
                }
                Ok(())
            }
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, Viewport::Flat)
    }
}

/// Focal length seen from the water side.
pub fn effective_focal_length(lens: &Lens, viewport: &Viewport) -> f64 {
    match viewport {
        Viewport::Flat => FLAT_PORT_FACTOR * lens.focal_length_mm,
        Viewport::Dome { .. } => lens.focal_length_mm,
    }
}

/// Aperture number of the lens+port system. A flat port stretches the focal
/// length without changing the entrance pupil, so N scales by the same factor.
pub fn effective_aperture_number(aperture_number: f64, viewport: &Viewport) -> f64 {
    match viewport {
        Viewport::Flat => FLAT_PORT_FACTOR * aperture_number,
        Viewport::Dome { .. } => aperture_number,
    }
}

/// Distance [m] in front of the outer dome surface at which a centred dome
/// images an object at infinity.
///
/// The dome is two concentric refracting spheres (water→glass at the outer
/// radius, glass→air at the inner one), combined with the thick-lens
/// equations. Returns `+∞` when the shell is afocal (a thin shell in air). A negative value
/// would mean a real image behind the dome.
pub fn dome_virtual_image(viewport: &Viewport) -> Result<f64, OpticsError> {
    let Viewport::Dome {
        inner_radius_mm,
        outer_radius_mm,
        glass_index,
        water_index,
    } = *viewport
    else {
        return Err(OpticsError::NotADome);
    };
    viewport.validate()?;
    let outer_power = (glass_index - water_index) / outer_radius_mm;
    let inner_power = (1.0 - glass_index) / inner_radius_mm;
    let thickness = outer_radius_mm - inner_radius_mm;
    let reduced = thickness / glass_index;
    let power = outer_power + inner_power - reduced * outer_power * inner_power;
    // Net power below 1e-12 per radius is numerically an afocal shell.
    if power.abs() * outer_radius_mm < 1e-12 {
        return Ok(f64::INFINITY);
    }
    let back_focal = (1.0 - reduced * outer_power) / power;
    Ok(-(thickness + back_focal) * 1e-3)
}

/// Sensor-plane irradiance: E = L·(π/4)·(1/N²)·cos⁴α·T(λ).
pub fn lens_irradiance(
    radiance: &Spectrum,
    lens: &Lens,
    viewport: &Viewport,
    field_angle: f64,
) -> Result<Spectrum, OpticsError> {
    let n_eff = effective_aperture_number(lens.aperture_number, viewport);
    let geometric = PI / 4.0 / (n_eff * n_eff) * field_angle.cos().powi(4);
    Ok(radiance.map_pointwise(UnitRole::Irradiance, |w, l| l * geometric * lens.transmission.at(w))?)
}

/// Full angular field of view (x, y) [rad] for a sensor of the given size [mm].
pub fn angular_fov(sensor_x_mm: f64, sensor_y_mm: f64, focal_length_mm: f64) -> (f64, f64) {
    let full = |ss: f64| 2.0 * (ss / (2.0 * focal_length_mm)).atan();
    (full(sensor_x_mm), full(sensor_y_mm))
}

/// Mean of cos⁴α over a 9×9 lattice of cell centres spanning the sensor.
pub fn frame_average_vignetting(sensor_x_mm: f64, sensor_y_mm: f64, focal_length_mm: f64) -> f64 {
    let n = VIGNETTING_LATTICE;
    let coord = |i: usize, size: f64| ((i as f64 + 0.5) / n as f64 - 0.5) * size;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let r = coord(i, sensor_x_mm).hypot(coord(j, sensor_y_mm));
            let alpha = (r / focal_length_mm).atan();
            sum += alpha.cos().powi(4);
        }
    }
    sum / (n * n) as f64
}

/// Optical quantities of the lens behind its viewport.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveOptics {
    pub focal_length_effective_mm: f64,
    pub aperture_number_effective: f64,
    pub angular_fov_x_rad: f64,
    pub angular_fov_y_rad: f64,
    /// Dome: distance of the virtual image in front of the dome. Flat: none.
    pub focus_distance_required_m: Option<f64>,
    pub vignetting_frame_average: f64,
}

pub fn effective_optics(
    lens: &Lens,
    viewport: &Viewport,
    sensor_x_mm: f64,
    sensor_y_mm: f64,
) -> Result<EffectiveOptics, OpticsError> {
    viewport.validate()?;
    let f_eff = effective_focal_length(lens, viewport);
    let (ax, ay) = angular_fov(sensor_x_mm, sensor_y_mm, f_eff);
    let focus = match viewport {
        Viewport::Flat => None,
        Viewport::Dome { .. } => Some(dome_virtual_image(viewport)?),
    };
    Ok(EffectiveOptics {
        focal_length_effective_mm: f_eff,
        aperture_number_effective: effective_aperture_number(lens.aperture_number, viewport),
        angular_fov_x_rad: ax,
        angular_fov_y_rad: ay,
        focus_distance_required_m: focus,
        // Field angles behind the port are set by the in-air focal length.
        vignetting_frame_average: frame_average_vignetting(sensor_x_mm, sensor_y_mm, lens.focal_length_mm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mission::spatial_fov;
    use crate::spectral::WavelengthGrid;
    use proptest::prelude::*;

    fn lens(f: f64, n: f64) -> Lens {
        Lens::new(f, n, Transmission::Constant(1.0), 0.7, 64.0).unwrap()
    }

    fn dome(inner: f64, outer: f64, glass: f64, water: f64) -> Viewport {
        Viewport::Dome {
            inner_radius_mm: inner,
            outer_radius_mm: outer,
            glass_index: glass,
            water_index: water,
        }
    }

    #[test]
    fn focal_length_examples() {
        assert_eq!(effective_focal_length(&lens(30.0, 2.0), &Viewport::Flat), 1.33 * 30.0);
        assert!((effective_focal_length(&lens(30.0, 2.0), &Viewport::Flat) - 39.9).abs() < 1e-12);
        let d = dome(50.0, 55.0, 1.5, 1.33);
        assert_eq!(effective_focal_length(&lens(30.0, 2.0), &d), 30.0);
        assert!((effective_focal_length(&lens(12.0, 2.0), &Viewport::Flat) - 15.96).abs() < 1e-12);
    }

    #[test]
    fn thin_shell_virtual_image() {
        let r = 100.0;
        let d = dome(r, r * (1.0 + 1e-9), 1.5, 1.33);
        let dist = dome_virtual_image(&d).unwrap();
        let expected = r / (1.33 - 1.0) * 1e-3;
        assert!((dist - expected).abs() / expected < 1e-6);
        assert!((dist - 0.303).abs() < 1e-3);
    }

    #[test]
    fn thin_shell_in_air_stays_at_infinity() {
        let d = dome(80.0, 80.0 + 1e-10, 1.5, 1.0);
        assert_eq!(dome_virtual_image(&d).unwrap(), f64::INFINITY);
        // A thick shell in air keeps a weak negative power.
        let thick = dome_virtual_image(&dome(50.0, 55.0, 1.5, 1.0)).unwrap();
        assert!(thick.is_finite() && thick > 1.0);
    }

    #[test]
    fn virtual_image_errors() {
        assert_eq!(dome_virtual_image(&Viewport::Flat), Err(OpticsError::NotADome));
        assert!(dome_virtual_image(&dome(50.0, 40.0, 1.5, 1.33)).is_err());
        assert!(dome_virtual_image(&dome(40.0, 50.0, 0.9, 1.33)).is_err());
    }

    #[test]
    fn thick_dome_is_in_front() {
        let dist = dome_virtual_image(&dome(50.0, 60.0, 1.52, 1.33)).unwrap();
        assert!(dist > 0.0 && dist.is_finite());
    }

    #[test]
    fn radiometric_examples() {
        let g = WavelengthGrid::uniform(400.0, 700.0, 50.0).unwrap();
        let l = Spectrum::constant(g, 1.0, UnitRole::Radiance).unwrap();
        let e0 = lens_irradiance(&l, &lens(30.0, 2.0), &dome(50.0, 55.0, 1.5, 1.33), 0.0).unwrap();
        assert!((e0.values()[0] - PI / 16.0).abs() < 1e-15);
        assert!((e0.values()[0] - 0.19635).abs() < 1e-5);
        assert_eq!(e0.role(), UnitRole::Irradiance);

        let e60 = lens_irradiance(&l, &lens(30.0, 2.0), &dome(50.0, 55.0, 1.5, 1.33), PI / 3.0).unwrap();
        assert!((e60.values()[0] - e0.values()[0] / 16.0).abs() < 1e-15);

        let e4 = lens_irradiance(&l, &lens(30.0, 4.0), &dome(50.0, 55.0, 1.5, 1.33), 0.0).unwrap();
        assert!((e4.values()[0] - e0.values()[0] / 4.0).abs() < 1e-15);

        let flat = lens_irradiance(&l, &lens(30.0, 2.0), &Viewport::Flat, 0.0).unwrap();
        let n_eff = 1.33 * 2.0;
        assert!((flat.values()[0] - PI / 4.0 / (n_eff * n_eff)).abs() < 1e-15);
    }

    #[test]
    fn spectral_transmission_applies() {
        let g = WavelengthGrid::uniform(400.0, 700.0, 100.0).unwrap();
        let t = Spectrum::new(g.clone(), vec![0.5, 0.8, 0.9, 0.9], UnitRole::Dimensionless).unwrap();
        let lens = Lens::new(30.0, 1.0, Transmission::Spectral(t), 1.0, 16.0).unwrap();
        let l = Spectrum::constant(g, 4.0 / PI, UnitRole::Radiance).unwrap();
        let e = lens_irradiance(&l, &lens, &dome(50.0, 55.0, 1.5, 1.33), 0.0).unwrap();
        assert_eq!(e.values(), &[0.5, 0.8, 0.9, 0.9]);
    }

    #[test]
    fn lens_validation() {
        assert!(Lens::new(0.0, 2.0, Transmission::Constant(1.0), 1.0, 16.0).is_err());
        assert!(Lens::new(30.0, 0.0, Transmission::Constant(1.0), 1.0, 16.0).is_err());
        assert!(Lens::new(30.0, 2.0, Transmission::Constant(1.1), 1.0, 16.0).is_err());
        assert!(Lens::new(30.0, 2.0, Transmission::Constant(0.9), 16.0, 1.0).is_err());
    }

    #[test]
    fn fov_examples() {
        assert!((spatial_fov(2.0, 10.0, 10.0) - 2.0).abs() < 1e-15);
        let (ax, _) = angular_fov(10.0, 10.0, 10.0);
        assert!((ax - 2.0 * 0.5f64.atan()).abs() < 1e-15);
        let (tele, _) = angular_fov(10.0, 10.0, 1e12);
        assert!(tele < 1e-10);
        let air = spatial_fov(2.0, 10.0, 30.0);
        let water = spatial_fov(2.0, 10.0, effective_focal_length(&lens(30.0, 2.0), &Viewport::Flat));
        assert!((water - air / 1.33).abs() < 1e-15);
    }

    #[test]
    fn frame_vignetting_bounds() {
        let v = frame_average_vignetting(8.45, 7.07, 30.0);
        assert!(v < 1.0 && v > 0.95);
        assert!(frame_average_vignetting(8.45, 7.07, 12.0) < v);
    }

    proptest! {
        #[test]
        fn flat_port_factor_exact(f in 1.0f64..500.0) {
            prop_assert_eq!(effective_focal_length(&lens(f, 2.0), &Viewport::Flat), 1.33 * f);
        }

        #[test]
        fn lens_irradiance_monotone(n in 0.7f64..32.0, dn in 0.01f64..4.0, a in 0.0f64..1.2, da in 0.01f64..0.3) {
            let g = WavelengthGrid::uniform(400.0, 700.0, 100.0).unwrap();
            let l = Spectrum::constant(g, 3.0, UnitRole::Radiance).unwrap();
            let v = Viewport::Flat;
            let base = lens_irradiance(&l, &lens(30.0, n), &v, a).unwrap().values()[0];
            let slower = lens_irradiance(&l, &lens(30.0, n + dn), &v, a).unwrap().values()[0];
            let wider = lens_irradiance(&l, &lens(30.0, n), &v, a + da).unwrap().values()[0];
            prop_assert!(slower < base);
            prop_assert!(wider < base);
        }
    }
}
