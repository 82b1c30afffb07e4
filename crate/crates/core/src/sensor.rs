//! EMVA1288-style linear sensor model: photon integration, digitization and SNR.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectral::{SpectralError, Spectrum, UnitRole};

/// Planck constant [J·s].
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light [m/s].
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Variance of uniform quantization over one DN [DN²].
pub const QUANTIZATION_VARIANCE: f64 = 1.0 / 12.0;

pub const SUPPORTED_BIT_DEPTHS: [u32; 5] = [8, 10, 12, 14, 16];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SensorError {
    #[error("pixel area must be positive, got {0} m²")]
    PixelArea(f64),
    #[error("resolution must be at least 1×1, got {0}×{1}")]
    Resolution(u32, u32),
    #[error("sensor size must be positive, got {0}×{1} mm")]
    SensorSize(f64, f64),
    #[error("system gain must be positive, got {0} DN/e⁻")]
    SystemGain(f64),
    #[error("dark signal must be non-negative, got {0} DN")]
    DarkSignal(f64),
    #[error("dark noise variance must be non-negative, got {0} e⁻²")]
    DarkNoise(f64),
    #[error("unsupported bit depth {0}")]
    BitDepth(u32),
    #[error("exposure time must be positive, got {0} s")]
    ExposureTime(f64),
    #[error("gain must be non-negative, got {0} dB")]
    Gain(f64),
    #[error("target {target} DN is not reachable: {reason}")]
    Infeasible { target: f64, reason: &'static str },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Which quantization term the SNR denominator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, schemars::JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum SnrDenominator {
    /// σ_q²/K
    #[default]
    Paper,
    /// σ_q²/K², as in the EMVA1288 standard.
    Emva,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensorModel {
    pub name: String,
    /// A [m²]
    pub pixel_area_m2: f64,
    pub resolution_x: u32,
    pub resolution_y: u32,
    pub sensor_size_x_mm: f64,
    pub sensor_size_y_mm: f64,
    qe: Spectrum,
    /// K [DN/e⁻] at 0 dB.
    pub system_gain: f64,
    /// μ_y.dark [DN]
    pub dark_signal_dn: f64,
    /// σ_d² [e⁻²]
    pub dark_noise_var_e2: f64,
    pub bit_depth: u32,
    pub monochrome: bool,
}

impl SensorModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        pixel_area_m2: f64,
        resolution: (u32, u32),
        sensor_size_mm: (f64, f64),
        qe: Spectrum,
        system_gain: f64,
        dark_signal_dn: f64,
        dark_noise_var_e2: f64,
        bit_depth: u32,
        monochrome: bool,
    ) -> Result<Self, SensorError> {
        if !(pixel_area_m2 > 0.0) || !pixel_area_m2.is_finite() {
            return Err(SensorError::PixelArea(pixel_area_m2));
        }
        if resolution.0 == 0 || resolution.1 == 0 {
            return Err(SensorError::Resolution(resolution.0, resolution.1));
        }
        if !(sensor_size_mm.0 > 0.0) || !(sensor_size_mm.1 > 0.0) {
            return Err(SensorError::SensorSize(sensor_size_mm.0, sensor_size_mm.1));
        }
        if !(system_gain > 0.0) || !system_gain.is_finite() {
            return Err(SensorError::SystemGain(system_gain));
        }
        if !(dark_signal_dn >= 0.0) {
            return Err(SensorError::DarkSignal(dark_signal_dn));
        }
        if !(dark_noise_var_e2 >= 0.0) {
            return Err(SensorError::DarkNoise(dark_noise_var_e2));
        }
        if !SUPPORTED_BIT_DEPTHS.contains(&bit_depth) {
            return Err(SensorError::BitDepth(bit_depth));
        }
        let qe = qe.with_role(UnitRole::Dimensionless)?;
        Ok(Self {
            name: name.into(),
            pixel_area_m2,
            resolution_x: resolution.0,
            resolution_y: resolution.1,
            sensor_size_x_mm: sensor_size_mm.0,
            sensor_size_y_mm: sensor_size_mm.1,
            qe,
            system_gain,
            dark_signal_dn,
            dark_noise_var_e2,
            bit_depth,
            monochrome,
        })
    }

    /// η(λ)
    pub fn qe(&self) -> &Spectrum {
        &self.qe
    }

    pub fn saturation_dn(&self) -> f64 {
        ((1u64 << self.bit_depth) - 1) as f64
    }

    /// Square-pixel pitch [mm].
    pub fn pixel_pitch_mm(&self) -> f64 {
        self.pixel_area_m2.sqrt() * 1e3
    }

    /// K scaled by an analog gain in dB.
    pub fn gain_at(&self, gain_db: f64) -> f64 {
        self.system_gain * 10f64.powf(gain_db / 20.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExposureSettings {
    pub exposure_time_s: f64,
    pub gain_db: f64,
}

impl ExposureSettings {
    pub fn new(exposure_time_s: f64, gain_db: f64) -> Result<Self, SensorError> {
        if !(exposure_time_s > 0.0) || !exposure_time_s.is_finite() {
            return Err(SensorError::ExposureTime(exposure_time_s));
        }
        if !(gain_db >= 0.0) || !gain_db.is_finite() {
            return Err(SensorError::Gain(gain_db));
        }
        Ok(Self {
            exposure_time_s,
            gain_db,
        })
    }
}

/// Mean photo-electrons and photons collected by one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonCount {
    pub electrons: f64,
    pub photons: f64,
}

impl PhotonCount {
    /// Spectrum-weighted mean quantum efficiency μ_e/μ_p.
    pub fn mean_qe(&self) -> f64 {
        if self.photons > 0.0 {
            self.electrons / self.photons
        } else {
            0.0
        }
    }
}

/// μ_e = A·t/(h·c) ∫ E(λ)·λ·η(λ) dλ, with λ in metres inside the integrand
/// and dλ in nm to match E's per-nm units. μ_p is the same integral with η ≡ 1.
pub fn absorbed_electrons(irradiance: &Spectrum, sensor: &SensorModel, exposure_time_s: f64) -> PhotonCount {
    let scale = sensor.pixel_area_m2 * exposure_time_s / (PLANCK * SPEED_OF_LIGHT);
    let qe = sensor.qe().resample(irradiance.grid());
    let pts = irradiance.wavelengths();
    let energy: Vec<f64> = pts
        .iter()
        .zip(irradiance.values())
        .map(|(&w, &e)| e * w * 1e-9)
        .collect();
    let weighted: Vec<f64> = energy.iter().zip(qe.values()).map(|(e, q)| e * q).collect();
    PhotonCount {
        electrons: scale * crate::spectral::trapezoid(pts, &weighted),
        photons: scale * crate::spectral::trapezoid(pts, &energy),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Digitized {
    pub digital_value: f64,
    pub saturated: bool,
}

/// μ_y = μ_y.dark + K·10^(gain/20)·μ_e, clamped to the ADC range.
pub fn digitize(electrons: f64, sensor: &SensorModel, gain_db: f64) -> Digitized {
    let raw = sensor.dark_signal_dn + sensor.gain_at(gain_db) * electrons;
    let full_scale = sensor.saturation_dn();
    Digitized {
        digital_value: raw.clamp(0.0, full_scale),
        saturated: raw > full_scale,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Snr {
    pub ratio: f64,
    pub db: f64,
}

/// SNR = η·μ_p / √(σ_d² + σ_q²/K + η·μ_p), K including the analog gain.
pub fn snr(photons: f64, mean_qe: f64, sensor: &SensorModel, gain_db: f64, denominator: SnrDenominator) -> Snr {
    let signal = mean_qe * photons;
    if !(signal > 0.0) {
        return Snr {
            ratio: 0.0,
            db: f64::NEG_INFINITY,
        };
    }
    let k = sensor.gain_at(gain_db);
    let quantization = match denominator {
        SnrDenominator::Paper => QUANTIZATION_VARIANCE / k,
        SnrDenominator::Emva => QUANTIZATION_VARIANCE / (k * k),
    };
    let ratio = signal / (sensor.dark_noise_var_e2 + quantization + signal).sqrt();
    Snr {
        ratio,
        db: 20.0 * ratio.log10(),
    }
}

/// Exposure time that brings the mean response to `target_dn`.
pub fn required_exposure(
    target_dn: f64,
    irradiance: &Spectrum,
    sensor: &SensorModel,
    gain_db: f64,
) -> Result<f64, SensorError> {
    if !(target_dn > sensor.dark_signal_dn) {
        return Err(SensorError::Infeasible {
            target: target_dn,
            reason: "target does not exceed the dark signal",
        });
    }
    let rate = absorbed_electrons(irradiance, sensor, 1.0).electrons;
    if !(rate > 0.0) {
        return Err(SensorError::Infeasible {
            target: target_dn,
            reason: "no photo-electrons are generated",
        });
    }
    Ok((target_dn - sensor.dark_signal_dn) / (sensor.gain_at(gain_db) * rate))
}

/// Mean pixel response with its noise figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseResult {
    pub absorbed_electrons: f64,
    pub absorbed_photons: f64,
    pub digital_value: f64,
    pub snr: f64,
    pub snr_db: f64,
    pub saturated: bool,
}

pub fn respond(
    irradiance: &Spectrum,
    sensor: &SensorModel,
    exposure: &ExposureSettings,
    denominator: SnrDenominator,
) -> ResponseResult {
    let count = absorbed_electrons(irradiance, sensor, exposure.exposure_time_s);
    let out = digitize(count.electrons, sensor, exposure.gain_db);
    let noise = snr(count.photons, count.mean_qe(), sensor, exposure.gain_db, denominator);
    ResponseResult {
        absorbed_electrons: count.electrons,
        absorbed_photons: count.photons,
        digital_value: out.digital_value,
        snr: noise.ratio,
        snr_db: noise.db,
        saturated: out.saturated,
    }
}
