//! Wavelength grids and spectra.
//!
//! Every stage of the image-formation chain is a [`Spectrum`]: a set of
//! non-negative samples on a [`WavelengthGrid`] tagged with a [`UnitRole`]
//! so that dimensionally meaningless products are rejected. Spectra are
//! piecewise linear between samples, which makes trapezoidal quadrature
//! exact for them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Lowest wavelength accepted on any grid [nm].
pub const MIN_WAVELENGTH_NM: f64 = 300.0;
/// Highest wavelength accepted on any grid [nm].
pub const MAX_WAVELENGTH_NM: f64 = 1100.0;

/// Default engine grid: 350–800 nm in 5 nm steps.
pub const DEFAULT_GRID_START_NM: f64 = 350.0;
pub const DEFAULT_GRID_STOP_NM: f64 = 800.0;
pub const DEFAULT_GRID_STEP_NM: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("a wavelength grid needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("wavelengths must be strictly increasing (index {index}: {prev} nm then {next} nm)")]
    NonMonotonic { index: usize, prev: f64, next: f64 },
    #[error("wavelength {0} nm lies outside [300, 1100] nm")]
    OutOfRange(f64),
    #[error("{values} values supplied for {points} grid points")]
    LengthMismatch { points: usize, values: usize },
    #[error("value {value} at {wavelength} nm is negative or not finite")]
    InvalidValue { wavelength: f64, value: f64 },
    #[error("dimensionless value {value} at {wavelength} nm exceeds 1")]
    AboveUnity { wavelength: f64, value: f64 },
    #[error("cannot multiply two flux-like spectra ({0} × {1})")]
    FluxProduct(UnitRole, UnitRole),
    #[error("invalid grid range {start}:{stop}:{step}")]
    BadRange { start: f64, stop: f64, step: f64 },
}

/// Strictly increasing wavelength samples in nanometres.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WavelengthGrid {
    points: Arc<[f64]>,
}

impl WavelengthGrid {
    pub fn new(points: Vec<f64>) -> Result<Self, SpectralError> {
        if points.len() < 2 {
            return Err(SpectralError::TooFewPoints(points.len()));
        }
        for &p in &points {
            if !p.is_finite() || !(MIN_WAVELENGTH_NM..=MAX_WAVELENGTH_NM).contains(&p) {
                return Err(SpectralError::OutOfRange(p));
            }
        }
        for (index, w) in points.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(SpectralError::NonMonotonic {
                    index: index + 1,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Self { points: points.into() })
    }

    /// Evenly spaced grid including both endpoints.
    pub fn uniform(start: f64, stop: f64, step: f64) -> Result<Self, SpectralError> {
        if !(step > 0.0) || !(stop > start) || !start.is_finite() || !stop.is_finite() {
            return Err(SpectralError::BadRange { start, stop, step });
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Self::new((0..n).map(|i| start + i as f64 * step).collect())
    }

    /// The engine's default 350–800 nm, 5 nm grid.
    pub fn engine_default() -> Self {
        Self::uniform(DEFAULT_GRID_START_NM, DEFAULT_GRID_STOP_NM, DEFAULT_GRID_STEP_NM).expect("default grid is valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }
}

/// Physical meaning of the samples of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitRole {
    /// W/nm
    RadiantFlux,
    /// W/(m²·nm)
    Irradiance,
    /// W/(m²·sr·nm)
    Radiance,
    /// Fractions in [0, 1]: QE, reflectance, transmission.
    Dimensionless,
    /// Relative spectral power per nm; a light's spectral shape.
    RelativePower,
    /// Attenuation coefficient [1/m].
    Attenuation,
}

impl UnitRole {
    /// Roles that carry energy; these vanish outside their tabulated range.
    pub fn is_flux_like(self) -> bool {
        matches!(
            self,
            UnitRole::RadiantFlux | UnitRole::Irradiance | UnitRole::Radiance | UnitRole::RelativePower
        )
    }

    fn is_bounded_by_unity(self) -> bool {
        self == UnitRole::Dimensionless
    }
}

impl std::fmt::Display for UnitRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            UnitRole::RadiantFlux => "radiant-flux",
            UnitRole::Irradiance => "irradiance",
            UnitRole::Radiance => "radiance",
            UnitRole::Dimensionless => "dimensionless",
            UnitRole::RelativePower => "relative-power",
            UnitRole::Attenuation => "attenuation",
        };
        f.write_str(s)
    }
}

/// Non-negative samples on a wavelength grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    #[serde(rename = "wavelength_nm")]
    grid: WavelengthGrid,
    values: Vec<f64>,
    #[serde(rename = "unit_role")]
    role: UnitRole,
}

/// Pointwise operation accepted by [`combine`].
#[derive(Debug, Clone, Copy)]
pub enum Combine<'a> {
    Multiply(&'a Spectrum),
    Scale(f64),
}

impl Spectrum {
    pub fn new(grid: WavelengthGrid, values: Vec<f64>, role: UnitRole) -> Result<Self, SpectralError> {
        if values.len() != grid.len() {
            return Err(SpectralError::LengthMismatch {
                points: grid.len(),
                values: values.len(),
            });
        }
        for (&wavelength, &value) in grid.points().iter().zip(&values) {
            if !value.is_finite() || value < 0.0 {
                return Err(SpectralError::InvalidValue { wavelength, value });
            }
            if role.is_bounded_by_unity() && value > 1.0 {
                return Err(SpectralError::AboveUnity { wavelength, value });
            }
        }
        Ok(Self { grid, values, role })
    }

    /// Constant value on every grid point.
    pub fn constant(grid: WavelengthGrid, value: f64, role: UnitRole) -> Result<Self, SpectralError> {
        let values = vec![value; grid.len()];
        Self::new(grid, values, role)
    }

    /// Builds a spectrum from paired samples.
    pub fn from_samples(wavelengths: Vec<f64>, values: Vec<f64>, role: UnitRole) -> Result<Self, SpectralError> {
        Self::new(WavelengthGrid::new(wavelengths)?, values, role)
    }

    pub fn grid(&self) -> &WavelengthGrid {
        &self.grid
    }

    pub fn wavelengths(&self) -> &[f64] {
        self.grid.points()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn role(&self) -> UnitRole {
        self.role
    }

    /// Re-declares the unit role after a caller-side dimensional step.
    pub fn with_role(self, role: UnitRole) -> Result<Self, SpectralError> {
        Self::new(self.grid, self.values, role)
    }

    /// Linear interpolation at a single wavelength using the resample edge rule.
    pub fn value_at(&self, wavelength: f64) -> f64 {
        let pts = self.grid.points();
        if wavelength < pts[0] || wavelength > pts[pts.len() - 1] {
            if self.role.is_flux_like() {
                return 0.0;
            }
            return if wavelength < pts[0] {
                self.values[0]
            } else {
                self.values[self.values.len() - 1]
            };
        }
        // First index whose wavelength is > target.
        let hi = pts.partition_point(|&p| p <= wavelength);
        if hi == 0 {
            return self.values[0];
        }
        if hi >= pts.len() {
            return self.values[pts.len() - 1];
        }
        let lo = hi - 1;
        let t = (wavelength - pts[lo]) / (pts[hi] - pts[lo]);
        self.values[lo] + t * (self.values[hi] - self.values[lo])
    }

    /// Resamples onto `target`; a no-op when the grids already match.
    pub fn resample(&self, target: &WavelengthGrid) -> Spectrum {
        if &self.grid == target {
            return self.clone();
        }
        let values = target.points().iter().map(|&w| self.value_at(w)).collect();
        Spectrum {
            grid: target.clone(),
            values,
            role: self.role,
        }
    }

    /// Trapezoidal integral over wavelength in nm.
    pub fn integrate(&self) -> f64 {
        trapezoid(self.grid.points(), &self.values)
    }

    /// Trapezoidal integral of `values · weight(λ)`.
    pub fn integrate_weighted(&self, weight: impl Fn(f64) -> f64) -> f64 {
        let pts = self.grid.points();
        let weighted: Vec<f64> = pts.iter().zip(&self.values).map(|(&w, &v)| v * weight(w)).collect();
        trapezoid(pts, &weighted)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Pointwise map that keeps the grid; the result is revalidated under `role`.
    pub fn map_pointwise(&self, role: UnitRole, f: impl Fn(f64, f64) -> f64) -> Result<Spectrum, SpectralError> {
        let values = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(&w, &v)| f(w, v))
            .collect();
        Spectrum::new(self.grid.clone(), values, role)
    }

    pub fn multiply(&self, other: &Spectrum, role: UnitRole) -> Result<Spectrum, SpectralError> {
        combine(self, Combine::Multiply(other), role)
    }

    pub fn scale(&self, factor: f64, role: UnitRole) -> Result<Spectrum, SpectralError> {
        combine(self, Combine::Scale(factor), role)
    }
}

/// Pointwise product or scaling; `role` is the caller's dimensional result.
///
/// A multiplicand on another grid is resampled onto `a`'s grid first.
pub fn combine(a: &Spectrum, op: Combine<'_>, role: UnitRole) -> Result<Spectrum, SpectralError> {
    match op {
        Combine::Multiply(b) => {
            if a.role.is_flux_like() && b.role.is_flux_like() {
                return Err(SpectralError::FluxProduct(a.role, b.role));
            }
            let b = b.resample(&a.grid);
            let values = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
            Spectrum::new(a.grid.clone(), values, role)
        }
        Combine::Scale(k) => {
            let values = a.values.iter().map(|x| x * k).collect();
            Spectrum::new(a.grid.clone(), values, role)
        }
    }
}

/// Trapezoidal rule over paired abscissae and ordinates.
pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(points: &[f64]) -> WavelengthGrid {
        WavelengthGrid::new(points.to_vec()).unwrap()
    }

    #[test]
    fn grid_invariants() {
        assert_eq!(WavelengthGrid::new(vec![500.0]), Err(SpectralError::TooFewPoints(1)));
        assert!(matches!(
            WavelengthGrid::new(vec![500.0, 500.0]),
            Err(SpectralError::NonMonotonic { index: 1, .. })
        ));
        assert!(matches!(
            WavelengthGrid::new(vec![250.0, 500.0]),
            Err(SpectralError::OutOfRange(_))
        ));
        assert!(WavelengthGrid::new(vec![300.0, 1100.0]).is_ok());
    }

    #[test]
    fn default_grid_shape() {
        let g = WavelengthGrid::engine_default();
        assert_eq!(g.len(), 91);
        assert_eq!(g.first(), 350.0);
        assert_eq!(g.last(), 800.0);
    }

    #[test]
    fn dimensionless_bounded() {
        let g = grid(&[400.0, 500.0]);
        assert!(matches!(
            Spectrum::new(g.clone(), vec![0.5, 1.2], UnitRole::Dimensionless),
            Err(SpectralError::AboveUnity { .. })
        ));
        assert!(Spectrum::new(g.clone(), vec![0.5, 1.2], UnitRole::Irradiance).is_ok());
        assert!(matches!(
            Spectrum::new(g, vec![-0.1, 0.0], UnitRole::Irradiance),
            Err(SpectralError::InvalidValue { .. })
        ));
    }

    #[test]
    fn resample_identity() {
        let s = Spectrum::from_samples(vec![400.0, 450.0, 500.0], vec![1.0, 2.0, 0.5], UnitRole::Irradiance).unwrap();
        assert_eq!(s.resample(s.grid()), s);
    }

    #[test]
    fn resample_linear_midpoint() {
        let s = Spectrum::from_samples(vec![400.0, 500.0], vec![1.0, 3.0], UnitRole::Irradiance).unwrap();
        let r = s.resample(&grid(&[450.0, 460.0]));
        assert_eq!(r.values()[0], 2.0);
    }

    #[test]
    fn resample_edges() {
        let flux = Spectrum::from_samples(vec![400.0, 500.0], vec![1.0, 3.0], UnitRole::RadiantFlux).unwrap();
        let r = flux.resample(&grid(&[350.0, 600.0]));
        assert_eq!(r.values(), &[0.0, 0.0]);

        let qe = Spectrum::from_samples(vec![400.0, 500.0], vec![0.2, 0.7], UnitRole::Dimensionless).unwrap();
        let r = qe.resample(&grid(&[350.0, 600.0]));
        assert_eq!(r.values(), &[0.2, 0.7]);
    }

    #[test]
    fn integrate_examples() {
        let g = WavelengthGrid::uniform(400.0, 700.0, 5.0).unwrap();
        let ones = Spectrum::constant(g.clone(), 1.0, UnitRole::Dimensionless).unwrap();
        assert!((ones.integrate() - 300.0).abs() < 1e-9);
        let zeros = Spectrum::constant(g, 0.0, UnitRole::Irradiance).unwrap();
        assert_eq!(zeros.integrate(), 0.0);
        let ramp = Spectrum::from_samples(vec![500.0, 600.0], vec![0.0, 1.0], UnitRole::Dimensionless).unwrap();
        assert_eq!(ramp.integrate(), 50.0);
    }

    #[test]
    fn combine_examples() {
        let a = Spectrum::from_samples(vec![400.0, 500.0], vec![1.0, 2.0], UnitRole::Irradiance).unwrap();
        let ones = Spectrum::constant(a.grid().clone(), 1.0, UnitRole::Dimensionless).unwrap();
        assert_eq!(a.multiply(&ones, UnitRole::Irradiance).unwrap(), a);
        let zero = a.scale(0.0, UnitRole::Irradiance).unwrap();
        assert!(zero.values().iter().all(|&v| v == 0.0));
        let b = Spectrum::from_samples(vec![400.0, 500.0], vec![0.5, 0.25], UnitRole::Dimensionless).unwrap();
        assert_eq!(a.multiply(&b, UnitRole::Irradiance).unwrap().values(), &[0.5, 0.5]);
    }

    #[test]
    fn combine_rejects_flux_products() {
        let a = Spectrum::from_samples(vec![400.0, 500.0], vec![1.0, 2.0], UnitRole::Irradiance).unwrap();
        let b = Spectrum::from_samples(vec![400.0, 500.0], vec![1.0, 2.0], UnitRole::RadiantFlux).unwrap();
        assert_eq!(
            a.multiply(&b, UnitRole::Irradiance),
            Err(SpectralError::FluxProduct(UnitRole::Irradiance, UnitRole::RadiantFlux))
        );
    }

    #[test]
    fn combine_resamples_multiplicand() {
        let a = Spectrum::from_samples(vec![400.0, 450.0, 500.0], vec![2.0, 2.0, 2.0], UnitRole::Irradiance).unwrap();
        let b = Spectrum::from_samples(vec![400.0, 500.0], vec![0.0, 1.0], UnitRole::Dimensionless).unwrap();
        assert_eq!(a.multiply(&b, UnitRole::Irradiance).unwrap().values(), &[0.0, 1.0, 2.0]);
    }

    fn arb_spectrum() -> impl Strategy<Value = Spectrum> {
        (2usize..30, 400.0f64..500.0, 1.0f64..20.0).prop_flat_map(|(n, start, step)| {
            proptest::collection::vec(0.0f64..10.0, n).prop_map(move |values| {
                let g = WavelengthGrid::uniform(start, start + step * (n - 1) as f64, step).unwrap();
                let values = values[..g.len()].to_vec();
                Spectrum::new(g, values, UnitRole::Irradiance).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn integrate_is_linear(s in arb_spectrum(), alpha in 0.0f64..100.0) {
            let scaled = s.scale(alpha, UnitRole::Irradiance).unwrap();
            let lhs = scaled.integrate();
            let rhs = alpha * s.integrate();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300));
        }

        #[test]
        fn resample_idempotent(s in arb_spectrum()) {
            let once = s.resample(s.grid());
            prop_assert_eq!(once.resample(s.grid()), s);
        }

        #[test]
        fn refined_trapezoid_is_exact(s in arb_spectrum()) {
            let pts = s.wavelengths();
            let mut fine = Vec::new();
            for w in pts.windows(2) {
                for k in 0..10 {
                    fine.push(w[0] + (w[1] - w[0]) * k as f64 / 10.0);
                }
            }
            fine.push(*pts.last().unwrap());
            let refined = s.resample(&WavelengthGrid::new(fine).unwrap());
            let a = s.integrate();
            let b = refined.integrate();
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}
