//! Fine-grid quadrature of the photon-counting and luminous-flux integrals.

use crate::photopic_1nm::photopic_1nm;
use crate::{C, H};

/// Composite trapezoid rule over [a, b] with the given step.
pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, step: f64) -> f64 {
    let n = ((b - a) / step).round() as usize;
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + i as f64 * h);
    }
    sum * h
}

/// Mean electrons for sensor-plane irradiance `e` [W/(m²·nm)] and quantum
/// efficiency `qe`, integrated over [a, b] nm.
#[allow(clippy::too_many_arguments)]
pub fn electrons(
    e: impl Fn(f64) -> f64,
    qe: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    step: f64,
    pixel_area_m2: f64,
    exposure_s: f64,
) -> f64 {
    let photons_per_joule = |nm: f64| nm * 1e-9 / (H * C);
    pixel_area_m2 * exposure_s * trapezoid(|nm| e(nm) * qe(nm) * photons_per_joule(nm), a, b, step)
}

/// Radiant watts of a light with `lumens` and relative spectral shape `shape`.
pub fn lumens_to_watts(lumens: f64, shape: impl Fn(f64) -> f64, a: f64, b: f64, step: f64) -> f64 {
    let power = trapezoid(&shape, a, b, step);
    let luminous = 683.0 * trapezoid(|nm| shape(nm) * photopic_1nm(nm), a, b, step);
    lumens * power / luminous
}
