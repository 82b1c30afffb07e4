//! Monte Carlo estimate of a pixel's signal-to-noise ratio.

use rand::{rngs::StdRng, SeedableRng};
use rand_distr::{Distribution, Normal, Poisson};

pub struct PixelNoise {
    /// Mean photo-electrons η·μ_p.
    pub mean_electrons: f64,
    /// Dark noise standard deviation [e⁻].
    pub dark_sigma_e: f64,
    /// System gain K [DN/e⁻].
    pub gain: f64,
    /// Dark offset [DN].
    pub dark_dn: f64,
}

/// Simulates `trials` exposures: Poisson photo-electrons, Gaussian dark
/// noise, then rounding to whole DN. Returns (μ_y − μ_dark)/σ_y.
pub fn simulate(p: &PixelNoise, trials: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let shot = Poisson::new(p.mean_electrons).expect("positive mean");
    let dark = Normal::new(0.0, p.dark_sigma_e).expect("finite sigma");
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let e: f64 = shot.sample(&mut rng);
        let d: f64 = dark.sample(&mut rng);
        let y = (p.dark_dn + p.gain * (e + d)).round();
        sum += y;
        sum_sq += y * y;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = (sum_sq - n * mean * mean) / (n - 1.0);
    (mean - p.dark_dn) / var.sqrt()
}
