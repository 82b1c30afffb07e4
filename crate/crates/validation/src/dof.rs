//! Depth of field from the object-space blur-cone construction.
//!
//! A point at distance x, imaged by a lens focused at s with entrance pupil
//! D = f/N, spreads into a disc of diameter D·|x − s|/x on the focus plane.
//! The acceptable disc there is the sensor's circle of confusion projected
//! through the magnification f/s. The near and far limits are the two
//! distances where the disc reaches that size, found by bisection.

/// (near, far) limits in mm; `far` is +∞ when the blur never reaches the limit.
pub fn limits(n: f64, c: f64, f: f64, s: f64) -> (f64, f64) {
    let pupil = f / n;
    let allowed = c * s / f;
    let blur = |x: f64| pupil * (x - s).abs() / x;

    let mut lo = 1e-9 * s;
    let mut hi = s;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if blur(mid) > allowed {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let near = 0.5 * (lo + hi);

    // Beyond the focus plane the disc approaches `pupil` as x → ∞.
    if pupil <= allowed {
        return (near, f64::INFINITY);
    }
    let mut lo = s;
    let mut hi = 2.0 * s;
    while blur(hi) < allowed {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if blur(mid) < allowed {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (near, 0.5 * (lo + hi))
}

pub fn depth_of_field(n: f64, c: f64, f: f64, s: f64) -> f64 {
    let (near, far) = limits(n, c, f, s);
    far - near
}
