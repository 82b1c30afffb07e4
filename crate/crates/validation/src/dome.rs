//! Paraxial y-nu ray trace through a concentric dome.
//!
//! Light travels from the water through the outer glass surface, across
//! the shell and out of the inner surface into air. Both centres of
//! curvature lie on the camera side, so both radii are positive.

/// Distance [m] in front of the outer surface at which an axial ray from
/// infinity appears to come from; +∞ when it leaves parallel.
pub fn virtual_image_distance(inner_mm: f64, outer_mm: f64, glass: f64, water: f64) -> f64 {
    let surfaces = [(outer_mm, water, glass), (inner_mm, glass, 1.0)];
    let gaps = [outer_mm - inner_mm];
    let mut y = 1.0;
    let mut nu = 0.0;
    let mut position = 0.0;
    for (k, &(radius, n_before, n_after)) in surfaces.iter().enumerate() {
        let power = (n_after - n_before) / radius;
        nu -= y * power;
        if let Some(&gap) = gaps.get(k) {
            y += nu / n_after * gap;
            position += gap;
        }
    }
    let u = nu;
    if u == 0.0 {
        return f64::INFINITY;
    }
    let crossing = position - y / u;
    -crossing * 1e-3
}
