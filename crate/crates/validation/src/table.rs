//! Tabulated curves with piecewise-linear interpolation.

use std::path::Path;

#[derive(Debug, Clone)]
pub struct Table {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Table {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len());
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        Self { x, y }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![0.0, 1e4], vec![value, value])
    }

    /// Reads a two-column CSV, skipping `#` lines and the header.
    pub fn read_csv(path: &Path) -> Self {
        let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let mut x = Vec::new();
        let mut y = Vec::new();
        for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let mut parts = line.split(',');
            let a: f64 = parts.next().unwrap().trim().parse().unwrap();
            let b: f64 = parts.next().unwrap().trim().parse().unwrap();
            x.push(a);
            y.push(b);
        }
        Self::new(x, y)
    }

    /// Linear interpolation; `outside` is returned beyond the table.
    pub fn at_or(&self, t: f64, outside: Option<f64>) -> f64 {
        let n = self.x.len();
        if t < self.x[0] || t > self.x[n - 1] {
            return outside.unwrap_or(if t < self.x[0] { self.y[0] } else { self.y[n - 1] });
        }
        let k = self.x.partition_point(|&v| v <= t).clamp(1, n - 1);
        let (x0, x1) = (self.x[k - 1], self.x[k]);
        let (y0, y1) = (self.y[k - 1], self.y[k]);
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }

    /// Zero outside the table.
    pub fn at(&self, t: f64) -> f64 {
        self.at_or(t, Some(0.0))
    }

    /// Edge value held outside the table.
    pub fn clamped(&self, t: f64) -> f64 {
        self.at_or(t, None)
    }
}
