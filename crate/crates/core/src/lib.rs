//! Spectral image-formation model for underwater camera systems.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod engine;
pub mod mission;
pub mod optics;
pub mod photopic;
pub mod presets;
pub mod propagation;
pub mod report;
pub mod scenario;
pub mod sensor;
pub mod spectral;
