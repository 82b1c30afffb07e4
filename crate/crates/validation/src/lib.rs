//! Independent numerical oracles.
//!
//! Everything here is written from the defining physics without calling the
//! engine, so the tests that compare the two catch errors in either.

pub mod chain;
pub mod dof;
pub mod dome;
pub mod photopic_1nm;
pub mod quadrature;
pub mod snr;
pub mod table;

/// Planck constant [J·s].
pub const H: f64 = 6.626_070_15e-34;
/// Speed of light [m/s].
pub const C: f64 = 299_792_458.0;
