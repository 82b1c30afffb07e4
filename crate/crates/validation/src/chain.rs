//! Straight-line image-formation chain evaluated at 1 nm.

use std::f64::consts::PI;

use crate::photopic_1nm::photopic_1nm;
use crate::quadrature::{electrons, trapezoid};
use crate::table::Table;

pub struct ChainInputs {
    pub lumens: f64,
    pub beam_half_angle_rad: f64,
    pub light: Table,
    pub water_b: Table,
    pub reflectance: Table,
    pub transmission: Table,
    pub qe: Table,
    pub light_path_m: f64,
    pub return_path_m: f64,
    pub incident_angle_rad: f64,
    pub aperture_number_effective: f64,
    pub field_angle_rad: f64,
    pub pixel_area_m2: f64,
    pub exposure_s: f64,
    pub system_gain: f64,
    pub gain_db: f64,
    pub dark_dn: f64,
    /// Integration limits [nm].
    pub band: (f64, f64),
}

pub struct ChainOutput {
    pub electrons: f64,
    pub digital_value: f64,
}

pub fn run(inp: &ChainInputs, step_nm: f64) -> ChainOutput {
    let (a, b) = inp.band;
    let luminous_per_unit = 683.0 * trapezoid(|nm| inp.light.at(nm) * photopic_1nm(nm), a, b, step_nm);
    let watts_per_nm = |nm: f64| inp.lumens * inp.light.at(nm) / luminous_per_unit;
    let omega = 2.0 * PI * (1.0 - inp.beam_half_angle_rad.cos());
    let d1 = inp.light_path_m;
    let d2 = inp.return_path_m;
    let sensor_irradiance = |nm: f64| {
        let e_target = watts_per_nm(nm) / (omega * d1 * d1) * (-inp.water_b.clamped(nm) * d1).exp();
        let radiance = e_target * inp.reflectance.clamped(nm) / PI * inp.incident_angle_rad.cos();
        let at_lens = radiance * (-inp.water_b.clamped(nm) * d2).exp();
        let n = inp.aperture_number_effective;
        at_lens * PI / 4.0 / (n * n) * inp.field_angle_rad.cos().powi(4) * inp.transmission.clamped(nm)
    };
    let mu_e = electrons(
        sensor_irradiance,
        |nm| inp.qe.clamped(nm),
        a,
        b,
        step_nm,
        inp.pixel_area_m2,
        inp.exposure_s,
    );
    ChainOutput {
        electrons: mu_e,
        digital_value: inp.dark_dn + inp.system_gain * 10f64.powf(inp.gain_db / 20.0) * mu_e,
    }
}
