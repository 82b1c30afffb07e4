//! CIE 1924 photopic luminous efficiency function V(λ), 360–830 nm at 5 nm.

/// First tabulated wavelength [nm].
pub const PHOTOPIC_START_NM: f64 = 360.0;
/// Table spacing [nm].
pub const PHOTOPIC_STEP_NM: f64 = 5.0;

/// Maximum luminous efficacy of radiation for photopic vision [lm/W].
pub const LUMENS_PER_WATT_AT_555: f64 = 683.0;

#[rustfmt::skip]
pub const PHOTOPIC_V: [f64; 95] = [
    3.917000e-06, 6.965000e-06, 1.239000e-05, 2.202000e-05, 3.900000e-05, 6.400000e-05,
    1.200000e-04, 2.170000e-04, 3.960000e-04, 6.400000e-04, 1.210000e-03, 2.180000e-03,
    4.000000e-03, 7.300000e-03, 1.160000e-02, 1.684000e-02, 2.300000e-02, 2.980000e-02,
    3.800000e-02, 4.800000e-02, 6.000000e-02, 7.390000e-02, 9.098000e-02, 1.126000e-01,
    1.390200e-01, 1.693000e-01, 2.080200e-01, 2.586000e-01, 3.230000e-01, 4.073000e-01,
    5.030000e-01, 6.082000e-01, 7.100000e-01, 7.932000e-01, 8.620000e-01, 9.148501e-01,
    9.540000e-01, 9.803000e-01, 9.949501e-01, 1.000000e+00, 9.950000e-01, 9.786000e-01,
    9.520000e-01, 9.154000e-01, 8.700000e-01, 8.163000e-01, 7.570000e-01, 6.949000e-01,
    6.310000e-01, 5.668000e-01, 5.030000e-01, 4.412000e-01, 3.810000e-01, 3.210000e-01,
    2.650000e-01, 2.170000e-01, 1.750000e-01, 1.382000e-01, 1.070000e-01, 8.160000e-02,
    6.100000e-02, 4.458000e-02, 3.200000e-02, 2.320000e-02, 1.700000e-02, 1.192000e-02,
    8.210000e-03, 5.723000e-03, 4.102000e-03, 2.929000e-03, 2.091000e-03, 1.484000e-03,
    1.047000e-03, 7.400000e-04, 5.200000e-04, 3.611000e-04, 2.492000e-04, 1.719000e-04,
    1.200000e-04, 8.480000e-05, 6.000000e-05, 4.240000e-05, 3.000000e-05, 2.120000e-05,
    1.499000e-05, 1.060000e-05, 7.465700e-06, 5.257800e-06, 3.702900e-06, 2.607800e-06,
    1.836600e-06, 1.293400e-06, 9.109300e-07, 6.415300e-07, 4.518100e-07,
];

/// V(λ) by linear interpolation of the 5 nm table; zero outside 360–830 nm.
pub fn photopic(wavelength_nm: f64) -> f64 {
    let pos = (wavelength_nm - PHOTOPIC_START_NM) / PHOTOPIC_STEP_NM;
    if !(0.0..=(PHOTOPIC_V.len() - 1) as f64).contains(&pos) {
        return 0.0;
    }
    let i = pos.floor() as usize;
    if i + 1 >= PHOTOPIC_V.len() {
        return PHOTOPIC_V[PHOTOPIC_V.len() - 1];
    }
    let t = pos - i as f64;
    PHOTOPIC_V[i] + t * (PHOTOPIC_V[i + 1] - PHOTOPIC_V[i])
}
