//! CIE 1924 photopic V(λ) at 1 nm, 360–830 nm.
//!
//! Kept separate from the engine's 5 nm table so the luminous-flux oracle
//! does not share data or interpolation with the code it checks.

#[rustfmt::skip]
pub const PHOTOPIC_1NM: [f64; 471] = [
    3.917000e-06, 4.393581e-06, 4.929604e-06, 5.532136e-06, 6.208245e-06, 6.965000e-06, 7.813219e-06, 8.767336e-06,
    9.839844e-06, 1.104323e-05, 1.239000e-05, 1.388641e-05, 1.555728e-05, 1.744296e-05, 1.958375e-05, 2.202000e-05,
    2.483965e-05, 2.804126e-05, 3.153104e-05, 3.521521e-05, 3.900000e-05, 4.282640e-05, 4.691460e-05, 5.158960e-05,
    5.717640e-05, 6.400000e-05, 7.234421e-05, 8.221224e-05, 9.350816e-05, 1.061361e-04, 1.200000e-04, 1.349840e-04,
    1.514920e-04, 1.702080e-04, 1.918160e-04, 2.170000e-04, 2.469067e-04, 2.812400e-04, 3.185200e-04, 3.572667e-04,
    3.960000e-04, 4.337147e-04, 4.730240e-04, 5.178760e-04, 5.722187e-04, 6.400000e-04, 7.245600e-04, 8.255000e-04,
    9.411600e-04, 1.069880e-03, 1.210000e-03, 1.362091e-03, 1.530752e-03, 1.720368e-03, 1.935323e-03, 2.180000e-03,
    2.454800e-03, 2.764000e-03, 3.117800e-03, 3.526400e-03, 4.000000e-03, 4.546240e-03, 5.159320e-03, 5.829280e-03,
    6.546160e-03, 7.300000e-03, 8.086507e-03, 8.908720e-03, 9.767680e-03, 1.066443e-02, 1.160000e-02, 1.257317e-02,
    1.358272e-02, 1.462968e-02, 1.571509e-02, 1.684000e-02, 1.800736e-02, 1.921448e-02, 2.045392e-02, 2.171824e-02,
    2.300000e-02, 2.429461e-02, 2.561024e-02, 2.695857e-02, 2.835125e-02, 2.980000e-02, 3.131083e-02, 3.288368e-02,
    3.452112e-02, 3.622571e-02, 3.800000e-02, 3.984667e-02, 4.176800e-02, 4.376600e-02, 4.584267e-02, 4.800000e-02,
    5.024368e-02, 5.257304e-02, 5.498056e-02, 5.745872e-02, 6.000000e-02, 6.260197e-02, 6.527752e-02, 6.804208e-02,
    7.091109e-02, 7.390000e-02, 7.701600e-02, 8.026640e-02, 8.366680e-02, 8.723280e-02, 9.098000e-02, 9.491755e-02,
    9.904584e-02, 1.033674e-01, 1.078846e-01, 1.126000e-01, 1.175320e-01, 1.226744e-01, 1.279928e-01, 1.334528e-01,
    1.390200e-01, 1.446764e-01, 1.504693e-01, 1.564619e-01, 1.627177e-01, 1.693000e-01, 1.762431e-01, 1.835581e-01,
    1.912735e-01, 1.994180e-01, 2.080200e-01, 2.171199e-01, 2.267345e-01, 2.368571e-01, 2.474812e-01, 2.586000e-01,
    2.701849e-01, 2.822939e-01, 2.950505e-01, 3.085780e-01, 3.230000e-01, 3.384021e-01, 3.546858e-01, 3.716986e-01,
    3.892875e-01, 4.073000e-01, 4.256299e-01, 4.443096e-01, 4.633944e-01, 4.829395e-01, 5.030000e-01, 5.235693e-01,
    5.445120e-01, 5.656900e-01, 5.869653e-01, 6.082000e-01, 6.293456e-01, 6.503068e-01, 6.708752e-01, 6.908424e-01,
    7.100000e-01, 7.281852e-01, 7.454636e-01, 7.619694e-01, 7.778368e-01, 7.932000e-01, 8.081104e-01, 8.224962e-01,
    8.363068e-01, 8.494916e-01, 8.620000e-01, 8.738108e-01, 8.849624e-01, 8.954936e-01, 9.054432e-01, 9.148501e-01,
    9.237348e-01, 9.320924e-01, 9.399226e-01, 9.472252e-01, 9.540000e-01, 9.602561e-01, 9.660074e-01, 9.712606e-01,
    9.760225e-01, 9.803000e-01, 9.840924e-01, 9.874182e-01, 9.903128e-01, 9.928116e-01, 9.949501e-01, 9.967108e-01,
    9.980983e-01, 9.991120e-01, 9.997482e-01, 1.000000e+00, 9.998567e-01, 9.993046e-01, 9.983255e-01, 9.968987e-01,
    9.950000e-01, 9.926005e-01, 9.897426e-01, 9.864444e-01, 9.827241e-01, 9.786000e-01, 9.740837e-01, 9.691712e-01,
    9.638568e-01, 9.581349e-01, 9.520000e-01, 9.454504e-01, 9.384992e-01, 9.311628e-01, 9.234576e-01, 9.154000e-01,
    9.070064e-01, 8.982772e-01, 8.892048e-01, 8.797816e-01, 8.700000e-01, 8.598613e-01, 8.493920e-01, 8.386220e-01,
    8.275813e-01, 8.163000e-01, 8.047947e-01, 7.930820e-01, 7.811920e-01, 7.691547e-01, 7.570000e-01, 7.447541e-01,
    7.324224e-01, 7.200036e-01, 7.074965e-01, 6.949000e-01, 6.822192e-01, 6.694716e-01, 6.566744e-01, 6.438448e-01,
    6.310000e-01, 6.181555e-01, 6.053144e-01, 5.924756e-01, 5.796379e-01, 5.668000e-01, 5.539611e-01, 5.411372e-01,
    5.283528e-01, 5.156323e-01, 5.030000e-01, 4.904688e-01, 4.780304e-01, 4.656776e-01, 4.534032e-01, 4.412000e-01,
    4.290800e-01, 4.170360e-01, 4.050320e-01, 3.930320e-01, 3.810000e-01, 3.689184e-01, 3.568272e-01, 3.447768e-01,
    3.328176e-01, 3.210000e-01, 3.093381e-01, 2.978504e-01, 2.865936e-01, 2.756245e-01, 2.650000e-01, 2.547632e-01,
    2.448896e-01, 2.353344e-01, 2.260528e-01, 2.170000e-01, 2.081616e-01, 1.995488e-01, 1.911552e-01, 1.829744e-01,
    1.750000e-01, 1.672235e-01, 1.596464e-01, 1.522776e-01, 1.451259e-01, 1.382000e-01, 1.315003e-01, 1.250248e-01,
    1.187792e-01, 1.127691e-01, 1.070000e-01, 1.014762e-01, 9.618864e-02, 9.112296e-02, 8.626485e-02, 8.160000e-02,
    7.712064e-02, 7.282552e-02, 6.871008e-02, 6.476976e-02, 6.100000e-02, 5.739621e-02, 5.395504e-02, 5.067376e-02,
    4.754965e-02, 4.458000e-02, 4.175872e-02, 3.908496e-02, 3.656384e-02, 3.420048e-02, 3.200000e-02, 2.996261e-02,
    2.807664e-02, 2.632936e-02, 2.470805e-02, 2.320000e-02, 2.180077e-02, 2.050112e-02, 1.928108e-02, 1.812069e-02,
    1.700000e-02, 1.590379e-02, 1.483718e-02, 1.381068e-02, 1.283478e-02, 1.192000e-02, 1.106831e-02, 1.027339e-02,
    9.533311e-03, 8.846157e-03, 8.210000e-03, 7.623781e-03, 7.085424e-03, 6.591476e-03, 6.138485e-03, 5.723000e-03,
    5.343059e-03, 4.995796e-03, 4.676404e-03, 4.380075e-03, 4.102000e-03, 3.838453e-03, 3.589099e-03, 3.354219e-03,
    3.134093e-03, 2.929000e-03, 2.738139e-03, 2.559876e-03, 2.393244e-03, 2.237275e-03, 2.091000e-03, 1.953587e-03,
    1.824580e-03, 1.703580e-03, 1.590187e-03, 1.484000e-03, 1.384496e-03, 1.291268e-03, 1.204092e-03, 1.122744e-03,
    1.047000e-03, 9.765896e-04, 9.111088e-04, 8.501332e-04, 7.932384e-04, 7.400000e-04, 6.900827e-04, 6.433100e-04,
    5.994960e-04, 5.584547e-04, 5.200000e-04, 4.839136e-04, 4.500528e-04, 4.183452e-04, 3.887184e-04, 3.611000e-04,
    3.353835e-04, 3.114404e-04, 2.891656e-04, 2.684539e-04, 2.492000e-04, 2.313019e-04, 2.146856e-04, 1.992884e-04,
    1.850475e-04, 1.719000e-04, 1.597781e-04, 1.486044e-04, 1.383016e-04, 1.287925e-04, 1.200000e-04, 1.118595e-04,
    1.043224e-04, 9.733560e-05, 9.084587e-05, 8.480000e-05, 7.914667e-05, 7.385800e-05, 6.891600e-05, 6.430267e-05,
    6.000000e-05, 5.598187e-05, 5.222560e-05, 4.871840e-05, 4.544747e-05, 4.240000e-05, 3.956104e-05, 3.691512e-05,
    3.444868e-05, 3.214816e-05, 3.000000e-05, 2.799125e-05, 2.611356e-05, 2.436024e-05, 2.272461e-05, 2.120000e-05,
    1.977855e-05, 1.845285e-05, 1.721687e-05, 1.606459e-05, 1.499000e-05, 1.398728e-05, 1.305155e-05, 1.217818e-05,
    1.136254e-05, 1.060000e-05, 9.885877e-06, 9.217304e-06, 8.592362e-06, 8.009133e-06, 7.465700e-06, 6.959567e-06,
    6.487995e-06, 6.048699e-06, 5.639396e-06, 5.257800e-06, 4.901771e-06, 4.569720e-06, 4.260194e-06, 3.971739e-06,
    3.702900e-06, 3.452163e-06, 3.218302e-06, 3.000300e-06, 2.797139e-06, 2.607800e-06, 2.431220e-06, 2.266531e-06,
    2.113013e-06, 1.969943e-06, 1.836600e-06, 1.712230e-06, 1.596228e-06, 1.488090e-06, 1.387314e-06, 1.293400e-06,
    1.205820e-06, 1.124143e-06, 1.048009e-06, 9.770578e-07, 9.109300e-07, 8.492513e-07, 7.917212e-07, 7.380904e-07,
    6.881098e-07, 6.415300e-07, 5.980895e-07, 5.575746e-07, 5.198080e-07, 4.846123e-07, 4.518100e-07,
];

/// Photopic efficiency at an integer-or-fractional wavelength, zero outside the table.
pub fn photopic_1nm(wavelength_nm: f64) -> f64 {
    let pos = wavelength_nm - 360.0;
    if !(0.0..=470.0).contains(&pos) {
        return 0.0;
    }
    let i = (pos.floor() as usize).min(469);
    let t = pos - i as f64;
    PHOTOPIC_1NM[i] * (1.0 - t) + PHOTOPIC_1NM[i + 1] * t
}
