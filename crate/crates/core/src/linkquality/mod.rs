//! Link-quality abstraction: symbol information, effective SINR mapping,
//! AWGN BLER lookup tables and their calibration.

mod calibrate;
mod esm;
mod lut;
mod quadrature;
mod si;

pub use calibrate::{
    calibrate_bler_lut, calibrate_gamma_code, gamma_code_grid, lut_key, predict_curve, CalibrationOptions, EsinrReport,
    LinkAbstraction,
};
pub use esm::{esinr_eesm, esinr_miesm, rbir, GammaCodeMode};
pub use lut::{isotonic_decreasing, max_snr_gap, BlerCurve, BlerLut, LutPoint};
pub use quadrature::gauss_hermite;
pub use si::{compute_si, ln_deficit_with, SiTable, QUADRATURE_NODES, TABLE_MAX_DB, TABLE_MIN_DB, TABLE_STEP_DB};
