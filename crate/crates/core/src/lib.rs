//! Exact construction and verification of wavelets for the Hardy space H²(ℝ).
//!
//! Frequencies are rational multiples of π ([`PiScalar`]), sets are canonical
//! unions of half-open intervals ([`IntervalSet`]), and wavelet transforms are
//! step functions with amplitudes in ℚ(√2) ([`StepFunction`]). With those, the
//! wavelet-set tiling test and both characterizing equations are decided
//! exactly; [`numeric`] adds a floating-point Gram-matrix check on top.

pub mod characterize;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod interval_set;
pub mod io;
pub mod numeric;
pub mod step_wavelet;
pub mod tiling;

pub use characterize::{
    classify, is_msf, rho, t_q, verify_wavelet, ClassLabel, PiecewiseQ2, WaveletVerdict,
};
pub use constructions::{
    make_k_r, make_k_r_eps, make_k_rk, make_k_xy, shannon_set, KrEpsilonBuild, KrSet,
};
pub use error::{Error, Result};
pub use exact::{PiScalar, Q2};
pub use interval_set::{Interval, IntervalSet};
pub use numeric::{gram, inner_product, origin_probe, sample_time, GramReport};
pub use step_wavelet::{
    indicator_wavelet, make_psi_0, make_psi_r, support_profile, support_shift_table, StepFunction,
    SupportProfile,
};
pub use tiling::{
    d_profile, dilation_equivalent, is_wavelet_set, tau_profile, translation_equivalent,
    TilingReport,
};
