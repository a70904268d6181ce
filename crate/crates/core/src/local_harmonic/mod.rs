//! Local harmonic analysis on `F_q((t))^n` for prime `q`, with character
//! `ψ(u) = ζ_q^u` and exact values in `Z[ζ_q][1/q]`.

pub mod cyc;
pub mod fourier;
pub mod fplaurent;
pub mod osc;
pub mod pairing;
pub mod window;

pub use cyc::CycValue;
pub use fourier::{
    dual_window, fourier, fourier_at, fourier_into, inversion_check, Direct, FourierKernel,
    Separable,
};
pub use fplaurent::{FpLaurent, LaurentConfig};
pub use osc::{
    exp_sum_linear, is_dth_power, oscillatory_brute, oscillatory_closed, oscillatory_closed_at_q,
    required_depth, scaling_check, shell_integral_brute, shell_vanishing_check, BruteOsc,
    ClosedOsc, OscClosed, OscillatoryMethod, OSC_CAP,
};
pub use pairing::ResiduePairing;
pub use window::{LocalWindow, SBLocal, WINDOW_CAP};
