//! Harmonic analysis on the function field `F_q(t)` of `P^1` with
//! degree-one places.

pub mod fpoly;
pub mod global;
pub mod place;

pub use fpoly::{FpPoly, RatFn, RatFnConfig};
pub use global::{
    global_fourier, global_inversion_check, poisson_check, BallConfig, FactorConfig, GlobalConfig,
    GlobalSB, InversionReport, PoissonReport,
};
pub use place::{
    form_order, local_expand, local_form, local_pairing, ord_at, residue_theorem_check, residues,
    riemann_roch_basis, Divisor, Place, RRBasis,
};
