//! Clemens complexes of boundary data and the closed-form local zeta
//! functions built from them.

pub mod datum;
pub mod jets;
pub mod local_z;

pub use datum::{clemens, BoundaryDatum, ClemensComplex, Horizontal, StratumEntry, Vertical};
pub use jets::{
    jet_count_oracle, jet_measure, oracle_coefficient, t_exponent, MonomialChart, JET_CAP,
};
pub use local_z::{
    igusa_with_exponential, leading_constant, local_z_grouped, local_z_integral_place,
    local_z_trivial, p_face_at_linv, ExponentialPoles, GroupedZ, IntegralPlace, LeadingConstant,
};
