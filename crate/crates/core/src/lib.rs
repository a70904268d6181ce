//! Exact motivic height-zeta calculus.
//!
//! The crate is organized bottom-up: [`grot_ring`] supplies the coefficient
//! ring, [`rational_series`] rational functions over it, [`local_harmonic`]
//! and [`global_poisson`] finite-field harmonic analysis, [`igusa_clemens`]
//! local zeta functions over boundary data and [`height_zeta`] the end-to-end
//! toy example. [`registry`] exposes the interchangeable algorithms by name.

pub mod error;
pub mod global_poisson;
pub mod grot_ring;
pub mod height_zeta;
pub mod igusa_clemens;
pub mod local_harmonic;
pub mod poly;
pub mod rational_series;
pub mod registry;
pub mod text;

pub use error::{Error, Result};
