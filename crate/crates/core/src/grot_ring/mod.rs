//! Exact arithmetic in the localized ring generated by `L`, with Poincaré
//! and point-count realizations.

mod class;
pub mod cyclotomic;
mod effective;
mod realize;
mod symbols;

pub use class::{ClassEvaluator, MotClass, SymbolMonomial};
pub use effective::{effectivity_certificate, Certificate};
pub use realize::{count_realize, dim_nu, poincare, DimNu, PoincareSeries};
pub use symbols::{parse_t_poly, StratumSymbol, SymbolConfig, SymbolRegistry};
