//! Laurent polynomials and rational series in `T`-variables over classes:
//! expansion, resultants, partial fractions, evaluation at `T = L^{-1}` and
//! the tauberian asymptotics of coefficients.

mod laurent;
mod motpoly;
mod pfrac;
mod resultant;
mod series;
mod tauber;

pub use laurent::LaurentPolyMot;
pub use motpoly::MotPoly;
pub use pfrac::{partial_fractions, FactorShape, PartialFractions};
pub use resultant::{
    proportional, resultant_closed_form, resultant_sylvester, ClosedForm, ResultantMethod,
    SylvesterDeterminant,
};
pub use series::{DenomFactor, RationalMotSeries, SeriesJson};
pub use tauber::{tauberian_report, CaseTag, ClassReport, TauberConfig, TauberianReport};
