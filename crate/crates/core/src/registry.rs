//! Named algorithm variants selected at runtime.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::height_zeta::{BruteCounter, PoissonCounter, SectionCounter, SymbolicCounter};
use crate::local_harmonic::{
    BruteOsc, ClosedOsc, Direct, FourierKernel, OscillatoryMethod, Separable,
};
use crate::rational_series::{ClosedForm, ResultantMethod, SylvesterDeterminant};

/// Strategies of one family, keyed by name.
pub struct Registry<T: ?Sized> {
    family: &'static str,
    default: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(family: &'static str, default: &'static str) -> Self {
        Registry {
            family,
            default,
            entries: BTreeMap::new(),
        }
    }

    /// Adds a strategy; a later registration under the same name replaces
    /// the earlier one.
    pub fn register(&mut self, name: &'static str, s: Box<T>) -> &mut Self {
        self.entries.insert(name, s);
        self
    }

    pub fn family(&self) -> &'static str {
        self.family
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                family: self.family,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    /// The named strategy, or the family default for `None`.
    pub fn select(&self, name: Option<&str>) -> Result<&T> {
        self.get(name.unwrap_or(self.default))
    }
}

pub fn fourier_kernels() -> Registry<dyn FourierKernel> {
    let mut r: Registry<dyn FourierKernel> = Registry::new("fourier kernel", "separable");
    for k in [
        Box::new(Separable) as Box<dyn FourierKernel>,
        Box::new(Direct),
    ] {
        r.register(k.name(), k);
    }
    r
}

pub fn resultant_methods() -> Registry<dyn ResultantMethod> {
    let mut r: Registry<dyn ResultantMethod> = Registry::new("resultant method", "closed");
    for k in [
        Box::new(ClosedForm) as Box<dyn ResultantMethod>,
        Box::new(SylvesterDeterminant),
    ] {
        r.register(k.name(), k);
    }
    r
}

pub fn oscillatory_methods() -> Registry<dyn OscillatoryMethod> {
    let mut r: Registry<dyn OscillatoryMethod> = Registry::new("oscillatory integral", "closed");
    for k in [
        Box::new(ClosedOsc) as Box<dyn OscillatoryMethod>,
        Box::new(BruteOsc),
    ] {
        r.register(k.name(), k);
    }
    r
}

pub fn section_counters() -> Registry<dyn SectionCounter> {
    let mut r: Registry<dyn SectionCounter> = Registry::new("section counter", "poisson");
    for k in [
        Box::new(PoissonCounter) as Box<dyn SectionCounter>,
        Box::new(BruteCounter),
        Box::new(SymbolicCounter),
    ] {
        r.register(k.name(), k);
    }
    r
}
