//! Registered data for opaque stratum symbols.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::text::{self, Evaluator};

/// A stratum class known only through its realizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSymbol {
    pub name: String,
    pub dim: i64,
    /// Poincaré polynomial in `t`, of degree `2·dim`.
    pub poincare: ZPoly,
    /// Point counts over `F_q`, keyed by `q`.
    pub counts: BTreeMap<u64, u64>,
    /// Declared to be the class of a variety (used by the effectivity check).
    pub effective: bool,
}

impl StratumSymbol {
    pub fn new(name: &str, dim: i64, poincare: ZPoly) -> Result<Self> {
        let s = StratumSymbol {
            name: name.to_string(),
            dim,
            poincare,
            counts: BTreeMap::new(),
            effective: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_count(mut self, q: u64, n: u64) -> Self {
        self.counts.insert(q, n);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['[', ']']) {
            return Err(Error::InvalidInput(format!(
                "bad symbol name `{}`",
                self.name
            )));
        }
        let ok_degree = self.dim >= 0 && self.poincare.degree() == Some(2 * self.dim as usize);
        let positive = self
            .poincare
            .leading()
            .is_some_and(|c| *c > BigInt::from(0));
        if !ok_degree || !positive {
            return Err(Error::InvalidInput(format!(
                "symbol `{}`: Poincaré polynomial must have degree 2·dim = {} and positive leading coefficient",
                self.name,
                2 * self.dim
            )));
        }
        Ok(())
    }
}

/// Symbol table passed explicitly to realizations.
#[derive(Clone, Debug, Default)]
pub struct SymbolRegistry {
    symbols: BTreeMap<String, StratumSymbol>,
}

impl SymbolRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, s: StratumSymbol) -> Result<()> {
        s.validate()?;
        self.symbols.insert(s.name.clone(), s);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&StratumSymbol> {
        self.symbols
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &StratumSymbol> {
        self.symbols.values()
    }

    pub fn from_configs(cfgs: &[SymbolConfig]) -> Result<Self> {
        let mut reg = SymbolRegistry::new();
        for c in cfgs {
            reg.register(c.to_symbol()?)?;
        }
        Ok(reg)
    }
}

/// Serialized form: `{"name": "D", "dim": 1, "poincare": "t^2 + 1",
/// "counts": {"3": 4}, "effective": true}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub name: String,
    pub dim: i64,
    pub poincare: String,
    #[serde(default)]
    pub counts: BTreeMap<u64, u64>,
    #[serde(default = "yes")]
    pub effective: bool,
}

fn yes() -> bool {
    true
}

impl SymbolConfig {
    pub fn to_symbol(&self) -> Result<StratumSymbol> {
        let poincare = parse_t_poly(&self.poincare)?;
        let s = StratumSymbol {
            name: self.name.clone(),
            dim: self.dim,
            poincare,
            counts: self.counts.clone(),
            effective: self.effective,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_symbol(s: &StratumSymbol) -> Self {
        SymbolConfig {
            name: s.name.clone(),
            dim: s.dim,
            poincare: s.poincare.render("t"),
            counts: s.counts.clone(),
            effective: s.effective,
        }
    }
}

/// Parses an integer polynomial in `t`.
pub fn parse_t_poly(s: &str) -> Result<ZPoly> {
    text::parse(s)?.eval(&TPolyEvaluator)
}

struct TPolyEvaluator;

impl Evaluator for TPolyEvaluator {
    type Value = ZPoly;
    fn int(&self, n: &BigInt) -> Result<ZPoly> {
        Ok(ZPoly::constant(n.clone()))
    }
    fn var(&self, name: &str) -> Result<ZPoly> {
        if name == "t" {
            Ok(ZPoly::monomial(1, 1))
        } else {
            Err(Error::InvalidInput(format!(
                "unknown variable `{name}` in polynomial in t"
            )))
        }
    }
    fn sym(&self, name: &str) -> Result<ZPoly> {
        Err(Error::InvalidInput(format!(
            "symbol [{name}] not allowed here"
        )))
    }
    fn add(&self, a: ZPoly, b: ZPoly) -> Result<ZPoly> {
        Ok(a + b)
    }
    fn sub(&self, a: ZPoly, b: ZPoly) -> Result<ZPoly> {
        Ok(a - b)
    }
    fn mul(&self, a: ZPoly, b: ZPoly) -> Result<ZPoly> {
        Ok(a * b)
    }
    fn div(&self, a: ZPoly, b: ZPoly) -> Result<ZPoly> {
        a.div_exact(&b)
            .ok_or_else(|| Error::InvalidInput("inexact polynomial division".into()))
    }
    fn neg(&self, a: ZPoly) -> Result<ZPoly> {
        Ok(-a)
    }
    fn pow(&self, a: ZPoly, e: i64) -> Result<ZPoly> {
        let e = u32::try_from(e)
            .map_err(|_| Error::InvalidInput("negative power in polynomial".into()))?;
        Ok(a.pow(e))
    }
}
