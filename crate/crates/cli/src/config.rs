//! Configuration records read from `--config` files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use motzeta::global_poisson::{BallConfig, FactorConfig, Place};
use motzeta::grot_ring::SymbolConfig;
use motzeta::igusa_clemens::BoundaryDatum;
use motzeta::local_harmonic::LaurentConfig;
use motzeta::rational_series::SeriesJson;

use crate::error::CliError;

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config {
        path: path.display().to_string(),
        source: e,
    })
}

/// Input of `series expand | pfrac | taub`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesConfig {
    pub series: SeriesJson,
    #[serde(default)]
    pub symbols: Vec<SymbolConfig>,
    /// Modulus `a` of the pole `1 - L^a T^a`.
    #[serde(default = "one")]
    pub modulus: u32,
    /// Order `d` of that pole.
    #[serde(default = "one")]
    pub order: u32,
    #[serde(default)]
    pub burn_in: Option<usize>,
}

fn one() -> u32 {
    1
}

/// Input of `local fourier | invert`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalConfig {
    pub q: u64,
    #[serde(default = "one")]
    pub n: u32,
    pub level: (i64, i64),
    /// Pairing `res(x y t^{-ν} dt)`; ignored when `form` is given.
    #[serde(default)]
    pub nu: i64,
    /// Explicit form `ω = f dt`, exact.
    #[serde(default)]
    pub form: Option<LaurentConfig>,
    #[serde(default)]
    pub ball: Option<BallConfig>,
    #[serde(default)]
    pub table: Option<Vec<i64>>,
}

impl LocalConfig {
    pub fn factor(&self) -> FactorConfig {
        FactorConfig {
            place: Place::Infinity,
            level: self.level,
            ball: self.ball.clone(),
            table: self.table.clone(),
        }
    }
}

/// Input of `local osc`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscConfig {
    pub q: u64,
    pub m: i64,
    pub d: u32,
    pub a: LaurentConfig,
}

/// Input of `igusa`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IgusaConfig {
    pub datum: BoundaryDatum,
    #[serde(default)]
    pub symbols: Vec<SymbolConfig>,
    /// Polar multiplicities `d_α` of an exponential.
    #[serde(default)]
    pub polar: BTreeMap<String, u32>,
    /// Common multiple of the `ρ_α - 1` for the leading constant.
    #[serde(default)]
    pub a: Option<i64>,
}
