//! Jet counting over `F_q` on monomial charts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::datum::{BoundaryDatum, Horizontal, StratumEntry, Vertical};
use crate::error::{Error, Result};
use crate::grot_ring::MotClass;

pub const JET_CAP: u128 = 1_000_000;

/// `A^n` with `D_α = {x_α = 0}` for the first `rho.len()` coordinates and a
/// single reduced vertical component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialChart {
    pub n: usize,
    pub rho: Vec<i64>,
    #[serde(default)]
    pub rho_beta: i64,
    /// `e_{α,β}`; empty means all zero.
    #[serde(default)]
    pub e: Vec<i64>,
}

impl MonomialChart {
    pub fn k(&self) -> usize {
        self.rho.len()
    }

    fn e_vec(&self) -> Vec<i64> {
        if self.e.is_empty() {
            vec![0; self.k()]
        } else {
            self.e.clone()
        }
    }

    fn check(&self) -> Result<()> {
        if self.k() > self.n {
            return Err(Error::InvalidInput(format!(
                "{} boundary coordinates in A^{}",
                self.k(),
                self.n
            )));
        }
        if !self.e.is_empty() && self.e.len() != self.k() {
            return Err(Error::InvalidInput(
                "e must have one entry per boundary coordinate".into(),
            ));
        }
        Ok(())
    }

    /// The boundary datum of the chart: `Δ(A) = (L-1)^{k-|A|} L^{n-k}`.
    pub fn to_datum(&self) -> Result<BoundaryDatum> {
        self.check()?;
        let k = self.k();
        let names: Vec<String> = (0..k).map(|i| format!("x{i}")).collect();
        let lm1 = MotClass::l() + MotClass::integer(-1);
        let strata = (0u32..1 << k)
            .map(|mask| {
                let a: Vec<String> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| names[i].clone())
                    .collect();
                let class = lm1
                    .pow_u((k - a.len()) as u32)
                    .mul_l_pow((self.n - k) as i64);
                StratumEntry { a, class }
            })
            .collect();
        let e: BTreeMap<String, i64> = names
            .iter()
            .cloned()
            .zip(self.e_vec())
            .filter(|(_, v)| *v != 0)
            .collect();
        Ok(BoundaryDatum {
            n: self.n as i64,
            horizontal: names
                .iter()
                .zip(&self.rho)
                .map(|(name, rho)| Horizontal {
                    name: name.clone(),
                    rho: *rho,
                })
                .collect(),
            vertical: vec![Vertical {
                name: "E".into(),
                mu: 1,
                rho: self.rho_beta,
                e,
                strata,
            }],
            integral: Vec::new(),
        })
    }
}

/// Proportion of jets `F_q[t]/t^{level+1}` in `n` coordinates whose
/// coordinate `i` has order exactly `ords[i]` (unconstrained when `None`).
pub fn jet_measure(n: usize, ords: &[Option<u32>], level: u32, q: u64) -> Result<BigRational> {
    if ords.len() > n {
        return Err(Error::InvalidInput(
            "more order constraints than coordinates".into(),
        ));
    }
    if let Some(m) = ords.iter().flatten().find(|m| **m > level) {
        return Err(Error::InsufficientDepth {
            what: "jet level".into(),
            required: *m as i64,
            given: level as i64,
        });
    }
    let digits = n as u32 * (level + 1);
    let total = (q as u128)
        .checked_pow(digits)
        .filter(|t| *t <= JET_CAP)
        .ok_or(Error::CapExceeded {
            what: "jet tuples".into(),
            needed: (q as f64).powi(digits as i32).min(u128::MAX as f64) as u128,
            cap: JET_CAP,
        })? as u64;
    let per = (level + 1) as usize;
    let hits: u64 = (0..total)
        .into_par_iter()
        .filter(|idx| {
            let mut rest = *idx;
            ords.iter().all(|want| {
                // coefficients of one coordinate, low order first
                let mut ord = None;
                for j in 0..per {
                    let c = rest % q;
                    rest /= q;
                    if c != 0 && ord.is_none() {
                        ord = Some(j as u32);
                    }
                }
                want.map_or(true, |w| ord == Some(w))
            })
        })
        .count() as u64;
    Ok(BigRational::new(
        BigInt::from(hits),
        BigInt::from(q).pow(digits),
    ))
}

/// `q^{ρ_β + Σ ρ_α m_α} · μ{ord x_α = m_α}` at the given jet level: the
/// contribution of the arcs with `ord x = m` to the coefficient at `T^{m+e}`.
pub fn jet_count_oracle(
    chart: &MonomialChart,
    m: &[u32],
    level: u32,
    q: u64,
) -> Result<BigRational> {
    chart.check()?;
    if m.len() != chart.k() {
        return Err(Error::InvalidInput(
            "one order per boundary coordinate".into(),
        ));
    }
    let ords: Vec<Option<u32>> = m.iter().map(|x| Some(*x)).collect();
    let measure = jet_measure(chart.n, &ords, level, q)?;
    let exp: i64 = chart.rho_beta
        + chart
            .rho
            .iter()
            .zip(m)
            .map(|(r, x)| r * *x as i64)
            .sum::<i64>();
    Ok(measure * q_pow(q, exp))
}

/// The oracle at the level `Σ m + 1`, where it is exact.
pub fn oracle_coefficient(chart: &MonomialChart, m: &[u32], q: u64) -> Result<BigRational> {
    jet_count_oracle(chart, m, m.iter().sum::<u32>() + 1, q)
}

/// Exponent of `T` carrying the arcs with `ord x = m`.
pub fn t_exponent(chart: &MonomialChart, m: &[u32]) -> Vec<i64> {
    chart
        .e_vec()
        .iter()
        .zip(m)
        .map(|(e, x)| e + *x as i64)
        .collect()
}

fn q_pow(q: u64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(q)).pow(e.unsigned_abs() as u32);
    if e < 0 {
        b.recip()
    } else if e == 0 {
        BigRational::one()
    } else {
        b
    }
}
