//! Residue pairings `r(x) = res(x ω)` for `ω = f dt`.

use super::fplaurent::FpLaurent;
use crate::error::{Error, Result};

/// The linear form `r(x) = res_{t=0}(x f dt) = Σ_k x_k f_{-1-k}` on
/// `F_p((t))`.
///
/// `f` may be a truncation: its coefficients are exact below `known_below`.
/// The conductor is `ν = -ord f`, so `r` vanishes on `t^ν R` but not on
/// `t^{ν-1} R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePairing {
    f: FpLaurent,
    known_below: i64,
}

impl ResiduePairing {
    pub fn new(f: FpLaurent, known_below: i64) -> Result<Self> {
        let ord = f
            .ord()
            .ok_or_else(|| Error::InvalidInput("the form ω must be nonzero".into()))?;
        if known_below <= ord {
            return Err(Error::InvalidInput(format!(
                "form known only below t^{known_below}, leading term t^{ord} not covered"
            )));
        }
        Ok(ResiduePairing {
            f: f.truncate(known_below),
            known_below,
        })
    }

    /// `ω = f dt` with `f` a Laurent polynomial known exactly.
    pub fn exact(f: FpLaurent) -> Result<Self> {
        ResiduePairing::new(f, i64::MAX)
    }

    /// `ω = t^{-ν} dt`.
    pub fn monomial(q: u64, nu: i64) -> Self {
        ResiduePairing::exact(FpLaurent::monomial(q, 1, -nu)).expect("nonzero form")
    }

    /// `ω = dt`, conductor 0.
    pub fn dt(q: u64) -> Self {
        ResiduePairing::monomial(q, 0)
    }

    /// `ω = dt/t`, so `r(a) = a_0`.
    pub fn dt_over_t(q: u64) -> Self {
        ResiduePairing::monomial(q, 1)
    }

    pub fn q(&self) -> u64 {
        self.f.p()
    }

    pub fn conductor(&self) -> i64 {
        -self.f.ord().expect("nonzero form")
    }

    pub fn form(&self) -> &FpLaurent {
        &self.f
    }

    pub fn known_below(&self) -> i64 {
        self.known_below
    }

    /// `f_k`, or an error if the truncation does not reach `k`.
    pub fn coeff(&self, k: i64) -> Result<u64> {
        if k >= self.known_below {
            return Err(Error::InsufficientDepth {
                what: "pairing form expansion".into(),
                required: k + 1,
                given: self.known_below,
            });
        }
        Ok(self.f.coeff(k))
    }

    pub fn r(&self, x: &FpLaurent) -> Result<u64> {
        let p = self.q();
        let Some(lo) = x.ord() else { return Ok(0) };
        let hi = x.top().unwrap().min(self.conductor() - 1);
        let mut acc = 0u64;
        for k in lo..=hi {
            let xk = x.coeff(k);
            if xk != 0 {
                acc = (acc + xk * self.coeff(-1 - k)?) % p;
            }
        }
        Ok(acc)
    }
}
