//! Laurent polynomials over `F_p`, used as (truncations of) elements of
//! `F_p((t))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpLaurent {
    p: u64,
    start: i64,
    digits: Vec<u64>,
}

/// Config form: `{"ord": -1, "digits": [1, 0, 2]}` is `t^-1 + 2t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentConfig {
    pub ord: i64,
    pub digits: Vec<u64>,
}

impl FpLaurent {
    pub fn new(p: u64, start: i64, digits: Vec<u64>) -> Self {
        let mut v = FpLaurent {
            p,
            start,
            digits: digits.into_iter().map(|d| d % p).collect(),
        };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        let lead = self.digits.iter().take_while(|d| **d == 0).count();
        if lead == self.digits.len() {
            self.digits.clear();
            self.start = 0;
        } else if lead > 0 {
            self.digits.drain(..lead);
            self.start += lead as i64;
        }
    }

    pub fn zero(p: u64) -> Self {
        FpLaurent {
            p,
            start: 0,
            digits: Vec::new(),
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        FpLaurent::new(p, 0, vec![c])
    }

    /// `c t^k`.
    pub fn monomial(p: u64, c: u64, k: i64) -> Self {
        FpLaurent::new(p, k, vec![c])
    }

    pub fn from_config(p: u64, cfg: &LaurentConfig) -> Self {
        FpLaurent::new(p, cfg.ord, cfg.digits.clone())
    }

    pub fn to_config(&self) -> LaurentConfig {
        LaurentConfig {
            ord: self.start,
            digits: self.digits.clone(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn ord(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// Angular component (leading digit).
    pub fn ac(&self) -> Option<u64> {
        self.digits.first().copied()
    }

    /// Exponent of the highest nonzero term.
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.start + self.digits.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> u64 {
        if k < self.start {
            return 0;
        }
        self.digits
            .get((k - self.start) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Terms with exponent `< hi` only.
    pub fn truncate(&self, hi: i64) -> FpLaurent {
        if hi <= self.start {
            return FpLaurent::zero(self.p);
        }
        let keep = (hi as i128 - self.start as i128).min(self.digits.len() as i128) as usize;
        FpLaurent::new(self.p, self.start, self.digits[..keep].to_vec())
    }

    fn check(&self, o: &FpLaurent) -> Result<()> {
        if self.p != o.p {
            return Err(Error::InvalidInput(format!(
                "series over F_{} and F_{} cannot be combined",
                self.p, o.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &FpLaurent) -> Result<FpLaurent> {
        self.check(o)?;
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.start.min(o.start);
        let hi = self.top().unwrap().max(o.top().unwrap());
        let digits = (lo..=hi)
            .map(|k| (self.coeff(k) + o.coeff(k)) % self.p)
            .collect();
        Ok(FpLaurent::new(self.p, lo, digits))
    }

    pub fn neg(&self) -> FpLaurent {
        FpLaurent::new(
            self.p,
            self.start,
            self.digits.iter().map(|d| (self.p - d) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &FpLaurent) -> Result<FpLaurent> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FpLaurent) -> Result<FpLaurent> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(FpLaurent::zero(self.p));
        }
        let mut digits = vec![0u64; self.digits.len() + o.digits.len() - 1];
        for (i, x) in self.digits.iter().enumerate() {
            for (j, y) in o.digits.iter().enumerate() {
                digits[i + j] = (digits[i + j] + x * y) % self.p;
            }
        }
        Ok(FpLaurent::new(self.p, self.start + o.start, digits))
    }

    pub fn pow(&self, e: u32) -> FpLaurent {
        let mut acc = FpLaurent::constant(self.p, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same prime");
        }
        acc
    }

    pub fn scale(&self, c: u64) -> FpLaurent {
        FpLaurent::new(
            self.p,
            self.start,
            self.digits
                .iter()
                .map(|d| d * (c % self.p) % self.p)
                .collect(),
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> FpLaurent {
        if self.is_zero() {
            return self.clone();
        }
        FpLaurent {
            p: self.p,
            start: self.start + k,
            digits: self.digits.clone(),
        }
    }

    pub fn parse_config_json(p: u64, s: &str) -> Result<FpLaurent> {
        let cfg: LaurentConfig =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(FpLaurent::from_config(p, &cfg))
    }
}

impl fmt::Display for FpLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, d) in self.digits.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let k = self.start + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            parts.push(match (mono.is_empty(), *d) {
                (true, d) => d.to_string(),
                (false, 1) => mono,
                (false, d) => format!("{d}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FpLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpLaurent[F_{}]({self})", self.p)
    }
}
