//! Dense single-variable polynomials with class coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::grot_ring::MotClass;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MotPoly {
    coeffs: Vec<MotClass>,
}

impl MotPoly {
    pub fn new(mut coeffs: Vec<MotClass>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MotPoly { coeffs }
    }

    pub fn zero() -> Self {
        MotPoly::default()
    }

    pub fn one() -> Self {
        MotPoly::new(vec![MotClass::one()])
    }

    /// `1 - L^a T^b`.
    pub fn factor(a: i64, b: usize) -> Self {
        let mut c = vec![MotClass::zero(); b + 1];
        c[0] = MotClass::one();
        c[b] = &c[b] - &MotClass::l_pow(a);
        MotPoly::new(c)
    }

    pub fn coeffs(&self) -> &[MotClass] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> MotClass {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &MotPoly) -> MotPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        MotPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &MotPoly) -> MotPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        MotPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &MotPoly) -> MotPoly {
        if self.is_zero() || o.is_zero() {
            return MotPoly::zero();
        }
        let mut c = vec![MotClass::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        MotPoly::new(c)
    }

    pub fn scale(&self, s: &MotClass) -> MotPoly {
        MotPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow_u(&self, n: u32) -> MotPoly {
        (0..n).fold(MotPoly::one(), |acc, _| acc.mul(self))
    }

    /// Division with remainder by a polynomial whose leading coefficient is a
    /// unit.
    pub fn div_rem(&self, d: &MotPoly) -> Result<(MotPoly, MotPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((MotPoly::zero(), self.clone()));
        }
        let mut quot = vec![MotClass::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&q * dc);
            }
            quot[k] = q;
        }
        Ok((MotPoly::new(quot), MotPoly::new(rem)))
    }

    pub fn rem(&self, d: &MotPoly) -> Result<MotPoly> {
        Ok(self.div_rem(d)?.1)
    }
}

impl fmt::Debug for MotPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*T^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
