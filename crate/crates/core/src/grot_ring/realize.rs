//! Poincaré-series and point-count realizations, and the dimension/leading
//! coefficient read off the Poincaré series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::class::{MotClass, SymbolMonomial};
use super::cyclotomic::cyclotomic;
use super::symbols::SymbolRegistry;
use crate::error::{Error, Result};
use crate::poly::ZPoly;

/// A Laurent series in `t^-1` with finitely many positive powers, known
/// exactly at exponents `>= floor`.
#[derive(Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    floor: i64,
    coeffs: BTreeMap<i64, BigInt>,
}

impl PoincareSeries {
    pub fn new(floor: i64, coeffs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| *e >= floor && !c.is_zero())
            .collect();
        PoincareSeries { floor, coeffs }
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Re-truncate at a higher floor.
    pub fn truncate(&self, floor: i64) -> Self {
        PoincareSeries::new(floor.max(self.floor), self.coeffs.clone())
    }

    /// Highest exponent at which the unknown tail could be nonzero, shifted
    /// by one: every coefficient at or below `floor - 1` is unknown.
    fn reach(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1).max(self.floor - 1)
    }
}

impl Add<&PoincareSeries> for &PoincareSeries {
    type Output = PoincareSeries;
    fn add(self, rhs: &PoincareSeries) -> PoincareSeries {
        let mut m = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            *m.entry(*e).or_default() += c;
        }
        PoincareSeries::new(self.floor.max(rhs.floor), m)
    }
}

impl Mul<&PoincareSeries> for &PoincareSeries {
    type Output = PoincareSeries;
    fn mul(self, rhs: &PoincareSeries) -> PoincareSeries {
        let floor = (self.floor + rhs.reach()).max(rhs.floor + self.reach());
        let mut m: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in rhs.coeffs.range(floor - ea..) {
                *m.entry(ea + eb).or_default() += ca * cb;
            }
        }
        PoincareSeries::new(floor, m)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if *c < BigInt::zero() { "-" } else { "+" };
            let abs = if *c < BigInt::zero() {
                -c.clone()
            } else {
                c.clone()
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (_, true) => write!(f, "t^{e}")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, false) => write!(f, "{abs}*t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.floor - 1)
    }
}

impl fmt::Debug for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn monomial_poincare(m: &SymbolMonomial, reg: &SymbolRegistry) -> Result<ZPoly> {
    let mut acc = ZPoly::one();
    for (name, e) in m.factors() {
        acc = &acc * &reg.get(name)?.poincare.pow(*e);
    }
    Ok(acc)
}

/// Numerator `Σ_m PC(m)·N_m(t²)` and cyclotomic denominator `∏ Φ_d(t²)^k`.
fn pc_fraction(x: &MotClass, reg: &SymbolRegistry) -> Result<(ZPoly, ZPoly)> {
    let mut num = ZPoly::zero();
    for (m, p) in x.terms() {
        num = &num + &(&monomial_poincare(m, reg)? * &p.stretch(2));
    }
    let den = x
        .cyclotomic_denominator()
        .iter()
        .fold(ZPoly::one(), |acc, (d, k)| {
            &acc * &cyclotomic(*d).stretch(2).pow(*k)
        });
    Ok((num, den))
}

/// Poincaré realization `L ↦ t²`, exact down to `t^{-2K}`.
pub fn poincare(x: &MotClass, precision: u32, reg: &SymbolRegistry) -> Result<PoincareSeries> {
    let floor = -2 * precision as i64;
    let (num, den) = pc_fraction(x, reg)?;
    let Some(num_deg) = num.degree() else {
        return Ok(PoincareSeries::new(floor, []));
    };
    // den is monic of degree δ: 1/den = t^{-δ} Σ s_n t^{-n}.
    let delta = den.degree().unwrap() as i64;
    let shift = 2 * x.l_exponent() - delta;
    let n_max = num_deg as i64 + shift - floor;
    let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
    if n_max >= 0 {
        let rev: Vec<BigInt> = den.coeffs().iter().rev().cloned().collect();
        let mut s: Vec<BigInt> = Vec::with_capacity(n_max as usize + 1);
        s.push(BigInt::one());
        for n in 1..=n_max as usize {
            let mut v = BigInt::zero();
            for j in 1..=n.min(delta as usize) {
                v -= &rev[j] * &s[n - j];
            }
            s.push(v);
        }
        for (i, c) in num.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let top = i as i64 + shift;
            for (n, sn) in s.iter().enumerate().take((top - floor + 1).max(0) as usize) {
                *coeffs.entry(top - n as i64).or_default() += c * sn;
            }
        }
    }
    Ok(PoincareSeries::new(floor, coeffs))
}

/// Dimension and leading coefficient of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimNu {
    /// `None` encodes `-∞` (the class realizes to zero).
    pub dim: Option<i64>,
    pub nu: BigInt,
}

/// `dim` is half the top degree of the Poincaré series (rounded up), `ν` its
/// leading coefficient. Computed exactly from the rational form, so no
/// truncation is involved.
pub fn dim_nu(x: &MotClass, reg: &SymbolRegistry) -> Result<DimNu> {
    let (num, den) = pc_fraction(x, reg)?;
    match num.degree() {
        None => Ok(DimNu {
            dim: None,
            nu: BigInt::zero(),
        }),
        Some(d) => {
            let top = 2 * x.l_exponent() + d as i64 - den.degree().unwrap() as i64;
            Ok(DimNu {
                dim: Some(top.div_euclid(2) + top.rem_euclid(2)),
                nu: num.leading().unwrap().clone(),
            })
        }
    }
}

/// Point-count realization `L ↦ q`, symbols to their registered counts.
pub fn count_realize(x: &MotClass, q: u64, reg: &SymbolRegistry) -> Result<BigRational> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("q = {q} must be at least 2")));
    }
    let qb = BigInt::from(q);
    let mut num = BigInt::zero();
    for (m, p) in x.terms() {
        let mut sym = BigInt::one();
        for (name, e) in m.factors() {
            let s = reg.get(name)?;
            let c = s.counts.get(&q).ok_or_else(|| Error::MissingCount {
                symbol: name.clone(),
                q,
            })?;
            sym *= BigInt::from(*c).pow(*e);
        }
        num += sym * p.eval(&qb);
    }
    let den = x.cyclotomic_product().eval(&qb);
    let l = x.l_exponent();
    let lq = BigRational::from_integer(qb.pow(l.unsigned_abs() as u32));
    let lq = if l >= 0 { lq } else { lq.recip() };
    Ok(BigRational::new(num, den) * lq)
}
