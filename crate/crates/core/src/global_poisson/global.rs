//! Global Schwartz–Bruhat functions on `F_q(t)^n` for `C = P^1`, summation
//! over rational points, the global Fourier transform and Poisson summation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fpoly::{RatFn, RatFnConfig};
use super::place::{
    form_order, local_expand, local_pairing, ord_at, riemann_roch_basis, Divisor, Place,
};
use crate::error::{Error, Result};
use crate::local_harmonic::{
    fourier, CycValue, FpLaurent, LaurentConfig, LocalWindow, SBLocal, WINDOW_CAP,
};

/// A product `∏_s φ_s` of local factors; every place without a factor
/// carries the unit-ball indicator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSB {
    q: u64,
    n: u32,
    factors: BTreeMap<Place, SBLocal>,
}

impl GlobalSB {
    /// The unit-ball indicator at every place.
    pub fn unit(q: u64, n: u32) -> Self {
        GlobalSB {
            q,
            n,
            factors: BTreeMap::new(),
        }
    }

    pub fn with_factor(mut self, place: Place, phi: SBLocal) -> Result<Self> {
        place.check(self.q)?;
        let w = phi.window();
        if w.q != self.q || w.n != self.n {
            return Err(Error::WindowMismatch(format!(
                "factor at {place} lives on {w:?}, global function has q={} n={}",
                self.q, self.n
            )));
        }
        self.factors.insert(place, phi);
        Ok(self)
    }

    /// Characteristic function of a product of balls `center_s + t_s^{N_s} R`
    /// on level `(M_s, N_s)`.
    pub fn simple(q: u64, n: u32, balls: &[(Place, i64, i64, Vec<FpLaurent>)]) -> Result<Self> {
        let mut g = GlobalSB::unit(q, n);
        for (pl, lo, hi, center) in balls {
            let w = LocalWindow::new(q, n, *lo, *hi)?;
            g = g.with_factor(*pl, SBLocal::ball(w, center, *hi)?)?;
        }
        Ok(g)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn factors(&self) -> &BTreeMap<Place, SBLocal> {
        &self.factors
    }

    /// The factor at a place, materializing the unit ball at level `(0, 0)`.
    pub fn factor(&self, place: Place) -> SBLocal {
        self.factors.get(&place).cloned().unwrap_or_else(|| {
            let w = LocalWindow::new(self.q, self.n, 0, 0).expect("trivial window");
            SBLocal::unit_ball(w, 0).expect("trivial window")
        })
    }

    /// `D = -Σ_s M_s [s]`: the support is contained in `L(D)^n`.
    pub fn support_divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for (pl, phi) in &self.factors {
            d.add_at(*pl, -phi.window().lo);
        }
        d
    }

    pub fn negate_argument(&self) -> GlobalSB {
        GlobalSB {
            q: self.q,
            n: self.n,
            factors: self
                .factors
                .iter()
                .map(|(p, f)| (*p, f.negate_argument()))
                .collect(),
        }
    }

    /// `Φ(x)` for `x ∈ F^n`.
    pub fn eval(&self, x: &[RatFn]) -> Result<CycValue> {
        if x.len() != self.n as usize {
            return Err(Error::InvalidInput("point has the wrong dimension".into()));
        }
        let mut acc = CycValue::one(self.q);
        for pl in Place::all(self.q) {
            match self.factors.get(&pl) {
                Some(phi) => {
                    let w = phi.window();
                    let local = x
                        .iter()
                        .map(|c| local_expand(c, pl, w.hi))
                        .collect::<Result<Vec<_>>>()?;
                    acc = acc.mul(&phi.eval(&local)?);
                }
                None => {
                    if x.iter().any(|c| ord_at(c, pl).is_some_and(|o| o < 0)) {
                        return Ok(CycValue::zero(self.q));
                    }
                }
            }
        }
        Ok(acc)
    }

    /// `Σ_{x ∈ F^n} Φ(x)`, enumerating `L(D)^n`.
    pub fn sum_over_rational_points(&self) -> Result<CycValue> {
        self.sum_over(&self.support_divisor())
    }

    /// `Σ_{x ∈ L(D)^n} Φ(x)`; points of `L(D)` outside the support of `Φ`
    /// contribute zero, so any `D` at least the support divisor gives the
    /// full sum.
    pub fn sum_over(&self, d: &Divisor) -> Result<CycValue> {
        let q = self.q;
        let p = q as usize;
        let n = self.n as usize;
        let rr = riemann_roch_basis(d, q)?;
        let k = rr.dim();
        let needed = (q as u128).checked_pow((n * k) as u32).unwrap_or(u128::MAX);
        if needed > WINDOW_CAP {
            return Err(Error::CapExceeded {
                what: format!("summation over L({})^{n}", rr.divisor),
                needed,
                cap: WINDOW_CAP,
            });
        }
        // digits of each basis element in each local window
        // places where L(D) allows poles beyond the unit ball get explicit factors
        let mut factors = self.factors.clone();
        for (pl, k) in &d.0 {
            if *k > 0 && !factors.contains_key(pl) {
                factors.insert(*pl, self.factor(*pl));
            }
        }
        // digits below the window (must vanish) and inside it
        let locals: Vec<(&SBLocal, usize, Vec<Vec<u64>>)> = factors
            .iter()
            .map(|(pl, phi)| {
                let w = phi.window();
                let from = w.lo.min(-d.get(*pl));
                let exps = rr
                    .basis
                    .iter()
                    .map(|b| {
                        let e = local_expand(b, *pl, w.hi)?;
                        Ok((from..w.hi).map(|j| e.coeff(j)).collect())
                    })
                    .collect::<Result<Vec<Vec<u64>>>>()?;
                Ok((phi, (w.lo - from) as usize, exps))
            })
            .collect::<Result<_>>()?;
        let den: i64 = locals.iter().map(|(phi, _, _)| phi.den_exp()).sum();

        let acc = (0..needed as usize)
            .into_par_iter()
            .fold(
                || vec![0i128; p],
                |mut acc, mut idx| {
                    let mut lambda = vec![0u64; n * k];
                    for l in lambda.iter_mut() {
                        *l = (idx % p) as u64;
                        idx /= p;
                    }
                    let mut val = vec![0i128; p];
                    val[0] = 1;
                    for (phi, below, exps) in &locals {
                        let w = phi.window();
                        let digit = |c: usize, j: usize| {
                            (0..k).map(|i| lambda[c * k + i] * exps[i][j]).sum::<u64>() % q
                        };
                        if (0..n).any(|c| (0..*below).any(|j| digit(c, j) != 0)) {
                            return acc;
                        }
                        let digits: Vec<Vec<u64>> = (0..n)
                            .map(|c| (0..w.len()).map(|j| digit(c, below + j)).collect())
                            .collect();
                        let pi = w.index(&digits);
                        let block = &phi.raw()[pi * p..(pi + 1) * p];
                        if block.iter().all(|c| *c == 0) {
                            return acc;
                        }
                        let mut next = vec![0i128; p];
                        for (a, x) in val.iter().enumerate() {
                            if *x == 0 {
                                continue;
                            }
                            for (b, y) in block.iter().enumerate() {
                                next[(a + b) % p] += x * y;
                            }
                        }
                        val = next;
                    }
                    for (a, v) in acc.iter_mut().zip(val) {
                        *a += v;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0i128; p],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(CycValue::from_raw(q, acc, den))
    }
}

/// Places where `Φ` has a factor or `ω = g dt` has a zero or pole.
fn fourier_places(phi: &GlobalSB, g: &RatFn) -> Result<Vec<Place>> {
    let mut places: Vec<Place> = phi.factors.keys().copied().collect();
    places.extend(Divisor::of_form(g)?.0.keys().copied());
    places.sort();
    places.dedup();
    Ok(places)
}

/// Factorwise local Fourier transform, each place with the pairing of
/// `ω = g dt`; the support grows to include `div(ω)`.
pub fn global_fourier(phi: &GlobalSB, g: &RatFn) -> Result<GlobalSB> {
    if g.p() != phi.q {
        return Err(Error::InvalidInput(
            "form and function over different fields".into(),
        ));
    }
    let mut out = GlobalSB::unit(phi.q, phi.n);
    for pl in fourier_places(phi, g)? {
        let local = phi.factor(pl);
        let w = local.window();
        let nu = -form_order(g, pl).expect("nonzero form");
        let hi = (w.hi - w.lo - nu).max(1 - nu);
        let pairing = local_pairing(g, pl, hi)?;
        out = out.with_factor(pl, fourier(&local, &pairing)?)?;
    }
    Ok(out)
}

/// Outcome of the global inversion check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    /// Exponent `e` with `FFΦ = q^e Φ(-·)`; `n(2g - 2) = -2n` on `P^1`.
    pub exponent: i64,
    pub factorwise_equal: bool,
}

/// `FFΦ = q^{-2n} Φ(-·)`, checked factor by factor.
pub fn global_inversion_check(phi: &GlobalSB, g: &RatFn) -> Result<InversionReport> {
    let ff = global_fourier(&global_fourier(phi, g)?, g)?;
    let neg = phi.negate_argument();
    let mut exponent = 0;
    let mut equal = true;
    for pl in fourier_places(phi, g)? {
        let nu = -form_order(g, pl).expect("nonzero form");
        let e = -(phi.n as i64) * nu;
        exponent += e;
        equal &= ff.factor(pl) == neg.factor(pl).mul_q_pow(e);
    }
    Ok(InversionReport {
        exponent,
        factorwise_equal: equal,
    })
}

/// Both sides of `Σ_x Φ(x) = q^{(1-g)n} Σ_y FΦ(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    pub lhs: CycValue,
    pub rhs: CycValue,
    pub equal: bool,
}

pub fn poisson_check(phi: &GlobalSB, g: &RatFn) -> Result<PoissonReport> {
    let lhs = phi.sum_over_rational_points()?;
    let rhs = global_fourier(phi, g)?
        .sum_over_rational_points()?
        .mul_p_pow(phi.n as i64);
    let equal = lhs == rhs;
    Ok(PoissonReport { lhs, rhs, equal })
}

/// Config record for one local factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorConfig {
    pub place: Place,
    pub level: (i64, i64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallConfig>,
    /// Integer values in window index order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<i64>>,
}

impl FactorConfig {
    /// The local factor described by the record.
    pub fn local(&self, q: u64, n: u32) -> Result<SBLocal> {
        let w = LocalWindow::new(q, n, self.level.0, self.level.1)?;
        Ok(match (&self.ball, &self.table) {
            (Some(b), None) => {
                let center: Vec<FpLaurent> = b
                    .center
                    .iter()
                    .map(|c| FpLaurent::from_config(q, c))
                    .collect();
                SBLocal::ball(w, &center, b.radius)?
            }
            (None, Some(t)) => {
                if t.len() != w.size()? {
                    return Err(Error::InvalidInput(format!(
                        "table at {} has {} entries, window has {}",
                        self.place,
                        t.len(),
                        w.size()?
                    )));
                }
                let vals: Vec<CycValue> =
                    t.iter().map(|v| CycValue::integer(q, *v as i128)).collect();
                SBLocal::from_values(w, &vals)
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "factor at {} needs exactly one of `ball` or `table`",
                    self.place
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallConfig {
    pub center: Vec<LaurentConfig>,
    pub radius: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalConfig {
    pub q: u64,
    pub n: u32,
    /// `ω = g dt`; defaults to `dt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<RatFnConfig>,
    #[serde(default)]
    pub factors: Vec<FactorConfig>,
}

impl GlobalConfig {
    pub fn build(&self) -> Result<(GlobalSB, RatFn)> {
        let q = self.q;
        LocalWindow::new(q, self.n, 0, 0)?;
        let g = match &self.form {
            Some(f) => RatFn::from_config(q, f)?,
            None => RatFn::constant(q, 1),
        };
        if g.is_zero() {
            return Err(Error::InvalidInput("the form ω must be nonzero".into()));
        }
        let mut phi = GlobalSB::unit(q, self.n);
        for f in &self.factors {
            let local = f.local(q, self.n)?;
            if phi.factors.contains_key(&f.place) {
                return Err(Error::InvalidInput(format!(
                    "duplicate factor at {}",
                    f.place
                )));
            }
            phi = phi.with_factor(f.place, local)?;
        }
        Ok((phi, g))
    }
}
