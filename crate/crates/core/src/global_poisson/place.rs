//! Degree-one places of `F_q(t)`, local expansions, divisors and
//! Riemann–Roch spaces on `P^1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fpoly::{FpPoly, RatFn};
use crate::error::{Error, Result};
use crate::local_harmonic::osc::inv_mod;
use crate::local_harmonic::{FpLaurent, ResiduePairing};

/// A rational point `t = c` (uniformizer `t - c`) or infinity
/// (uniformizer `1/t`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Finite(u64),
    #[serde(rename = "inf")]
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(c) => write!(f, "[{c}]"),
            Place::Infinity => write!(f, "[inf]"),
        }
    }
}

impl Place {
    pub fn check(&self, q: u64) -> Result<()> {
        match self {
            Place::Finite(c) if *c >= q => Err(Error::UnsupportedPlace(format!(
                "t = {c} is not a point of F_{q}"
            ))),
            _ => Ok(()),
        }
    }

    /// All degree-one places over `F_q`.
    pub fn all(q: u64) -> Vec<Place> {
        (0..q).map(Place::Finite).chain([Place::Infinity]).collect()
    }
}

/// Order of `f` at a place.
pub fn ord_at(f: &RatFn, place: Place) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match place {
        Place::Finite(c) => {
            f.num().root_multiplicity(c) as i64 - f.den().root_multiplicity(c) as i64
        }
        Place::Infinity => f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64,
    })
}

/// `num/den` as a power series mod `s^prec`, `den(0) ≠ 0`.
fn series_quotient(num: &FpPoly, den: &FpPoly, prec: usize) -> Vec<u64> {
    let p = num.p();
    let inv0 = inv_mod(den.coeff(0), p);
    let mut out = vec![0u64; prec];
    for k in 0..prec {
        let mut acc = num.coeff(k) % p;
        for j in 1..=k.min(den.degree().unwrap_or(0)) {
            acc = (acc + p * p - den.coeff(j) * out[k - j] % p) % p;
        }
        out[k] = acc * inv0 % p;
    }
    out
}

/// Expansion of `f` in the local uniformizer at `place`, exact for all
/// exponents `< hi`.
pub fn local_expand(f: &RatFn, place: Place, hi: i64) -> Result<FpLaurent> {
    let p = f.p();
    place.check(p)?;
    if f.is_zero() {
        return Ok(FpLaurent::zero(p));
    }
    let (n, d, shift) = match place {
        Place::Finite(c) => {
            let n = f.num().taylor_shift(c);
            let d = f.den().taylor_shift(c);
            let (vn, vd) = (n.valuation(), d.valuation());
            let n = FpPoly::new(p, n.coeffs()[vn..].to_vec());
            let d = FpPoly::new(p, d.coeffs()[vd..].to_vec());
            (n, d, vn as i64 - vd as i64)
        }
        Place::Infinity => {
            let shift = f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64;
            (f.num().reversed(), f.den().reversed(), shift)
        }
    };
    let prec = (hi - shift).max(0) as usize;
    Ok(FpLaurent::new(p, shift, series_quotient(&n, &d, prec)))
}

/// The local coefficient of `ω = g dt` at a place: `ω = h(s) ds`.
pub fn local_form(g: &RatFn, place: Place, hi: i64) -> Result<FpLaurent> {
    match place {
        Place::Finite(_) => local_expand(g, place, hi),
        // t = 1/u, dt = -u^{-2} du
        Place::Infinity => Ok(local_expand(g, place, hi + 2)?.shift(-2).neg()),
    }
}

/// Order of `ω = g dt` at a place (`-2` at infinity for `ω = dt`).
pub fn form_order(g: &RatFn, place: Place) -> Option<i64> {
    ord_at(g, place).map(|o| if place == Place::Infinity { o - 2 } else { o })
}

/// The residue pairing of `ω = g dt` at a place, with the form expanded
/// exactly below `hi`.
pub fn local_pairing(g: &RatFn, place: Place, hi: i64) -> Result<ResiduePairing> {
    let f = local_form(g, place, hi)?;
    ResiduePairing::new(f, hi)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor(pub BTreeMap<Place, i64>);

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_pairs(pairs: &[(Place, i64)]) -> Self {
        let mut d = Divisor::zero();
        for (pl, k) in pairs {
            d.add_at(*pl, *k);
        }
        d
    }

    pub fn add_at(&mut self, place: Place, k: i64) {
        let e = self.0.entry(place).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&place);
        }
    }

    pub fn get(&self, place: Place) -> i64 {
        self.0.get(&place).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (pl, k) in &o.0 {
            d.add_at(*pl, *k);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor(self.0.iter().map(|(p, k)| (*p, -k)).collect())
    }

    /// Divisor of a rational function whose zeros and poles are all rational.
    pub fn of_function(f: &RatFn) -> Result<Divisor> {
        if f.is_zero() {
            return Err(Error::InvalidInput(
                "the zero function has no divisor".into(),
            ));
        }
        let mut d = Divisor::zero();
        for (poly, sign) in [(f.num(), 1), (f.den(), -1)] {
            let (roots, split) = poly.rational_roots();
            if !split {
                return Err(Error::UnsupportedPlace(format!(
                    "{poly} has zeros at places of degree > 1"
                )));
            }
            for (c, m) in roots {
                d.add_at(Place::Finite(c), sign * m as i64);
            }
        }
        d.add_at(Place::Infinity, ord_at(f, Place::Infinity).unwrap());
        Ok(d)
    }

    /// `div(g dt)`.
    pub fn of_form(g: &RatFn) -> Result<Divisor> {
        let mut d = Divisor::of_function(g)?;
        d.add_at(Place::Infinity, -2);
        Ok(d)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(p, k)| format!("{k}{p}")).collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Basis of `L(D) = {y : div(y) + D ≥ 0} ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub basis: Vec<RatFn>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `{z t^i / h : 0 ≤ i ≤ deg D}` with `h = ∏_{D_c > 0} (t - c)^{D_c}` and
/// `z = ∏_{D_c < 0} (t - c)^{-D_c}`.
pub fn riemann_roch_basis(d: &Divisor, q: u64) -> Result<RRBasis> {
    let mut h = FpPoly::one(q);
    let mut z = FpPoly::one(q);
    for (pl, k) in &d.0 {
        pl.check(q)?;
        if let Place::Finite(c) = pl {
            let lin = FpPoly::linear(q, *c);
            if *k > 0 {
                h = h.mul(&lin.pow(*k as u32));
            } else {
                z = z.mul(&lin.pow((-k) as u32));
            }
        }
    }
    let deg = d.degree();
    let basis = (0..=deg)
        .map(|i| RatFn::new(z.mul(&FpPoly::t_pow(q, i as usize)), h.clone()))
        .collect::<Result<Vec<_>>>()?;
    for y in &basis {
        for pl in d.0.keys().copied().chain([Place::Infinity]) {
            if ord_at(y, pl).unwrap() + d.get(pl) < 0 {
                return Err(Error::Invariant(format!(
                    "basis element {y} violates {d} at {pl}"
                )));
            }
        }
    }
    Ok(RRBasis {
        divisor: d.clone(),
        basis,
    })
}

/// Residues of `x ω` at every place where `x g` has a pole.
pub fn residues(x: &RatFn, g: &RatFn) -> Result<Vec<(Place, u64)>> {
    let xw = x.mul(g);
    if xw.is_zero() {
        return Ok(Vec::new());
    }
    let (roots, split) = xw.den().rational_roots();
    if !split {
        return Err(Error::UnsupportedPlace(format!(
            "{xw} dt has poles at places of degree > 1"
        )));
    }
    let mut out = Vec::new();
    for (c, _) in roots {
        let e = local_form(&xw, Place::Finite(c), 0)?;
        out.push((Place::Finite(c), e.coeff(-1)));
    }
    let e = local_form(&xw, Place::Infinity, 0)?;
    out.push((Place::Infinity, e.coeff(-1)));
    Ok(out)
}

/// `Σ_s res_s(x ω) = 0`.
pub fn residue_theorem_check(x: &RatFn, g: &RatFn) -> Result<bool> {
    let p = x.p();
    let res = residues(x, g)?;
    Ok(res.iter().map(|(_, r)| r).sum::<u64>() % p == 0)
}
