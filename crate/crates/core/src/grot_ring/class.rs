//! Elements of `Z[L, L^-1, (L^a - 1)^-1]`, optionally multiplied by opaque
//! stratum symbols.
//!
//! A class is stored as `L^e · (Σ_m N_m(L)·m) / ∏ Φ_d(L)^{k_d}` where `m`
//! ranges over monomials in stratum symbols and every `N_m` is a nonzero
//! integer polynomial. The canonical form requires that the smallest
//! valuation among the `N_m` is zero (powers of `L` live in `e`) and that no
//! `Φ_d` in the denominator divides every `N_m`. Equality is structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{cyclotomic, euler_phi};
use crate::error::{Error, Result};
use crate::poly::ZPoly;
use crate::text::{self, Evaluator};

/// A monomial in stratum symbols, `[A]^2·[B]`. Sorted by name, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct SymbolMonomial(Vec<(String, u32)>);

impl SymbolMonomial {
    pub fn one() -> Self {
        SymbolMonomial(Vec::new())
    }

    pub fn symbol(name: &str) -> Self {
        SymbolMonomial(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &SymbolMonomial) -> SymbolMonomial {
        let mut map: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (n, e) in &other.0 {
            *map.entry(n.clone()).or_insert(0) += e;
        }
        SymbolMonomial(map.into_iter().collect())
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    format!("[{n}]")
                } else {
                    format!("[{n}]^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MotClass {
    l_exp: i64,
    cyclo: BTreeMap<u32, u32>,
    terms: BTreeMap<SymbolMonomial, ZPoly>,
}

impl MotClass {
    pub fn zero() -> Self {
        MotClass::default()
    }

    pub fn one() -> Self {
        MotClass::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        MotClass::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        MotClass::from_poly(ZPoly::constant(n))
    }

    /// The class of an integer polynomial in `L`.
    pub fn from_poly(p: ZPoly) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SymbolMonomial::one(), p);
        MotClass::from_raw(0, BTreeMap::new(), terms)
    }

    pub fn l() -> Self {
        MotClass::l_pow(1)
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i64) -> Self {
        let mut c = MotClass::one();
        c.l_exp = k;
        c
    }

    /// `L^a - 1` for `a >= 1`.
    pub fn l_pow_minus_one(a: u32) -> Self {
        MotClass::from_poly(ZPoly::x_pow_minus_one(a as usize))
    }

    /// `1 - L^k` for any integer `k`.
    pub fn one_minus_l_pow(k: i64) -> Self {
        &MotClass::one() - &MotClass::l_pow(k)
    }

    pub fn symbol(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(SymbolMonomial::symbol(name), ZPoly::one());
        MotClass::from_raw(0, BTreeMap::new(), terms)
    }

    /// Canonicalizes `L^l_exp · Σ terms / ∏ Φ_d^{k_d}`.
    pub(crate) fn from_raw(
        mut l_exp: i64,
        mut cyclo: BTreeMap<u32, u32>,
        mut terms: BTreeMap<SymbolMonomial, ZPoly>,
    ) -> Self {
        terms.retain(|_, p| !p.is_zero());
        if terms.is_empty() {
            return MotClass::zero();
        }
        let v = terms.values().filter_map(|p| p.valuation()).min().unwrap();
        if v > 0 {
            for p in terms.values_mut() {
                *p = p.shift_down(v);
            }
            l_exp += v as i64;
        }
        cyclo.retain(|_, m| *m > 0);
        for (d, m) in cyclo.iter_mut() {
            let phi = cyclotomic(*d);
            while *m > 0 {
                let q: Option<Vec<ZPoly>> = terms.values().map(|p| p.div_exact(&phi)).collect();
                match q {
                    Some(qs) => {
                        for (p, q) in terms.values_mut().zip(qs) {
                            *p = q;
                        }
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        cyclo.retain(|_, m| *m > 0);
        MotClass {
            l_exp,
            cyclo,
            terms,
        }
    }

    /// `num / den` for integer polynomials, rejecting denominators outside
    /// the multiplicative set generated by `L` and the `L^a - 1`.
    pub fn from_fraction(num: &ZPoly, den: &ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let inv = MotClass::from_poly(den.clone())
            .inv()
            .map_err(|_| Error::NonLocalizedDenominator(den.render("L")))?;
        Ok(&MotClass::from_poly(num.clone()) * &inv)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == MotClass::one()
    }

    /// The exponent `e` of the `L^e` prefactor in the canonical form.
    pub fn l_exponent(&self) -> i64 {
        self.l_exp
    }

    /// Multiplicities `k_d` of `Φ_d(L)` in the canonical denominator.
    pub fn cyclotomic_denominator(&self) -> &BTreeMap<u32, u32> {
        &self.cyclo
    }

    /// Numerator polynomials keyed by symbol monomial.
    pub fn terms(&self) -> &BTreeMap<SymbolMonomial, ZPoly> {
        &self.terms
    }

    pub fn has_symbols(&self) -> bool {
        self.terms.keys().any(|m| !m.is_one())
    }

    pub fn symbol_names(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    /// `∏ Φ_d(L)^{k_d}` expanded.
    pub fn cyclotomic_product(&self) -> ZPoly {
        self.cyclo
            .iter()
            .fold(ZPoly::one(), |acc, (d, m)| &acc * &cyclotomic(*d).pow(*m))
    }

    /// Denominator polynomial `L^{max(0,-e)} ∏ Φ_d^{k_d}` of the displayed
    /// fraction.
    pub fn denominator_poly(&self) -> ZPoly {
        self.cyclotomic_product()
            .shift_up(self.l_exp.min(0).unsigned_abs() as usize)
    }

    /// If the class is an integer polynomial in `L` (no symbols, no
    /// denominator), return it.
    pub fn as_poly(&self) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.has_symbols() || !self.cyclo.is_empty() || self.l_exp < 0 {
            return None;
        }
        Some(self.terms[&SymbolMonomial::one()].shift_up(self.l_exp as usize))
    }

    /// If the class is an integer, return it.
    pub fn as_integer(&self) -> Option<BigInt> {
        let p = self.as_poly()?;
        match p.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }

    /// Units are `±L^k ∏ (L^a - 1)^{n_a}` with `n_a ∈ Z`.
    pub fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    pub fn inv(&self) -> Result<Self> {
        let not_inv = || Error::NotInvertible(self.to_string());
        if self.terms.len() != 1 || self.has_symbols() {
            return Err(not_inv());
        }
        let n = self.terms.values().next().unwrap();
        let deg = n.degree().unwrap();
        if !n.coeff(0).abs().is_one() || !n.leading().unwrap().abs().is_one() {
            return Err(not_inv());
        }
        let mut rem = n.clone();
        let mut found: BTreeMap<u32, u32> = BTreeMap::new();
        let bound = 2 * (deg as u64).pow(2) + 2;
        let mut d: u64 = 1;
        while rem.degree().unwrap() > 0 && d <= bound {
            if euler_phi(d) as usize <= rem.degree().unwrap() {
                let phi = cyclotomic(d as u32);
                while let Some(q) = rem.div_exact(&phi) {
                    rem = q;
                    *found.entry(d as u32).or_insert(0) += 1;
                }
            }
            d += 1;
        }
        if rem.degree() != Some(0) {
            return Err(not_inv());
        }
        let sign = rem.coeff(0);
        let num = self.cyclotomic_product().scale(&sign);
        let mut terms = BTreeMap::new();
        terms.insert(SymbolMonomial::one(), num);
        Ok(MotClass::from_raw(-self.l_exp, found, terms))
    }

    pub fn checked_div(&self, other: &MotClass) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow_u(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MotClass::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let e32 = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidInput(format!("exponent {e} too large")))?;
        if e >= 0 {
            Ok(self.pow_u(e32))
        } else {
            Ok(self.inv()?.pow_u(e32))
        }
    }

    /// Multiply by `L^k`.
    pub fn mul_l_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.clone();
        c.l_exp += k;
        c
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self * &MotClass::from_bigint(c.clone())
    }

    pub fn parse(s: &str) -> Result<Self> {
        text::parse(s)?.eval(&ClassEvaluator)
    }

    fn numerator_items(&self) -> Vec<(usize, SymbolMonomial, BigInt)> {
        let shift = self.l_exp.max(0) as usize;
        let mut items = Vec::new();
        for (m, p) in &self.terms {
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    items.push((k + shift, m.clone(), c.clone()));
                }
            }
        }
        items.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        items
    }

    fn render_numerator(&self) -> String {
        let mut out = String::new();
        for (k, m, c) in self.numerator_items() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            if !m.is_one() {
                parts.push(m.render());
            }
            match k {
                0 => {}
                1 => parts.push("L".to_string()),
                _ => parts.push(format!("L^{k}")),
            }
            if !abs.is_one() || parts.is_empty() {
                parts.insert(0, abs.to_string());
            }
            out.push_str(&parts.join("*"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn add_ref(&self, other: &MotClass) -> MotClass {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let l = self.l_exp.min(other.l_exp);
        let mut cyclo = self.cyclo.clone();
        for (d, m) in &other.cyclo {
            let e = cyclo.entry(*d).or_insert(0);
            *e = (*e).max(*m);
        }
        let factor = |x: &MotClass| -> ZPoly {
            let mut f = ZPoly::monomial(1, (x.l_exp - l) as usize);
            for (d, m) in &cyclo {
                let have = x.cyclo.get(d).copied().unwrap_or(0);
                if *m > have {
                    f = &f * &cyclotomic(*d).pow(m - have);
                }
            }
            f
        };
        let (fa, fb) = (factor(self), factor(other));
        let mut terms: BTreeMap<SymbolMonomial, ZPoly> = BTreeMap::new();
        for (m, p) in &self.terms {
            terms.insert(m.clone(), p * &fa);
        }
        for (m, p) in &other.terms {
            let scaled = p * &fb;
            let e = terms.entry(m.clone()).or_default();
            *e = &*e + &scaled;
        }
        MotClass::from_raw(l, cyclo, terms)
    }

    fn mul_ref(&self, other: &MotClass) -> MotClass {
        if self.is_zero() || other.is_zero() {
            return MotClass::zero();
        }
        let mut cyclo = self.cyclo.clone();
        for (d, m) in &other.cyclo {
            *cyclo.entry(*d).or_insert(0) += m;
        }
        let mut terms: BTreeMap<SymbolMonomial, ZPoly> = BTreeMap::new();
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                let prod = pa * pb;
                let e = terms.entry(ma.mul(mb)).or_default();
                *e = &*e + &prod;
            }
        }
        MotClass::from_raw(self.l_exp + other.l_exp, cyclo, terms)
    }
}

impl fmt::Display for MotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator_poly();
        if den.is_one() {
            write!(f, "{}", self.render_numerator())
        } else {
            write!(f, "({})/({})", self.render_numerator(), den.render("L"))
        }
    }
}

impl fmt::Debug for MotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotClass({self})")
    }
}

impl FromStr for MotClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MotClass::parse(s)
    }
}

impl serde::Serialize for MotClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MotClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        MotClass::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&MotClass> for &MotClass {
            type Output = MotClass;
            fn $m(self, rhs: &MotClass) -> MotClass {
                self.$imp(rhs)
            }
        }
        impl $tr for MotClass {
            type Output = MotClass;
            fn $m(self, rhs: MotClass) -> MotClass {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);

impl MotClass {
    fn sub_ref(&self, rhs: &MotClass) -> MotClass {
        self.add_ref(&-rhs)
    }
}
forward_binop!(Sub, sub, sub_ref);

impl Neg for &MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        let mut c = self.clone();
        for p in c.terms.values_mut() {
            *p = -&*p;
        }
        c
    }
}

impl Neg for MotClass {
    type Output = MotClass;
    fn neg(self) -> MotClass {
        -&self
    }
}

impl std::iter::Sum for MotClass {
    fn sum<I: Iterator<Item = MotClass>>(iter: I) -> MotClass {
        iter.fold(MotClass::zero(), |a, b| &a + &b)
    }
}

/// Evaluates parsed text as a class; the only variable is `L`.
pub struct ClassEvaluator;

impl Evaluator for ClassEvaluator {
    type Value = MotClass;
    fn int(&self, n: &BigInt) -> Result<MotClass> {
        Ok(MotClass::from_bigint(n.clone()))
    }
    fn var(&self, name: &str) -> Result<MotClass> {
        if name == "L" {
            Ok(MotClass::l())
        } else {
            Err(Error::InvalidInput(format!(
                "unknown variable `{name}` in class"
            )))
        }
    }
    fn sym(&self, name: &str) -> Result<MotClass> {
        Ok(MotClass::symbol(name))
    }
    fn add(&self, a: MotClass, b: MotClass) -> Result<MotClass> {
        Ok(&a + &b)
    }
    fn sub(&self, a: MotClass, b: MotClass) -> Result<MotClass> {
        Ok(&a - &b)
    }
    fn mul(&self, a: MotClass, b: MotClass) -> Result<MotClass> {
        Ok(&a * &b)
    }
    fn div(&self, a: MotClass, b: MotClass) -> Result<MotClass> {
        a.checked_div(&b)
    }
    fn neg(&self, a: MotClass) -> Result<MotClass> {
        Ok(-a)
    }
    fn pow(&self, a: MotClass, e: i64) -> Result<MotClass> {
        a.pow(e)
    }
}
