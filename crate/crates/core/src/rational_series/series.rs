//! Rational series `N(T) / ∏ (1 - L^a T^b)^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPolyMot;
use super::motpoly::MotPoly;
use crate::error::{Error, Result};
use crate::grot_ring::{count_realize, MotClass, SymbolRegistry};
use crate::poly::ZPoly;

/// The factor `(1 - L^a T^b)^{-mult}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DenomFactor {
    pub a: i64,
    pub b: Vec<i64>,
    pub mult: u32,
}

impl DenomFactor {
    pub fn new(a: i64, b: Vec<i64>, mult: u32) -> Self {
        DenomFactor { a, b, mult }
    }

    pub fn single(a: i64, b: i64, mult: u32) -> Self {
        DenomFactor::new(a, vec![b], mult)
    }

    fn shape(&self) -> (i64, Vec<i64>) {
        (self.a, self.b.clone())
    }

    /// `1 - L^a T^b` as a Laurent polynomial.
    pub fn base_poly(&self, vars: &[String]) -> LaurentPolyMot {
        LaurentPolyMot::one(vars).sub(&LaurentPolyMot::monomial(
            vars,
            self.b.clone(),
            MotClass::l_pow(self.a),
        ))
    }
}

/// Sparse Laurent polynomial in `L` with integer coefficients, used for the
/// expansion of the denominator.
type LPoly = BTreeMap<i64, BigInt>;

fn lpoly_to_class(p: &LPoly) -> MotClass {
    let Some(lo) = p.keys().next().copied() else {
        return MotClass::zero();
    };
    let hi = *p.keys().next_back().unwrap();
    let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, v) in p {
        c[(e - lo) as usize] = v.clone();
    }
    MotClass::from_poly(ZPoly::from_coeffs(c)).mul_l_pow(lo)
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMotSeries {
    num: LaurentPolyMot,
    factors: Vec<DenomFactor>,
}

impl RationalMotSeries {
    /// Builds the series; factors with the same shape are merged.
    pub fn new(num: LaurentPolyMot, factors: Vec<DenomFactor>) -> Result<Self> {
        let n = num.nvars();
        let mut merged: BTreeMap<(i64, Vec<i64>), u32> = BTreeMap::new();
        for f in factors {
            if f.b.len() != n {
                return Err(Error::InvalidInput(format!(
                    "factor exponent vector has length {}, expected {n}",
                    f.b.len()
                )));
            }
            if f.b.iter().all(|x| *x == 0) {
                return Err(Error::InvalidInput("factor with b = 0".into()));
            }
            if f.mult > 0 {
                *merged.entry(f.shape()).or_insert(0) += f.mult;
            }
        }
        let factors = merged
            .into_iter()
            .map(|((a, b), mult)| DenomFactor { a, b, mult })
            .collect();
        Ok(RationalMotSeries { num, factors })
    }

    /// A Laurent polynomial viewed as a series.
    pub fn polynomial(num: LaurentPolyMot) -> Self {
        RationalMotSeries {
            num,
            factors: Vec::new(),
        }
    }

    /// Single-variable series in `T` from numerator text and `(a, b, mult)`.
    pub fn single(num: &str, factors: &[(i64, i64, u32)]) -> Result<Self> {
        let vars = vec!["T".to_string()];
        let num = LaurentPolyMot::parse(num, &vars)?;
        RationalMotSeries::new(
            num,
            factors
                .iter()
                .map(|(a, b, m)| DenomFactor::single(*a, *b, *m))
                .collect(),
        )
    }

    pub fn numerator(&self) -> &LaurentPolyMot {
        &self.num
    }

    pub fn factors(&self) -> &[DenomFactor] {
        &self.factors
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Every factor has `b > a` (single variable) or, with several
    /// variables, nonnegative `b` with `a < Σ b`.
    pub fn is_dagger(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.b.iter().all(|x| *x >= 0) && f.a < f.b.iter().sum::<i64>())
    }

    /// Membership in the ring generated by Laurent polynomials and the
    /// inverses of `1 - L^a T^b` with `b >= a >= 0`.
    pub fn in_mk_t(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.a >= 0 && f.b.iter().all(|x| *x >= 0) && f.b.iter().sum::<i64>() >= f.a)
    }

    fn require_single(&self) -> Result<()> {
        if self.nvars() != 1 {
            return Err(Error::InvalidInput(format!(
                "operation needs a single-variable series, got {} variables",
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Taylor coefficients of `1/∏ factors` for `T^0..=T^n`, as sparse
    /// Laurent polynomials in `L`. Dividing by `1 - L^a T^b` is the
    /// recurrence `c_k += L^a c_{k-b}`, which reproduces the binomial
    /// expansion `Σ_m binom(m+n-1, n-1) L^{am} T^{bm}` for multiplicity n.
    fn inverse_denominator(&self, n: usize) -> Result<Vec<LPoly>> {
        let mut d: Vec<LPoly> = vec![LPoly::new(); n + 1];
        d[0].insert(0, BigInt::one());
        for f in &self.factors {
            let b = f.b[0];
            if b < 1 {
                return Err(Error::InvalidInput(format!(
                    "expansion needs T-degrees >= 1, got factor (a={}, b={b})",
                    f.a
                )));
            }
            for _ in 0..f.mult {
                for k in b as usize..=n {
                    let (lo, hi) = d.split_at_mut(k);
                    let src = &lo[k - b as usize];
                    for (e, c) in src {
                        let slot = hi[0].entry(e + f.a).or_default();
                        *slot += c;
                        if slot.is_zero() {
                            hi[0].remove(&(e + f.a));
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    /// Coefficients of `T^lo ..= T^hi`.
    pub fn expand_range(&self, lo: i64, hi: i64) -> Result<Vec<MotClass>> {
        self.require_single()?;
        if hi < lo {
            return Ok(Vec::new());
        }
        let nmin = self.num.min_exponents()[0];
        let depth = (hi - nmin).max(0) as usize;
        let d = self.inverse_denominator(depth)?;
        let dc: Vec<MotClass> = d.iter().map(lpoly_to_class).collect();
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        for n in lo..=hi {
            let mut acc = MotClass::zero();
            for (e, c) in self.num.terms() {
                let k = n - e[0];
                if k >= 0 && !dc[k as usize].is_zero() {
                    acc = &acc + &(c * &dc[k as usize]);
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Coefficients of `T^0 ..= T^{n_max}`.
    pub fn expand(&self, n_max: usize) -> Result<Vec<MotClass>> {
        self.expand_range(0, n_max as i64)
    }

    /// Coefficient of the monomial `T^e` (any number of variables). Needs
    /// every factor to have nonnegative exponent vector.
    pub fn coefficient(&self, e: &[i64]) -> Result<MotClass> {
        if e.len() != self.nvars() {
            return Err(Error::InvalidInput("exponent vector length".into()));
        }
        if self.factors.iter().any(|f| f.b.iter().any(|x| *x < 0)) {
            return Err(Error::InvalidInput(
                "coefficient extraction needs nonnegative factor exponents".into(),
            ));
        }
        let mut acc = MotClass::zero();
        for (k, c) in self.num.terms() {
            let target: Vec<i64> = e.iter().zip(k).map(|(x, y)| x - y).collect();
            if target.iter().any(|x| *x < 0) {
                continue;
            }
            let mut sum = LPoly::new();
            self.enumerate_powers(0, &target, &mut BigInt::one(), 0, &mut sum);
            if !sum.is_empty() {
                acc = &acc + &(c * &lpoly_to_class(&sum));
            }
        }
        Ok(acc)
    }

    fn enumerate_powers(
        &self,
        i: usize,
        rem: &[i64],
        weight: &mut BigInt,
        lexp: i64,
        out: &mut LPoly,
    ) {
        if i == self.factors.len() {
            if rem.iter().all(|x| *x == 0) {
                *out.entry(lexp).or_default() += &*weight;
            }
            return;
        }
        let f = &self.factors[i];
        let mut m: i64 = 0;
        loop {
            let r: Vec<i64> = rem.iter().zip(&f.b).map(|(x, b)| x - m * b).collect();
            if r.iter().any(|x| *x < 0) {
                break;
            }
            // binom(m + n - 1, n - 1)
            let mut w = binomial(m as u64 + f.mult as u64 - 1, f.mult as u64 - 1);
            w *= &*weight;
            self.enumerate_powers(i + 1, &r, &mut w, lexp + f.a * m, out);
            m += 1;
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.vars() != other.vars() {
            return Err(Error::InvalidInput("variable sets differ".into()));
        }
        let mut common: BTreeMap<(i64, Vec<i64>), u32> = BTreeMap::new();
        for f in self.factors.iter().chain(&other.factors) {
            let e = common.entry(f.shape()).or_insert(0);
            *e = (*e).max(f.mult);
        }
        let lift = |s: &Self| -> LaurentPolyMot {
            let have: BTreeMap<(i64, Vec<i64>), u32> =
                s.factors.iter().map(|f| (f.shape(), f.mult)).collect();
            let mut num = s.num.clone();
            for ((a, b), m) in &common {
                let extra = m - have.get(&(*a, b.clone())).copied().unwrap_or(0);
                if extra > 0 {
                    let base = DenomFactor::new(*a, b.clone(), 1).base_poly(s.vars());
                    num = num.mul(&base.pow_u(extra));
                }
            }
            num
        };
        let num = lift(self).add(&lift(other));
        RationalMotSeries::new(
            num,
            common
                .into_iter()
                .map(|((a, b), mult)| DenomFactor { a, b, mult })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.vars() != other.vars() {
            return Err(Error::InvalidInput("variable sets differ".into()));
        }
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        RationalMotSeries::new(self.num.mul(&other.num), f)
    }

    pub fn scale(&self, c: &MotClass) -> Self {
        RationalMotSeries {
            num: self.num.scale(c),
            factors: self.factors.clone(),
        }
    }

    /// Multiply by `∏ (1 - L^a T^b)^{n}` for the given shapes, cancelling
    /// against the stored factors; remaining powers go into the numerator.
    pub fn mul_by_factors(&self, f: &[DenomFactor]) -> Result<Self> {
        let mut mine: BTreeMap<(i64, Vec<i64>), u32> =
            self.factors.iter().map(|x| (x.shape(), x.mult)).collect();
        let mut num = self.num.clone();
        for g in f {
            let have = mine.entry(g.shape()).or_insert(0);
            let cancel = (*have).min(g.mult);
            *have -= cancel;
            if g.mult > cancel {
                num = num.mul(&g.base_poly(self.vars()).pow_u(g.mult - cancel));
            }
        }
        RationalMotSeries::new(
            num,
            mine.into_iter()
                .map(|((a, b), mult)| DenomFactor { a, b, mult })
                .collect(),
        )
    }

    /// Cancel single-variable factors that divide the numerator exactly.
    pub fn reduce(&self) -> Result<Self> {
        self.require_single()?;
        let shift = self.num.min_exponents()[0];
        let mut num = MotPoly::new(self.num.shift(&[-shift]).to_dense()?);
        let mut factors = Vec::new();
        for f in &self.factors {
            let base = MotPoly::factor(f.a, f.b[0] as usize);
            let mut left = f.mult;
            while left > 0 && f.b[0] > 0 {
                let (q, r) = num.div_rem(&base)?;
                if !r.is_zero() {
                    break;
                }
                num = q;
                left -= 1;
            }
            if left > 0 {
                factors.push(DenomFactor::new(f.a, f.b.clone(), left));
            }
        }
        let num = LaurentPolyMot::from_dense(&self.vars()[0], num.coeffs()).shift(&[shift]);
        let num = LaurentPolyMot::from_terms(self.vars(), num.terms().clone());
        RationalMotSeries::new(num, factors)
    }

    /// Merge factors with proportional shapes `(a, b)` into one factor per
    /// ray, lifting each to the lcm shape: `1 - X^g` divides `1 - X^G`.
    pub fn merge_proportional(&self) -> Result<Self> {
        let mut rays: BTreeMap<(i64, Vec<i64>), Vec<(i64, u32)>> = BTreeMap::new();
        for f in &self.factors {
            let g = f.b.iter().fold(f.a.abs(), |acc, x| acc.gcd(x));
            let prim = (f.a / g, f.b.iter().map(|x| x / g).collect::<Vec<_>>());
            rays.entry(prim).or_default().push((g, f.mult));
        }
        let mut num = self.num.clone();
        let mut factors = Vec::new();
        for ((a0, b0), members) in rays {
            let big = members.iter().fold(1i64, |acc, (g, _)| acc.lcm(g));
            let mut total = 0;
            for (g, m) in members {
                // (1 - X^G)/(1 - X^g) = Σ_{j < G/g} X^{g j}
                let mut ratio = LaurentPolyMot::zero(self.vars());
                for j in 0..big / g {
                    let k = g * j;
                    ratio.add_term(b0.iter().map(|x| x * k).collect(), &MotClass::l_pow(a0 * k));
                }
                num = num.mul(&ratio.pow_u(m));
                total += m;
            }
            factors.push(DenomFactor::new(
                a0 * big,
                b0.iter().map(|x| x * big).collect(),
                total,
            ));
        }
        RationalMotSeries::new(num, factors)
    }

    /// Substitute `T_α ↦ T^{λ_α}`.
    pub fn specialize_lambda(&self, lambda: &[i64], var: &str) -> Result<Self> {
        if lambda.len() != self.nvars() {
            return Err(Error::InvalidInput(format!(
                "λ has length {}, expected {}",
                lambda.len(),
                self.nvars()
            )));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let b: i64 = f.b.iter().zip(lambda).map(|(x, l)| x * l).sum();
                DenomFactor::single(f.a, b, f.mult)
            })
            .collect();
        RationalMotSeries::new(self.num.specialize(lambda, var), factors)
    }

    /// The value at `T = L^{-1}`; every factor must satisfy `b > a`.
    pub fn evaluate_dagger_at_linv(&self) -> Result<MotClass> {
        self.require_single()?;
        for f in &self.factors {
            if f.b[0] <= f.a {
                return Err(Error::NotDagger { a: f.a, b: f.b[0] });
            }
        }
        let mut v = self.num.substitute(&[MotClass::l_pow(-1)])?;
        for f in &self.factors {
            let base = MotClass::one_minus_l_pow(f.a - f.b[0]);
            v = &v * &base.inv()?.pow_u(f.mult);
        }
        Ok(v)
    }

    /// Numerical value at `L = q`, `T = t` (single variable), with symbols
    /// realized by point counts.
    pub fn eval_numeric(
        &self,
        q: u64,
        t: &BigRational,
        reg: &SymbolRegistry,
    ) -> Result<BigRational> {
        self.require_single()?;
        let qr = BigRational::from_integer(BigInt::from(q));
        let pw = |x: &BigRational, e: i64| -> BigRational {
            let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
            if e >= 0 {
                p
            } else {
                p.recip()
            }
        };
        let mut v = BigRational::zero();
        for (e, c) in self.num.terms() {
            v += count_realize(c, q, reg)? * pw(t, e[0]);
        }
        for f in &self.factors {
            let base = BigRational::one() - pw(&qr, f.a) * pw(t, f.b[0]);
            if base.is_zero() {
                return Err(Error::InvalidInput("evaluation at a pole".into()));
            }
            v /= pw(&base, f.mult as i64);
        }
        Ok(v)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            vars: Some(self.vars().to_vec()),
            num: self.num.to_string(),
            factors: self
                .factors
                .iter()
                .map(|f| (f.a, f.b.clone(), f.mult))
                .collect(),
            dagger: Some(self.is_dagger()),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let vars = j.vars.clone().unwrap_or_else(|| vec!["T".to_string()]);
        let num = LaurentPolyMot::parse(&j.num, &vars)?;
        let s = RationalMotSeries::new(
            num,
            j.factors
                .iter()
                .map(|(a, b, m)| DenomFactor::new(*a, b.clone(), *m))
                .collect(),
        )?;
        if let Some(d) = j.dagger {
            if d != s.is_dagger() {
                return Err(Error::InvalidInput(format!(
                    "\"dagger\": {d} contradicts the factors"
                )));
            }
        }
        Ok(s)
    }
}

/// Wire format: `{"num": "...", "factors": [[a, [b..], mult], ...], "dagger": bool}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub num: String,
    pub factors: Vec<(i64, Vec<i64>, u32)>,
    #[serde(default)]
    pub dagger: Option<bool>,
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl fmt::Display for RationalMotSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if self.factors.is_empty() {
            return Ok(());
        }
        let mono = |b: &[i64]| -> String {
            self.vars()
                .iter()
                .zip(b)
                .filter(|(_, e)| **e != 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let dens: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                let l = match d.a {
                    0 => String::new(),
                    1 => "L*".to_string(),
                    a => format!("L^{a}*"),
                };
                let base = format!("(1 - {l}{})", mono(&d.b));
                if d.mult == 1 {
                    base
                } else {
                    format!("{base}^{}", d.mult)
                }
            })
            .collect();
        write!(f, "/({})", dens.join("*"))
    }
}

impl fmt::Debug for RationalMotSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        MotClass::parse(s).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let g = RationalMotSeries::single("1", &[(1, 1, 1)]).unwrap();
        assert_eq!(
            g.expand(3).unwrap(),
            vec![c("1"), c("L"), c("L^2"), c("L^3")]
        );
        let g2 = RationalMotSeries::single("1", &[(1, 1, 2)]).unwrap();
        for (n, m) in g2.expand(10).unwrap().into_iter().enumerate() {
            assert_eq!(m, MotClass::integer(n as i64 + 1).mul_l_pow(n as i64));
        }
        // L + (L-1) L T / (1 - L T) over a common denominator
        let toy = RationalMotSeries::single("L - L*T", &[(1, 1, 1)]).unwrap();
        let co = toy.expand(6).unwrap();
        assert_eq!(co[0], c("L"));
        for (n, m) in co.iter().enumerate().skip(1) {
            assert_eq!(*m, &c("L - 1") * &MotClass::l_pow(n as i64));
        }
    }

    #[test]
    fn negative_numerator_exponents() {
        let s = RationalMotSeries::single("T^-2", &[(0, 1, 1)]).unwrap();
        let v = s.expand_range(-3, 1).unwrap();
        assert_eq!(v, vec![c("0"), c("1"), c("1"), c("1"), c("1")]);
    }

    #[test]
    fn coefficient_matches_expand() {
        let s = RationalMotSeries::single("1 + L*T^3", &[(1, 2, 2), (0, 3, 1)]).unwrap();
        let e = s.expand(15).unwrap();
        for (n, x) in e.iter().enumerate() {
            assert_eq!(s.coefficient(&[n as i64]).unwrap(), *x);
        }
    }

    #[test]
    fn dagger_evaluation() {
        let s = RationalMotSeries::single("1", &[(0, 1, 1)]).unwrap();
        assert_eq!(s.evaluate_dagger_at_linv().unwrap(), c("L/(L-1)"));
        let s = RationalMotSeries::single("(L-1)*L*T", &[(1, 1, 1)]).unwrap();
        assert!(matches!(
            s.evaluate_dagger_at_linv(),
            Err(Error::NotDagger { a: 1, b: 1 })
        ));
        let s = RationalMotSeries::single("1", &[(1, 2, 1)]).unwrap();
        assert_eq!(s.evaluate_dagger_at_linv().unwrap(), c("L/(L-1)"));
    }

    #[test]
    fn specialization() {
        let vars = vec!["T_a".to_string(), "T_b".to_string()];
        let s = RationalMotSeries::new(
            LaurentPolyMot::parse("T_a*T_b", &vars).unwrap(),
            vec![DenomFactor::new(1, vec![1, 0], 1)],
        )
        .unwrap();
        let sp = s.specialize_lambda(&[2, 3], "T").unwrap();
        assert_eq!(sp, RationalMotSeries::single("T^5", &[(1, 2, 1)]).unwrap());
        // T_a ↦ T^{ρ-1} on 1/(1 - L^{ρ-1} T_a) with ρ = 3
        let s = RationalMotSeries::new(
            LaurentPolyMot::one(&vars),
            vec![DenomFactor::new(2, vec![1, 0], 1)],
        )
        .unwrap();
        let sp = s.specialize_lambda(&[2, 1], "T").unwrap();
        assert_eq!(sp, RationalMotSeries::single("1", &[(2, 2, 1)]).unwrap());
    }

    #[test]
    fn merge_and_reduce_preserve_expansion() {
        let s = RationalMotSeries::single("1 + T", &[(1, 2, 1), (2, 4, 2), (0, 1, 1)]).unwrap();
        let m = s.merge_proportional().unwrap();
        assert_eq!(m.factors().len(), 2);
        assert_eq!(m.expand(30).unwrap(), s.expand(30).unwrap());
        let r = RationalMotSeries::single("1 - L*T", &[(1, 1, 2)])
            .unwrap()
            .reduce()
            .unwrap();
        assert_eq!(r, RationalMotSeries::single("1", &[(1, 1, 1)]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = RationalMotSeries::single("L + (L-1)*L*T", &[(1, 1, 1)]).unwrap();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back: SeriesJson = serde_json::from_str(&j).unwrap();
        assert_eq!(RationalMotSeries::from_json(&back).unwrap(), s);
        let bad = SeriesJson {
            vars: None,
            num: "1".into(),
            factors: vec![(1, vec![1], 1)],
            dagger: Some(true),
        };
        assert!(RationalMotSeries::from_json(&bad).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }
}
