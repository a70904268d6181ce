//! Laurent polynomials in named variables with class coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grot_ring::MotClass;
use crate::text::{self, Evaluator};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolyMot {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, MotClass>,
}

impl LaurentPolyMot {
    pub fn zero(vars: &[String]) -> Self {
        LaurentPolyMot {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: MotClass) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, MotClass::one())
    }

    pub fn monomial(vars: &[String], exps: Vec<i64>, c: MotClass) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, MotClass::one())
    }

    /// Single-variable polynomial `Σ c_k T^k` from a dense coefficient list.
    pub fn from_dense(var: &str, coeffs: &[MotClass]) -> Self {
        let vars = vec![var.to_string()];
        let mut p = Self::zero(&vars);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(vec![k as i64], c.clone());
            }
        }
        p
    }

    pub fn from_terms(
        vars: &[String],
        terms: impl IntoIterator<Item = (Vec<i64>, MotClass)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, MotClass> {
        &self.terms
    }

    pub fn coeff(&self, e: &[i64]) -> MotClass {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: &MotClass) {
        assert_eq!(e.len(), self.vars.len(), "exponent vector length");
        let entry = self.terms.entry(e.clone()).or_default();
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Smallest exponent of each variable (0 for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![0; self.nvars()];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        }
        m
    }

    pub fn max_exponents(&self) -> Vec<i64> {
        let mut m = vec![0; self.nvars()];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        }
        m
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|x| *x < 0))
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable sets differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -&*c;
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut p = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, &(ca * cb));
            }
        }
        p
    }

    pub fn scale(&self, c: &MotClass) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), &(x * c));
        }
        p
    }

    /// Multiply by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let e2 = e.iter().zip(shift).map(|(x, y)| x + y).collect();
            p.terms.insert(e2, c.clone());
        }
        p
    }

    pub fn pow_u(&self, n: u32) -> Self {
        (0..n).fold(Self::one(&self.vars), |acc, _| acc.mul(self))
    }

    /// Substitute class values for every variable.
    pub fn substitute(&self, values: &[MotClass]) -> Result<MotClass> {
        assert_eq!(values.len(), self.nvars());
        let mut acc = MotClass::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, k) in values.iter().zip(e) {
                t = &t * &v.pow(*k)?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Map each monomial `∏ X_i^{e_i}` to `T^{Σ λ_i e_i}` in a single variable.
    pub fn specialize(&self, lambda: &[i64], var: &str) -> Self {
        let vars = vec![var.to_string()];
        let mut p = Self::zero(&vars);
        for (e, c) in &self.terms {
            let k = e.iter().zip(lambda).map(|(x, l)| x * l).sum();
            p.add_term(vec![k], c);
        }
        p
    }

    /// Dense coefficient list for a single-variable polynomial with
    /// nonnegative exponents.
    pub fn to_dense(&self) -> Result<Vec<MotClass>> {
        if self.nvars() != 1 || self.has_negative_exponents() {
            return Err(Error::InvalidInput(
                "expected a single-variable polynomial with nonnegative exponents".into(),
            ));
        }
        let deg = self.max_exponents()[0];
        let mut v = vec![MotClass::zero(); if self.is_zero() { 0 } else { deg as usize + 1 }];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        Ok(v)
    }

    pub fn parse(s: &str, vars: &[String]) -> Result<Self> {
        text::parse(s)?.eval(&LaurentEvaluator { vars })
    }

    fn render_monomial(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (v, k) in self.vars.iter().zip(e) {
            match *k {
                0 => {}
                1 => parts.push(v.clone()),
                k => parts.push(format!("{v}^{k}")),
            }
        }
        parts.join("*")
    }
}

fn simple_coefficient(c: &MotClass) -> bool {
    c.as_integer().is_some()
        || (c.terms().len() == 1
            && c.cyclotomic_denominator().is_empty()
            && c.l_exponent() >= 0
            && c.terms()
                .values()
                .next()
                .unwrap()
                .coeffs()
                .iter()
                .filter(|x| !x.is_zero())
                .count()
                == 1
            && !c.has_symbols())
}

impl fmt::Display for LaurentPolyMot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, ties broken by exponent vector.
        let mut keys: Vec<&Vec<i64>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            sb.cmp(&sa).then_with(|| b.cmp(a))
        });
        for (i, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono = self.render_monomial(e);
            let neg_simple = simple_coefficient(c) && c.to_string().starts_with('-');
            let (sep, body) = if neg_simple {
                (" - ", -c)
            } else {
                (" + ", c.clone())
            };
            if i == 0 {
                if neg_simple {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sep}")?;
            }
            let cs = body.to_string();
            let cs = if simple_coefficient(&body) {
                cs
            } else {
                format!("({cs})")
            };
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if body.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{cs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolyMot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolyMot[{}]({self})", self.vars.join(","))
    }
}

struct LaurentEvaluator<'a> {
    vars: &'a [String],
}

impl LaurentEvaluator<'_> {
    fn as_constant(&self, p: &LaurentPolyMot) -> Option<MotClass> {
        match p.terms.len() {
            0 => Some(MotClass::zero()),
            1 => {
                let (e, c) = p.terms.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl Evaluator for LaurentEvaluator<'_> {
    type Value = LaurentPolyMot;
    fn int(&self, n: &BigInt) -> Result<LaurentPolyMot> {
        Ok(LaurentPolyMot::constant(
            self.vars,
            MotClass::from_bigint(n.clone()),
        ))
    }
    fn var(&self, name: &str) -> Result<LaurentPolyMot> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(LaurentPolyMot::var(self.vars, i));
        }
        if name == "L" {
            return Ok(LaurentPolyMot::constant(self.vars, MotClass::l()));
        }
        Err(Error::InvalidInput(format!(
            "unknown variable `{name}`; declared: {}",
            self.vars.join(", ")
        )))
    }
    fn sym(&self, name: &str) -> Result<LaurentPolyMot> {
        Ok(LaurentPolyMot::constant(self.vars, MotClass::symbol(name)))
    }
    fn add(&self, a: LaurentPolyMot, b: LaurentPolyMot) -> Result<LaurentPolyMot> {
        Ok(a.add(&b))
    }
    fn sub(&self, a: LaurentPolyMot, b: LaurentPolyMot) -> Result<LaurentPolyMot> {
        Ok(a.sub(&b))
    }
    fn mul(&self, a: LaurentPolyMot, b: LaurentPolyMot) -> Result<LaurentPolyMot> {
        Ok(a.mul(&b))
    }
    fn div(&self, a: LaurentPolyMot, b: LaurentPolyMot) -> Result<LaurentPolyMot> {
        if let Some(c) = self.as_constant(&b) {
            return Ok(a.scale(&c.inv()?));
        }
        if b.terms.len() == 1 {
            let (e, c) = b.terms.iter().next().unwrap();
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            return Ok(a.shift(&neg).scale(&c.inv()?));
        }
        Err(Error::InvalidInput(
            "division is only allowed by a unit monomial".into(),
        ))
    }
    fn neg(&self, a: LaurentPolyMot) -> Result<LaurentPolyMot> {
        Ok(a.neg())
    }
    fn pow(&self, a: LaurentPolyMot, e: i64) -> Result<LaurentPolyMot> {
        if e >= 0 {
            return Ok(a.pow_u(e as u32));
        }
        let one = LaurentPolyMot::one(self.vars);
        let inv = self.div(one, a)?;
        Ok(inv.pow_u((-e) as u32))
    }
}

impl LaurentPolyMot {
    /// `true` iff the polynomial is the constant 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| {
                e.iter().all(|x| *x == 0) && c.as_integer() == Some(BigInt::one())
            })
    }
}
