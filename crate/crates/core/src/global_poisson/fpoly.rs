//! Polynomials and rational functions over `F_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_harmonic::osc::inv_mod;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn constant(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![a])
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(p, 1)
    }

    /// `t^k`.
    pub fn t_pow(p: u64, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        FpPoly::new(p, c)
    }

    /// `t - a`.
    pub fn linear(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![(p - a % p) % p, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|x| self.p - x).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|x| x * (a % self.p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn pow(&self, e: u32) -> FpPoly {
        (0..e).fold(FpPoly::one(self.p), |acc, _| acc.mul(self))
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let inv = inv_mod(d.leading(), p);
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let f = r[k] * inv % p;
            q[k - dd] = f;
            if f != 0 {
                for (j, c) in d.c.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = (r[idx] + p * p - f * c % p) % p;
                }
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, c| (acc * x + c) % self.p)
    }

    /// `f(t + a)`.
    pub fn taylor_shift(&self, a: u64) -> FpPoly {
        let s = FpPoly::new(self.p, vec![a, 1]);
        self.c.iter().rev().fold(FpPoly::zero(self.p), |acc, c| {
            acc.mul(&s).add(&FpPoly::constant(self.p, *c))
        })
    }

    /// `t^{deg f} f(1/t)`.
    pub fn reversed(&self) -> FpPoly {
        let mut c = self.c.clone();
        c.reverse();
        FpPoly::new(self.p, c)
    }

    /// Multiplicity of `t = 0` as a root.
    pub fn valuation(&self) -> usize {
        self.c.iter().take_while(|x| **x == 0).count()
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: u64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        self.taylor_shift(a).valuation()
    }

    /// Roots in `F_p` with multiplicities, and whether they exhaust the degree.
    pub fn rational_roots(&self) -> (Vec<(u64, usize)>, bool) {
        let roots: Vec<(u64, usize)> = (0..self.p)
            .map(|a| (a, self.root_multiplicity(a)))
            .filter(|(_, m)| *m > 0)
            .collect();
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        let split = Some(total) == self.degree();
        (roots, split)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            parts.push(match (mono.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => mono,
                (false, c) => format!("{c}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[F_{}]({self})", self.p)
    }
}

/// A rational function `num/den` over `F_p` in lowest terms, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: FpPoly,
    den: FpPoly,
}

/// Config form: ascending coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatFnConfig {
    pub num: Vec<u64>,
    #[serde(default = "one_vec")]
    pub den: Vec<u64>,
}

fn one_vec() -> Vec<u64> {
    vec![1]
}

impl RatFn {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let p = num.p();
        if num.is_zero() {
            return Ok(RatFn {
                num,
                den: FpPoly::one(p),
            });
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lc = inv_mod(d.leading(), p);
        Ok(RatFn {
            num: n.scale(lc),
            den: d.scale(lc),
        })
    }

    pub fn from_poly(f: FpPoly) -> Self {
        let p = f.p();
        RatFn {
            num: f,
            den: FpPoly::one(p),
        }
    }

    pub fn zero(p: u64) -> Self {
        RatFn::from_poly(FpPoly::zero(p))
    }

    pub fn constant(p: u64, a: u64) -> Self {
        RatFn::from_poly(FpPoly::constant(p, a))
    }

    pub fn t(p: u64) -> Self {
        RatFn::from_poly(FpPoly::t_pow(p, 1))
    }

    pub fn from_config(p: u64, cfg: &RatFnConfig) -> Result<Self> {
        RatFn::new(
            FpPoly::new(p, cfg.num.clone()),
            FpPoly::new(p, cfg.den.clone()),
        )
    }

    pub fn p(&self) -> u64 {
        self.num.p()
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn scale(&self, a: u64) -> RatFn {
        RatFn::new(self.num.scale(a), self.den.clone()).expect("nonzero denominator")
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        if o.is_zero() {
            return Err(Error::InvalidInput(
                "division by zero rational function".into(),
            ));
        }
        RatFn::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn[F_{}]({self})", self.p())
    }
}
