//! Exact values in `Z[ζ_p][1/p]`.
//!
//! A value is `(Σ_{k<p} c_k ζ^k) / p^e`. The coefficient vector is kept
//! reduced by `1 + ζ + ... + ζ^{p-1} = 0` so that `c_{p-1} = 0`, and `e` is
//! minimal, which makes the representation canonical.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycValue {
    p: u64,
    coeffs: Vec<i128>,
    den_exp: i64,
}

/// Reduce a raw coefficient vector (length p) so the last entry is 0.
pub(crate) fn reduce_raw<T>(v: &mut [T])
where
    T: Copy + std::ops::SubAssign,
{
    let last = v[v.len() - 1];
    for x in v.iter_mut() {
        *x -= last;
    }
}

impl CycValue {
    pub fn from_raw(p: u64, mut coeffs: Vec<i128>, den_exp: i64) -> Self {
        assert_eq!(
            coeffs.len() as u64,
            p,
            "coefficient vector must have length p"
        );
        reduce_raw(&mut coeffs);
        let mut v = CycValue { p, coeffs, den_exp };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.coeffs.iter().all(|c| *c == 0) {
            self.den_exp = 0;
            return;
        }
        let p = self.p as i128;
        while self.coeffs.iter().all(|c| c % p == 0) {
            for c in self.coeffs.iter_mut() {
                *c /= p;
            }
            self.den_exp -= 1;
        }
    }

    pub fn zero(p: u64) -> Self {
        CycValue {
            p,
            coeffs: vec![0; p as usize],
            den_exp: 0,
        }
    }

    pub fn integer(p: u64, n: i128) -> Self {
        let mut c = vec![0; p as usize];
        c[0] = n;
        CycValue::from_raw(p, c, 0)
    }

    pub fn one(p: u64) -> Self {
        CycValue::integer(p, 1)
    }

    /// `ψ(u) = ζ_p^u`.
    pub fn zeta_pow(p: u64, u: u64) -> Self {
        let mut c = vec![0; p as usize];
        c[(u % p) as usize] = 1;
        CycValue::from_raw(p, c, 0)
    }

    /// `p^k` for any integer k.
    pub fn p_pow(p: u64, k: i64) -> Self {
        CycValue::from_raw(
            p,
            {
                let mut c = vec![0; p as usize];
                c[0] = 1;
                c
            },
            -k,
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficients `c_0..c_{p-1}` of the numerator (with `c_{p-1} = 0`).
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn den_exp(&self) -> i64 {
        self.den_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn aligned(&self, e: i64) -> Vec<i128> {
        let f = (self.p as i128).pow((e - self.den_exp) as u32);
        self.coeffs.iter().map(|c| c * f).collect()
    }

    pub fn add(&self, o: &CycValue) -> CycValue {
        assert_eq!(self.p, o.p, "mixing characters of different primes");
        let e = self.den_exp.max(o.den_exp);
        let a = self.aligned(e);
        let b = o.aligned(e);
        CycValue::from_raw(self.p, a.iter().zip(&b).map(|(x, y)| x + y).collect(), e)
    }

    pub fn neg(&self) -> CycValue {
        CycValue::from_raw(
            self.p,
            self.coeffs.iter().map(|c| -c).collect(),
            self.den_exp,
        )
    }

    pub fn sub(&self, o: &CycValue) -> CycValue {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CycValue) -> CycValue {
        assert_eq!(self.p, o.p, "mixing characters of different primes");
        let p = self.p as usize;
        let mut c = vec![0i128; p];
        for (i, x) in self.coeffs.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                c[(i + j) % p] += x * y;
            }
        }
        CycValue::from_raw(self.p, c, self.den_exp + o.den_exp)
    }

    /// Multiply by `p^k`.
    pub fn mul_p_pow(&self, k: i64) -> CycValue {
        let mut v = self.clone();
        if !v.is_zero() {
            v.den_exp -= k;
            v.normalize();
        }
        v
    }

    pub fn sum<'a>(p: u64, it: impl IntoIterator<Item = &'a CycValue>) -> CycValue {
        it.into_iter().fold(CycValue::zero(p), |a, b| a.add(b))
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().any(|c| *c != 0) {
            return None;
        }
        let num = BigInt::from(self.coeffs[0]);
        let pp = BigInt::from(self.p).pow(self.den_exp.unsigned_abs() as u32);
        Some(if self.den_exp >= 0 {
            BigRational::new(num, pp)
        } else {
            BigRational::from_integer(num * pp)
        })
    }

    pub fn from_rational_pow(p: u64, r: &BigRational) -> Option<CycValue> {
        // only denominators that are powers of p are representable
        let mut den = r.denom().clone();
        let mut e = 0i64;
        let pb = BigInt::from(p);
        while (&den % &pb).is_zero() {
            den /= &pb;
            e += 1;
        }
        if den != BigInt::from(1) {
            return None;
        }
        let n: i128 = r.numer().try_into().ok()?;
        let mut c = vec![0; p as usize];
        c[0] = n;
        Some(CycValue::from_raw(p, c, e))
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let term = match (mono.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => mono,
                (false, -1) => format!("-{mono}"),
                (false, c) => format!("{c}*{mono}"),
            };
            parts.push(term);
        }
        let num = parts.join(" + ").replace("+ -", "- ");
        match self.den_exp {
            0 => write!(f, "{num}"),
            e if e > 0 => write!(f, "({num})/{}", (self.p as i128).pow(e as u32)),
            e => write!(f, "({num})*{}", (self.p as i128).pow((-e) as u32)),
        }
    }
}

impl fmt::Debug for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycValue[p={}]({self})", self.p)
    }
}
