//! Schwartz–Bruhat functions of level `(M, N)` on `F_p((t))^n`: functions on
//! `(t^M R / t^N R)^n`, stored as dense tables of cyclotomic values.

use serde::{Deserialize, Serialize};

use super::cyc::CycValue;
use super::fplaurent::FpLaurent;
use crate::error::{Error, Result};

/// Hard cap on the number of points of a window.
pub const WINDOW_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalWindow {
    pub q: u64,
    pub n: u32,
    pub lo: i64,
    pub hi: i64,
}

impl LocalWindow {
    pub fn new(q: u64, n: u32, lo: i64, hi: i64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::InvalidInput(format!("q = {q} must be prime")));
        }
        if lo > hi {
            return Err(Error::InvalidInput(format!("level ({lo}, {hi}) has M > N")));
        }
        let w = LocalWindow { q, n, lo, hi };
        w.size()?;
        Ok(w)
    }

    /// Digits per coordinate.
    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of digit axes `n (N - M)`.
    pub fn axes(&self) -> usize {
        self.n as usize * self.len()
    }

    pub fn size(&self) -> Result<usize> {
        let needed = (self.q as u128)
            .checked_pow(self.axes() as u32)
            .unwrap_or(u128::MAX);
        if needed > WINDOW_CAP {
            return Err(Error::CapExceeded {
                what: format!(
                    "window q={} n={} level ({}, {})",
                    self.q, self.n, self.lo, self.hi
                ),
                needed,
                cap: WINDOW_CAP,
            });
        }
        Ok(needed as usize)
    }

    /// Digits of point `idx`: `digits[c][k]` is the coefficient of `t^{M+k}`
    /// in coordinate `c`.
    pub fn digits(&self, mut idx: usize) -> Vec<Vec<u64>> {
        let q = self.q as usize;
        (0..self.n)
            .map(|_| {
                (0..self.len())
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn index(&self, digits: &[Vec<u64>]) -> usize {
        let q = self.q as usize;
        let mut idx = 0usize;
        for coord in digits.iter().rev() {
            for d in coord.iter().rev() {
                idx = idx * q + *d as usize;
            }
        }
        idx
    }

    pub fn point(&self, idx: usize) -> Vec<FpLaurent> {
        self.digits(idx)
            .into_iter()
            .map(|d| FpLaurent::new(self.q, self.lo, d))
            .collect()
    }

    /// Index of the class of `x`, or `None` if some coordinate lies outside
    /// `t^M R`.
    pub fn locate(&self, x: &[FpLaurent]) -> Result<Option<usize>> {
        if x.len() != self.n as usize {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, window has {}",
                x.len(),
                self.n
            )));
        }
        let mut digits = Vec::with_capacity(x.len());
        for c in x {
            if c.p() != self.q {
                return Err(Error::InvalidInput("point over a different prime".into()));
            }
            if c.ord().is_some_and(|o| o < self.lo) {
                return Ok(None);
            }
            digits.push((self.lo..self.hi).map(|k| c.coeff(k)).collect::<Vec<_>>());
        }
        Ok(Some(self.index(&digits)))
    }
}

pub(crate) fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// A Schwartz–Bruhat function on a [`LocalWindow`], values in `Z[ζ_q][1/q]`.
///
/// Entry `k` is `data[k q .. (k+1) q] / q^den_exp`; blocks are reduced so the
/// last coefficient is zero and `den_exp` is minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SBLocal {
    window: LocalWindow,
    den_exp: i64,
    data: Vec<i128>,
}

impl SBLocal {
    pub(crate) fn from_data(window: LocalWindow, data: Vec<i128>, den_exp: i64) -> Self {
        let mut s = SBLocal {
            window,
            den_exp,
            data,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let p = self.window.q as usize;
        for block in self.data.chunks_mut(p) {
            super::cyc::reduce_raw(block);
        }
        if self.data.iter().all(|c| *c == 0) {
            self.den_exp = 0;
            return;
        }
        let pp = p as i128;
        while self.data.iter().all(|c| c % pp == 0) {
            for c in self.data.iter_mut() {
                *c /= pp;
            }
            self.den_exp -= 1;
        }
    }

    pub fn zero(window: LocalWindow) -> Result<Self> {
        let size = window.size()?;
        Ok(SBLocal {
            window,
            den_exp: 0,
            data: vec![0; size * window.q as usize],
        })
    }

    pub fn from_fn(window: LocalWindow, f: impl Fn(&[Vec<u64>]) -> CycValue) -> Result<Self> {
        let size = window.size()?;
        let vals: Vec<CycValue> = (0..size).map(|i| f(&window.digits(i))).collect();
        Ok(SBLocal::from_values(window, &vals))
    }

    pub fn from_int_fn(window: LocalWindow, f: impl Fn(&[Vec<u64>]) -> i64) -> Result<Self> {
        let p = window.q;
        SBLocal::from_fn(window, |d| CycValue::integer(p, f(d) as i128))
    }

    /// Table from per-point values, in index order.
    pub fn from_values(window: LocalWindow, vals: &[CycValue]) -> Self {
        let p = window.q as usize;
        let e = vals.iter().map(|v| v.den_exp()).max().unwrap_or(0);
        let mut data = vec![0i128; vals.len() * p];
        for (k, v) in vals.iter().enumerate() {
            assert_eq!(v.p(), window.q, "value over a different prime");
            let f = (p as i128).pow((e - v.den_exp()) as u32);
            for (j, c) in v.coeffs().iter().enumerate() {
                data[k * p + j] = c * f;
            }
        }
        SBLocal::from_data(window, data, e)
    }

    /// Characteristic function of `∏_c (center_c + t^radius R)` inside the
    /// window; needs `M ≤ radius ≤ N`.
    pub fn ball(window: LocalWindow, center: &[FpLaurent], radius: i64) -> Result<Self> {
        if radius < window.lo || radius > window.hi {
            return Err(Error::InvalidInput(format!(
                "ball radius {radius} outside level ({}, {})",
                window.lo, window.hi
            )));
        }
        if center.len() != window.n as usize {
            return Err(Error::InvalidInput(
                "ball center has wrong dimension".into(),
            ));
        }
        if center
            .iter()
            .any(|c| c.ord().is_some_and(|o| o < window.lo))
        {
            return SBLocal::zero(window);
        }
        let lo = window.lo;
        SBLocal::from_int_fn(window, |d| {
            let inside = d
                .iter()
                .zip(center)
                .all(|(digits, c)| (lo..radius).all(|k| digits[(k - lo) as usize] == c.coeff(k)));
            inside as i64
        })
    }

    /// Characteristic function of `(t^r R)^n`.
    pub fn unit_ball(window: LocalWindow, r: i64) -> Result<Self> {
        let z = vec![FpLaurent::zero(window.q); window.n as usize];
        SBLocal::ball(window, &z, r)
    }

    pub fn window(&self) -> LocalWindow {
        self.window
    }

    pub fn den_exp(&self) -> i64 {
        self.den_exp
    }

    pub(crate) fn raw(&self) -> &[i128] {
        &self.data
    }

    pub fn value(&self, idx: usize) -> CycValue {
        let p = self.window.q as usize;
        CycValue::from_raw(
            self.window.q,
            self.data[idx * p..(idx + 1) * p].to_vec(),
            self.den_exp,
        )
    }

    pub fn values(&self) -> Vec<CycValue> {
        (0..self.data.len() / self.window.q as usize)
            .map(|i| self.value(i))
            .collect()
    }

    /// `φ(x)`, zero outside `(t^M R)^n`.
    pub fn eval(&self, x: &[FpLaurent]) -> Result<CycValue> {
        Ok(match self.window.locate(x)? {
            Some(i) => self.value(i),
            None => CycValue::zero(self.window.q),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| *c == 0)
    }

    /// `q^{-nN} Σ_x φ(x)`.
    pub fn integrate(&self) -> CycValue {
        let p = self.window.q as usize;
        let mut acc = vec![0i128; p];
        for block in self.data.chunks(p) {
            for (a, c) in acc.iter_mut().zip(block) {
                *a += c;
            }
        }
        let shift = self.window.n as i64 * self.window.hi;
        CycValue::from_raw(self.window.q, acc, self.den_exp + shift)
    }

    fn same_window(&self, o: &SBLocal) -> Result<()> {
        if self.window != o.window {
            return Err(Error::WindowMismatch(format!(
                "{:?} vs {:?}",
                self.window, o.window
            )));
        }
        Ok(())
    }

    fn aligned(&self, e: i64) -> Vec<i128> {
        let f = (self.window.q as i128).pow((e - self.den_exp) as u32);
        self.data.iter().map(|c| c * f).collect()
    }

    pub fn add(&self, o: &SBLocal) -> Result<SBLocal> {
        self.same_window(o)?;
        let e = self.den_exp.max(o.den_exp);
        let a = self.aligned(e);
        let b = o.aligned(e);
        Ok(SBLocal::from_data(
            self.window,
            a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            e,
        ))
    }

    pub fn neg(&self) -> SBLocal {
        SBLocal::from_data(
            self.window,
            self.data.iter().map(|c| -c).collect(),
            self.den_exp,
        )
    }

    pub fn sub(&self, o: &SBLocal) -> Result<SBLocal> {
        self.add(&o.neg())
    }

    /// Pointwise product with a constant.
    pub fn scale(&self, c: &CycValue) -> SBLocal {
        let vals: Vec<CycValue> = self.values().iter().map(|v| v.mul(c)).collect();
        SBLocal::from_values(self.window, &vals)
    }

    /// Multiply by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> SBLocal {
        SBLocal::from_data(self.window, self.data.clone(), self.den_exp - k)
    }

    /// Pointwise product of two functions on the same window.
    pub fn mul(&self, o: &SBLocal) -> Result<SBLocal> {
        self.same_window(o)?;
        let vals: Vec<CycValue> = self
            .values()
            .iter()
            .zip(o.values())
            .map(|(a, b)| a.mul(&b))
            .collect();
        Ok(SBLocal::from_values(self.window, &vals))
    }

    /// `x ↦ φ(-x)`.
    pub fn negate_argument(&self) -> SBLocal {
        let w = self.window;
        let p = w.q as usize;
        let size = self.data.len() / p;
        let mut data = vec![0i128; self.data.len()];
        for i in 0..size {
            let neg: Vec<Vec<u64>> = w
                .digits(i)
                .into_iter()
                .map(|c| c.into_iter().map(|d| (w.q - d) % w.q).collect())
                .collect();
            let j = w.index(&neg);
            data[j * p..(j + 1) * p].copy_from_slice(&self.data[i * p..(i + 1) * p]);
        }
        SBLocal {
            window: w,
            den_exp: self.den_exp,
            data,
        }
    }

    /// Map every point of `target` to a source index (or `None` for zero).
    fn remap(
        &self,
        target: LocalWindow,
        src: impl Fn(&[Vec<u64>]) -> Option<usize>,
    ) -> Result<SBLocal> {
        let p = target.q as usize;
        let size = target.size()?;
        let mut data = vec![0i128; size * p];
        for i in 0..size {
            if let Some(j) = src(&target.digits(i)) {
                data[i * p..(i + 1) * p].copy_from_slice(&self.data[j * p..(j + 1) * p]);
            }
        }
        Ok(SBLocal::from_data(target, data, self.den_exp))
    }

    /// `ι_*`: extension by zero to the level `(lo, N)` with `lo ≤ M`.
    pub fn extend_by_zero(&self, lo: i64) -> Result<SBLocal> {
        let w = self.window;
        if lo > w.lo {
            return Err(Error::InvalidInput(format!(
                "extension level {lo} above M = {}",
                w.lo
            )));
        }
        let target = LocalWindow { lo, ..w };
        let off = (w.lo - lo) as usize;
        self.remap(target, |d| {
            d.iter()
                .all(|c| c[..off].iter().all(|x| *x == 0))
                .then(|| w.index(&d.iter().map(|c| c[off..].to_vec()).collect::<Vec<_>>()))
        })
    }

    /// `ι^*`: restriction to `(t^lo R)^n` with `lo ≥ M`.
    pub fn restrict(&self, lo: i64) -> Result<SBLocal> {
        let w = self.window;
        if lo < w.lo || lo > w.hi {
            return Err(Error::InvalidInput(format!(
                "restriction level {lo} outside ({}, {})",
                w.lo, w.hi
            )));
        }
        let target = LocalWindow { lo, ..w };
        let off = (lo - w.lo) as usize;
        self.remap(target, |d| {
            let full: Vec<Vec<u64>> = d
                .iter()
                .map(|c| {
                    std::iter::repeat(0)
                        .take(off)
                        .chain(c.iter().copied())
                        .collect()
                })
                .collect();
            Some(w.index(&full))
        })
    }

    /// `π^*`: the same function viewed at the finer level `(M, hi)`, `hi ≥ N`.
    pub fn pullback(&self, hi: i64) -> Result<SBLocal> {
        let w = self.window;
        if hi < w.hi {
            return Err(Error::InvalidInput(format!(
                "pullback level {hi} below N = {}",
                w.hi
            )));
        }
        let target = LocalWindow { hi, ..w };
        let len = w.len();
        self.remap(target, |d| {
            Some(w.index(&d.iter().map(|c| c[..len].to_vec()).collect::<Vec<_>>()))
        })
    }

    /// `π_*`: sum over the fibres of `(t^M R/t^N R)^n → (t^M R/t^hi R)^n`.
    pub fn pushforward(&self, hi: i64) -> Result<SBLocal> {
        let w = self.window;
        if hi > w.hi || hi < w.lo {
            return Err(Error::InvalidInput(format!(
                "pushforward level {hi} outside ({}, {})",
                w.lo, w.hi
            )));
        }
        let target = LocalWindow { hi, ..w };
        let p = w.q as usize;
        let mut data = vec![0i128; target.size()? * p];
        let keep = target.len();
        for i in 0..self.data.len() / p {
            let d = w.digits(i);
            let j = target.index(&d.iter().map(|c| c[..keep].to_vec()).collect::<Vec<_>>());
            for k in 0..p {
                data[j * p + k] += self.data[i * p + k];
            }
        }
        Ok(SBLocal::from_data(target, data, self.den_exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrals() {
        let w = LocalWindow::new(3, 1, 0, 0).unwrap();
        let one = SBLocal::unit_ball(w, 0).unwrap();
        assert_eq!(one.integrate(), CycValue::one(3));

        let w = LocalWindow::new(3, 1, 0, 2).unwrap();
        let shell = SBLocal::from_int_fn(w, |d| (d[0][0] == 0 && d[0][1] != 0) as i64).unwrap();
        // q^{-1}(1 - q^{-1}) = 2/9
        assert_eq!(shell.integrate().to_string(), "2/9");

        let w = LocalWindow::new(3, 1, 0, 1).unwrap();
        let z = SBLocal::from_fn(w, |_| CycValue::zeta_pow(3, 1)).unwrap();
        assert_eq!(z.integrate(), CycValue::zeta_pow(3, 1));
    }

    #[test]
    fn level_changes() {
        let w = LocalWindow::new(2, 2, 0, 1).unwrap();
        let phi = SBLocal::from_int_fn(w, |d| (d[0][0] + 3 * d[1][0]) as i64).unwrap();
        let up = phi.pullback(2).unwrap();
        assert_eq!(up.integrate(), phi.integrate());
        assert_eq!(up.pushforward(1).unwrap(), phi.mul_q_pow(2));
        let ext = phi.extend_by_zero(-1).unwrap();
        assert_eq!(ext.integrate(), phi.integrate());
        assert_eq!(ext.restrict(0).unwrap(), phi);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            LocalWindow::new(5, 2, 0, 9),
            Err(Error::CapExceeded { .. })
        ));
        assert!(LocalWindow::new(4, 1, 0, 1).is_err());
    }
}
