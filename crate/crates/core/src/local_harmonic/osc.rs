//! Exponential sums and the oscillatory integrals
//! `I(m, d, a) = ∫_{ord x = m} ψ(r(a x^d)) dx` for the pairing `r(a) = a_0`.

use rayon::prelude::*;

use super::cyc::CycValue;
use super::fplaurent::FpLaurent;
use super::window::{is_prime, WINDOW_CAP};
use crate::error::{Error, Result};
use crate::grot_ring::MotClass;

/// Cap on the number of digit tuples enumerated by the brute-force sums.
pub const OSC_CAP: u128 = 10_000_000;

/// `Σ_{x ∈ F_q^dim} ψ(f(x))` for the linear form with the given
/// coefficients, by literal summation and by the closed form
/// (`q^dim` if `f = 0`, else 0).
pub fn exp_sum_linear(dim: usize, coeffs: &[u64], q: u64) -> Result<(CycValue, CycValue)> {
    check_prime(q)?;
    if coeffs.len() != dim {
        return Err(Error::InvalidInput(format!(
            "linear form has {} coefficients for dimension {dim}",
            coeffs.len()
        )));
    }
    let size = cap_check("linear exponential sum", q, dim as u32, WINDOW_CAP)?;
    let mut counts = vec![0i128; q as usize];
    for mut i in 0..size {
        let mut s = 0u64;
        for c in coeffs {
            s += c % q * (i as u64 % q);
            i /= q as usize;
        }
        counts[(s % q) as usize] += 1;
    }
    let literal = CycValue::from_raw(q, counts, 0);
    let closed = if coeffs.iter().all(|c| c % q == 0) {
        CycValue::p_pow(q, dim as i64)
    } else {
        CycValue::zero(q)
    };
    Ok((literal, closed))
}

fn check_prime(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidInput(format!("q = {q} must be prime")));
    }
    Ok(())
}

fn cap_check(what: &str, q: u64, digits: u32, cap: u128) -> Result<usize> {
    let needed = (q as u128).checked_pow(digits).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: what.to_string(),
            needed,
            cap,
        });
    }
    Ok(needed as usize)
}

/// Outcome of the closed-form evaluation of `I(m, d, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OscClosed {
    Value(MotClass),
    /// `ord a + m d = 0`: the value depends on the base integral `I(0, d, b)`.
    NeedsBaseCase,
}

/// `I(m, d, a)` from `ord a` alone: 0 if `ord a + md < 0`,
/// `L^{-m}(1 - L^{-1})` if `ord a + md > 0`. `None` stands for `a = 0`.
pub fn oscillatory_closed(m: i64, d: u32, ord_a: Option<i64>) -> OscClosed {
    let shell = || MotClass::l_pow(-m) * (MotClass::one() - MotClass::l_pow(-1));
    match ord_a.map(|o| o + m * d as i64) {
        None => OscClosed::Value(shell()),
        Some(s) if s < 0 => OscClosed::Value(MotClass::zero()),
        Some(s) if s > 0 => OscClosed::Value(shell()),
        Some(_) => OscClosed::NeedsBaseCase,
    }
}

/// Number of digits of `x` (from `t^m` on) that determine `(a x^d)_0`.
pub fn required_depth(m: i64, d: u32, a: &FpLaurent) -> i64 {
    match a.ord() {
        Some(o) => (1 - o - m * d as i64).max(1),
        None => 1,
    }
}

/// Truncated power `u^d mod t^len` of a digit vector.
fn trunc_pow(u: &[u64], d: u32, p: u64, out: &mut Vec<u64>, tmp: &mut Vec<u64>) {
    let len = u.len();
    out.clear();
    out.resize(len, 0);
    out[0] = 1;
    for _ in 0..d {
        tmp.clear();
        tmp.resize(len, 0);
        for (i, x) in out.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in u[..len - i].iter().enumerate() {
                tmp[i + j] += x * y;
            }
        }
        for (o, t) in out.iter_mut().zip(tmp.iter()) {
            *o = t % p;
        }
    }
}

/// `Σ_k counts[k] ζ^k` scaled by `q^{-e}`.
fn from_counts(q: u64, counts: Vec<i128>, e: i64) -> CycValue {
    CycValue::from_raw(q, counts, e)
}

/// `I(m, d, a)` by summing over all digit tuples `(x_m, ..., x_{m+depth-1})`,
/// `x_m ≠ 0`.
pub fn oscillatory_brute(m: i64, d: u32, a: &FpLaurent, depth: i64) -> Result<CycValue> {
    let q = a.p();
    check_prime(q)?;
    if d == 0 {
        return Err(Error::InvalidInput("exponent d must be positive".into()));
    }
    let required = required_depth(m, d, a);
    if depth < required {
        return Err(Error::InsufficientDepth {
            what: format!("I({m}, {d}, {a})"),
            required,
            given: depth,
        });
    }
    let len = depth as usize;
    let size = cap_check("oscillatory brute force", q, depth as u32, OSC_CAP)?;
    // x = t^m u, so (a x^d)_0 = Σ_i a_i (u^d)_{-i-md}.
    let taps: Vec<(usize, u64)> = match a.ord() {
        None => Vec::new(),
        Some(o) => (o..=a.top().unwrap())
            .filter_map(|i| {
                let j = -i - m * d as i64;
                (0..len as i64)
                    .contains(&j)
                    .then(|| (j as usize, a.coeff(i)))
            })
            .filter(|(_, c)| *c != 0)
            .collect(),
    };
    let per_lead = size / q as usize;
    let counts = (1..q)
        .into_par_iter()
        .map(|lead| {
            let mut counts = vec![0i128; q as usize];
            let mut u = vec![0u64; len];
            let (mut pw, mut tmp) = (Vec::new(), Vec::new());
            for mut rest in 0..per_lead {
                u[0] = lead;
                for digit in u[1..].iter_mut() {
                    *digit = rest as u64 % q;
                    rest /= q as usize;
                }
                trunc_pow(&u, d, q, &mut pw, &mut tmp);
                let s: u64 = taps.iter().map(|(j, c)| c * pw[*j]).sum();
                counts[(s % q) as usize] += 1;
            }
            counts
        })
        .reduce(
            || vec![0i128; q as usize],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(from_counts(q, counts, m + depth))
}

/// `I(m, d, a)` via the closed form, with the boundary case
/// `ord a + md = 0` reduced to `q^{-m-1} Σ_{u ∈ F_q^×} ψ(b_0 u^d)`,
/// `b = a t^{md}`.
pub fn oscillatory_closed_at_q(m: i64, d: u32, a: &FpLaurent) -> Result<CycValue> {
    let q = a.p();
    check_prime(q)?;
    match oscillatory_closed(m, d, a.ord()) {
        OscClosed::Value(v) if v.is_zero() => Ok(CycValue::zero(q)),
        OscClosed::Value(_) => Ok(CycValue::p_pow(q, -m).sub(&CycValue::p_pow(q, -m - 1))),
        OscClosed::NeedsBaseCase => {
            let b0 = a.ac().unwrap();
            let mut counts = vec![0i128; q as usize];
            for u in 1..q {
                let ud = (0..d).fold(1u64, |acc, _| acc * u % q);
                counts[(b0 * ud % q) as usize] += 1;
            }
            Ok(from_counts(q, counts, m + 1))
        }
    }
}

/// Whether `x` is a `d`-th power in `F_q^×`.
pub fn is_dth_power(x: u64, d: u32, q: u64) -> bool {
    let x = x % q;
    x != 0 && (1..q).any(|u| (0..d).fold(1u64, |acc, _| acc * u % q) == x)
}

/// `∫_{ξ + t^n R} ψ((a x^d)_0) dx` by brute force, for `ξ ∈ R`, `n ≥ 0`.
pub fn shell_integral_brute(a: &FpLaurent, n: i64, d: u32, xi: &FpLaurent) -> Result<CycValue> {
    let q = a.p();
    check_prime(q)?;
    if n < 0 {
        return Err(Error::InvalidInput(format!(
            "shell radius n = {n} must be nonnegative"
        )));
    }
    if xi.ord().is_some_and(|o| o < 0) {
        return Err(Error::InvalidInput(format!("center {xi} is not integral")));
    }
    // (a x^d)_0 needs the digits of x up to -ord a.
    let top = a.ord().map_or(-1, |o| -o);
    let free = (top - n + 1).max(0);
    let len = (top + 1).max(n).max(1) as usize;
    let size = cap_check("shell brute force", q, free as u32, OSC_CAP)?;
    let taps: Vec<(usize, u64)> = match a.ord() {
        None => Vec::new(),
        Some(o) => (o..=a.top().unwrap())
            .filter(|i| (-i) >= 0 && (-i) < len as i64)
            .map(|i| ((-i) as usize, a.coeff(i)))
            .filter(|(_, c)| *c != 0)
            .collect(),
    };
    let mut counts = vec![0i128; q as usize];
    let mut x = vec![0u64; len];
    let (mut pw, mut tmp) = (Vec::new(), Vec::new());
    for mut rest in 0..size {
        for (k, digit) in x.iter_mut().enumerate() {
            if (k as i64) < n {
                *digit = xi.coeff(k as i64);
            } else {
                *digit = rest as u64 % q;
                rest /= q as usize;
            }
        }
        trunc_pow(&x, d, q, &mut pw, &mut tmp);
        let s: u64 = taps.iter().map(|(j, c)| c * pw[*j]).sum();
        counts[(s % q) as usize] += 1;
    }
    Ok(from_counts(q, counts, n + free))
}

/// Brute-force check of `∫_{ξ + t^n R} ψ((a x^d)_0) dx = 0` for a unit `ξ`
/// under `ord a + n ≤ 0 < ord a + 2n`.
pub fn shell_vanishing_check(a: &FpLaurent, n: i64, d: u32, xi: &FpLaurent) -> Result<bool> {
    if xi.ord() != Some(0) {
        return Err(Error::InvalidInput(format!("center {xi} is not a unit")));
    }
    let Some(o) = a.ord() else {
        return Err(Error::Hypothesis("a = 0 has no order".into()));
    };
    if !(o + n <= 0 && 0 < o + 2 * n) {
        return Err(Error::Hypothesis(format!(
            "need ord(a) + n <= 0 < ord(a) + 2n, got ord(a) = {o}, n = {n}"
        )));
    }
    Ok(shell_integral_brute(a, n, d, xi)?.is_zero())
}

/// Brute-force check of `I(m, d, a) = q^{-m} I(0, d, b)` for `b` with
/// `ord b = ord a + md` and `ac(b)/ac(a)` a `d`-th power.
pub fn scaling_check(m: i64, d: u32, a: &FpLaurent, b: &FpLaurent) -> Result<bool> {
    let q = a.p();
    let (Some(oa), Some(ob)) = (a.ord(), b.ord()) else {
        return Err(Error::Hypothesis("a and b must be nonzero".into()));
    };
    if ob != oa + m * d as i64 {
        return Err(Error::Hypothesis(format!(
            "ord b = {ob} differs from ord a + md = {}",
            oa + m * d as i64
        )));
    }
    let ratio = b.ac().unwrap() * inv_mod(a.ac().unwrap(), q) % q;
    if !is_dth_power(ratio, d, q) {
        return Err(Error::Hypothesis(format!(
            "ac(b)/ac(a) = {ratio} is not a {d}-th power mod {q}"
        )));
    }
    let lhs = oscillatory_brute(m, d, a, required_depth(m, d, a))?;
    let rhs = oscillatory_brute(0, d, b, required_depth(0, d, b))?.mul_p_pow(-m);
    Ok(lhs == rhs)
}

pub(crate) fn inv_mod(x: u64, q: u64) -> u64 {
    (1..q).find(|y| x * y % q == 1).expect("unit mod prime")
}

/// A way of evaluating `I(m, d, a)` at `L ↦ q`.
pub trait OscillatoryMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn integral(&self, m: i64, d: u32, a: &FpLaurent) -> Result<CycValue>;
}

/// Closed forms, boundary case by a single-digit sum.
pub struct ClosedOsc;

/// Full character sum at the minimal sufficient depth.
pub struct BruteOsc;

impl OscillatoryMethod for ClosedOsc {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn integral(&self, m: i64, d: u32, a: &FpLaurent) -> Result<CycValue> {
        oscillatory_closed_at_q(m, d, a)
    }
}

impl OscillatoryMethod for BruteOsc {
    fn name(&self) -> &'static str {
        "brute"
    }
    fn integral(&self, m: i64, d: u32, a: &FpLaurent) -> Result<CycValue> {
        oscillatory_brute(m, d, a, required_depth(m, d, a))
    }
}
