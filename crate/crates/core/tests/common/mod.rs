//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use motzeta::global_poisson::{local_expand, FpPoly, Place, RatFn};
use motzeta::grot_ring::{count_realize, MotClass, SymbolRegistry};
use motzeta::local_harmonic::{CycValue, FpLaurent};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn q_pow(q: u64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(q)).pow(e.unsigned_abs() as i32);
    if e < 0 {
        b.recip()
    } else {
        b
    }
}

/// `L ↦ q`, no stratum symbols.
pub fn at_q(x: &MotClass, q: u64) -> BigRational {
    count_realize(x, q, &SymbolRegistry::new()).unwrap()
}

/// Exact value of a cyclotomic sum that is known to be rational.
pub fn rational(v: &CycValue) -> Option<BigRational> {
    v.to_rational()
}

/// Determinant by Gaussian elimination over `Q`.
pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut acc = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !m[*r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            acc = -acc;
        }
        let p = m[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            let f = &m[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    acc
}

/// `Res_T(1 - l^a T^b, 1 - l^{a2} T^{b2})` with `L` specialized to the
/// integer `l`, from the Sylvester matrix over `Q`.
pub fn resultant_at(a: i64, b: usize, a2: i64, b2: usize, l: i64) -> BigRational {
    let poly = |a: i64, b: usize| {
        let mut v = vec![BigRational::zero(); b + 1];
        v[0] = BigRational::one();
        v[b] = -BigRational::from_integer(BigInt::from(l).pow(a as u32));
        v
    };
    let (f, g) = (poly(a, b), poly(a2, b2));
    let size = b + b2;
    let mut rows = Vec::new();
    for i in 0..b2 {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[i + b - k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..b {
        let mut row = vec![BigRational::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[i + b2 - k] = c.clone();
        }
        rows.push(row);
    }
    det(rows)
}

/// Haar measure of `{x ∈ F_q[[t]] : ord x = m}`.
pub fn shell_measure(q: u64, m: u32) -> BigRational {
    (BigRational::one() - rat(1, q as i64)) * q_pow(q, -(m as i64))
}

/// Random Laurent polynomial with the given order and nonzero leading digit.
pub fn random_laurent(r: &mut impl Rng, q: u64, ord: i64, len: usize) -> FpLaurent {
    let mut digits = vec![r.gen_range(1..q)];
    digits.extend((1..len).map(|_| r.gen_range(0..q)));
    FpLaurent::new(q, ord, digits)
}

/// One coordinate of a product of balls at places of `P^1`: the ball at `s`
/// is `{ord_s x ≥ lo_s, x ≡ center_s mod t_s^{hi_s}}`, the unit ball at every
/// other place.
#[derive(Clone, Debug)]
pub struct BallSpec {
    pub place: Place,
    pub lo: i64,
    pub hi: i64,
    pub center: FpLaurent,
}

/// Number of `f ∈ F_q(t)` in a product of balls, by enumerating numerators
/// over the common denominator of the allowed poles.
pub fn count_in_balls(q: u64, balls: &[BallSpec]) -> u64 {
    let pole = |pl: Place| {
        balls
            .iter()
            .find(|b| b.place == pl)
            .map_or(0, |b| (-b.lo).max(0))
    };
    let mut den = FpPoly::one(q);
    let mut deg = pole(Place::Infinity);
    for c in 0..q {
        let k = pole(Place::Finite(c));
        den = den.mul(&FpPoly::linear(q, c).pow(k as u32));
        deg += k;
    }
    if deg < 0 {
        return 0;
    }
    let size = q.pow(deg as u32 + 1);
    let mut hits = 0;
    for idx in 0..size {
        let mut rest = idx;
        let coeffs: Vec<u64> = (0..=deg)
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect();
        let f = RatFn::new(FpPoly::new(q, coeffs), den.clone()).unwrap();
        let inside = balls.iter().all(|b| {
            let x = local_expand(&f, b.place, b.hi).unwrap();
            if x.ord().is_some_and(|o| o < b.lo) {
                return false;
            }
            (b.lo..b.hi).all(|k| x.coeff(k) == b.center.coeff(k))
        });
        hits += inside as u64;
    }
    hits
}

/// `k`-th forward difference of a sequence.
pub fn difference(v: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut cur = v.to_vec();
    for _ in 0..k {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}
