//! Cyclotomic polynomials and small arithmetic helpers.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::poly::ZPoly;

thread_local! {
    static CACHE: RefCell<HashMap<u32, ZPoly>> = RefCell::new(HashMap::new());
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The d-th cyclotomic polynomial, via `Φ_d = ∏_{e | d} (x^e - 1)^{μ(d/e)}`.
pub fn cyclotomic(d: u32) -> ZPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = CACHE.with(|c| c.borrow().get(&d).cloned()) {
        return p;
    }
    let mut num = ZPoly::one();
    let mut den = ZPoly::one();
    for e in divisors(d) {
        match mobius((d / e) as u64) {
            1 => num = &num * &ZPoly::x_pow_minus_one(e as usize),
            -1 => den = &den * &ZPoly::x_pow_minus_one(e as usize),
            _ => {}
        }
    }
    let p = num
        .div_exact(&den)
        .expect("cyclotomic product divides exactly");
    CACHE.with(|c| c.borrow_mut().insert(d, p.clone()));
    p
}
