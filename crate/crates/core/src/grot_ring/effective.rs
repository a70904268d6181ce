//! One-sided effectivity certificate.
//!
//! A class is certified when, after multiplying by an element `s` of the
//! multiplicative set generated by `L` and the `L^a - 1`, every numerator
//! polynomial factors as `∏ (L^{a_i} - 1) · R(L)` with `R` nonzero and all
//! coefficients of `R` nonnegative. Each factor is then the class of a
//! variety (`L^a - 1` is punctured affine space) so the product is effective.
//! Failure proves nothing.

use serde::Serialize;

use super::class::MotClass;
use super::cyclotomic::cyclotomic;
use super::symbols::SymbolRegistry;
use crate::poly::ZPoly;

/// Extra multipliers `L^a - 1` tried when the cleared numerator alone fails.
const EXTRA_MULTIPLIER_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// `multiplier · x` is a sum of products of effective classes.
    Certified {
        multiplier: String,
    },
    NotCertified {
        reason: String,
    },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }
}

/// Search budget for the factor-stripping search.
const STRIP_BUDGET: usize = 20_000;

/// Search for a way to strip `L^a - 1` factors from `p` leaving a nonnegative
/// cofactor. Factors are stripped in nonincreasing `a` to avoid revisiting
/// permutations.
fn stripped_nonnegative(p: &ZPoly) -> bool {
    fn go(r: &ZPoly, max_a: usize, budget: &mut usize) -> bool {
        if r.is_zero() {
            return false;
        }
        if r.all_nonnegative() {
            return true;
        }
        let deg = r.degree().unwrap();
        for a in (1..=max_a.min(deg)).rev() {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if let Some(q) = r.div_exact(&ZPoly::x_pow_minus_one(a)) {
                if go(&q, a, budget) {
                    return true;
                }
            }
        }
        false
    }
    let mut budget = STRIP_BUDGET;
    go(p, p.degree().unwrap_or(0), &mut budget)
}

/// Finds `s` (a product of at most two `L^a - 1`) with `s·p` certified.
fn certify_poly(p: &ZPoly) -> Option<ZPoly> {
    if stripped_nonnegative(p) {
        return Some(ZPoly::one());
    }
    for a in 1..=EXTRA_MULTIPLIER_MAX {
        let s = ZPoly::x_pow_minus_one(a);
        if stripped_nonnegative(&(p * &s)) {
            return Some(s);
        }
    }
    for a in 1..=EXTRA_MULTIPLIER_MAX {
        for b in a..=EXTRA_MULTIPLIER_MAX {
            let s = &ZPoly::x_pow_minus_one(a) * &ZPoly::x_pow_minus_one(b);
            if stripped_nonnegative(&(p * &s)) {
                return Some(s);
            }
        }
    }
    None
}

pub fn effectivity_certificate(x: &MotClass, reg: &SymbolRegistry) -> Certificate {
    for name in x.symbol_names() {
        match reg.get(&name) {
            Ok(s) if s.effective => {}
            Ok(_) => {
                return Certificate::NotCertified {
                    reason: format!("symbol [{name}] is not declared effective"),
                }
            }
            Err(_) => {
                return Certificate::NotCertified {
                    reason: format!("symbol [{name}] is not registered"),
                }
            }
        }
    }
    if x.is_zero() {
        return Certificate::Certified {
            multiplier: "1".into(),
        };
    }
    // s0 = L^{max(0,-e)} ∏ (L^d - 1)^{k_d} clears the denominator.
    let mut clear = ZPoly::one();
    let mut s0 = MotClass::l_pow(0.max(-x.l_exponent()));
    for (d, k) in x.cyclotomic_denominator() {
        let co = ZPoly::x_pow_minus_one(*d as usize)
            .div_exact(&cyclotomic(*d))
            .unwrap();
        clear = &clear * &co.pow(*k);
        s0 = &s0 * &MotClass::l_pow_minus_one(*d).pow_u(*k);
    }
    let mut multiplier = s0;
    for (m, p) in x.terms() {
        match certify_poly(&(p * &clear)) {
            Some(s) => multiplier = &multiplier * &MotClass::from_poly(s),
            None => {
                let label = if m.is_one() {
                    String::new()
                } else {
                    format!(" of the symbol part {m:?}")
                };
                return Certificate::NotCertified {
                    reason: format!(
                        "cleared numerator{label} has no factorization into L^a - 1 factors and a nonnegative cofactor"
                    ),
                };
            }
        }
    }
    Certificate::Certified {
        multiplier: multiplier.to_string(),
    }
}
