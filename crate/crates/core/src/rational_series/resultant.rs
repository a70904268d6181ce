//! Resultants of pairs `1 - L^a T^b`, `1 - L^a' T^b'`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::grot_ring::MotClass;
use crate::poly::{determinant, ZPoly};

/// A way of computing `Res_T(1 - L^a T^b, 1 - L^a' T^b')`.
pub trait ResultantMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn resultant(&self, a: i64, b: u32, a2: i64, b2: u32) -> Result<MotClass>;
}

/// `(-1)^{b'} L^{a b'} (1 - L^{(a' b - a b')/g})^g` with `g = gcd(b, b')`.
pub struct ClosedForm;

/// Determinant of the Sylvester matrix over `Z[L]` (fraction-free
/// elimination). Needs `a, a' >= 0`.
pub struct SylvesterDeterminant;

impl ResultantMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn resultant(&self, a: i64, b: u32, a2: i64, b2: u32) -> Result<MotClass> {
        resultant_closed_form(a, b, a2, b2)
    }
}

impl ResultantMethod for SylvesterDeterminant {
    fn name(&self) -> &'static str {
        "sylvester"
    }
    fn resultant(&self, a: i64, b: u32, a2: i64, b2: u32) -> Result<MotClass> {
        resultant_sylvester(a, b, a2, b2)
    }
}

pub fn resultant_closed_form(a: i64, b: u32, a2: i64, b2: u32) -> Result<MotClass> {
    if b == 0 || b2 == 0 {
        return Err(Error::InvalidInput("T-degrees must be positive".into()));
    }
    let g = b.gcd(&b2) as i64;
    let e = (a2 * b as i64 - a * b2 as i64) / g;
    let sign = if b2 % 2 == 0 { 1 } else { -1 };
    Ok(&MotClass::integer(sign).mul_l_pow(a * b2 as i64)
        * &MotClass::one_minus_l_pow(e).pow_u(g as u32))
}

/// `1 - L^a T^b` as T-coefficients in `Z[L]`, ascending.
pub(crate) fn factor_coeffs(a: i64, b: u32) -> Result<Vec<ZPoly>> {
    if a < 0 {
        return Err(Error::InvalidInput(format!(
            "L-exponent {a} must be nonnegative for polynomial elimination"
        )));
    }
    let mut v = vec![ZPoly::zero(); b as usize + 1];
    v[0] = ZPoly::one();
    v[b as usize] = &v[b as usize] - &ZPoly::monomial(1, a as usize);
    Ok(v)
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// `f` then m shifted rows of `g`, columns in descending powers of T.
pub(crate) fn sylvester_matrix(f: &[ZPoly], g: &[ZPoly]) -> Vec<Vec<ZPoly>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![ZPoly::zero(); size];
        for (k, c) in f.iter().enumerate() {
            row[i + m - k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![ZPoly::zero(); size];
        for (k, c) in g.iter().enumerate() {
            row[i + n - k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

pub fn resultant_sylvester(a: i64, b: u32, a2: i64, b2: u32) -> Result<MotClass> {
    if b == 0 || b2 == 0 {
        return Err(Error::InvalidInput("T-degrees must be positive".into()));
    }
    let f = factor_coeffs(a, b)?;
    let g = factor_coeffs(a2, b2)?;
    Ok(MotClass::from_poly(determinant(&sylvester_matrix(&f, &g))))
}

/// Whether two factor shapes are proportional (share a root).
pub fn proportional(a: i64, b: i64, a2: i64, b2: i64) -> bool {
    a * b2 == a2 * b
}
