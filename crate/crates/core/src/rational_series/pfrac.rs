//! Partial fractions over pairwise comaximal factors `1 - L^a T^b`.
//!
//! For `P / ∏ P_i^{n_i}` with `P_i = 1 - L^{a_i} T^{b_i}` this computes
//!
//! ```text
//! P / ∏ P_i^{n_i} = Q + Σ_i Σ_{j=1..n_i} Q_{i,j} / P_i^j,   deg Q_{i,j} < b_i.
//! ```
//!
//! Comaximality of `P_i, P_k` comes from the unit resultant; the Bezout
//! cofactors are read off the adjugate of the Sylvester-type matrix and
//! divided by that unit.

use serde::Serialize;

use super::motpoly::MotPoly;
use super::resultant::{factor_coeffs, proportional, resultant_closed_form};
use super::series::binomial;
use crate::error::{Error, Result};
use crate::grot_ring::MotClass;
use crate::poly::{determinant, ZPoly};

/// Shape `(a, b, n)` of the factor `(1 - L^a T^b)^n`.
pub type FactorShape = (i64, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialFractions {
    pub factors: Vec<FactorShape>,
    /// Polynomial part `Q`.
    #[serde(serialize_with = "ser_poly")]
    pub q: MotPoly,
    /// `terms[i][j - 1] = Q_{i,j}` for `j = 1..=n_i`.
    #[serde(serialize_with = "ser_table")]
    pub terms: Vec<Vec<MotPoly>>,
}

fn poly_strings(p: &MotPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn ser_poly<S: serde::Serializer>(p: &MotPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(poly_strings(p))
}

fn ser_table<S: serde::Serializer>(
    t: &[Vec<MotPoly>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        t.iter()
            .map(|row| row.iter().map(poly_strings).collect::<Vec<_>>()),
    )
}

/// `(U, V)` with `U f + V g = 1`, `deg U < deg g`, `deg V < deg f`.
fn bezout(f: &[ZPoly], g: &[ZPoly]) -> Result<(MotPoly, MotPoly)> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    // Column j < n holds T^j f, column n + j holds T^j g; row k is T^k.
    let mut a = vec![vec![ZPoly::zero(); size]; size];
    for j in 0..n {
        for (k, c) in f.iter().enumerate() {
            a[j + k][j] = c.clone();
        }
    }
    for j in 0..m {
        for (k, c) in g.iter().enumerate() {
            a[j + k][n + j] = c.clone();
        }
    }
    let det = MotClass::from_poly(determinant(&a));
    let det_inv = det
        .inv()
        .map_err(|_| Error::Invariant(format!("Bezout determinant {det} is not a unit")))?;
    let mut x = Vec::with_capacity(size);
    for i in 0..size {
        let minor: Vec<Vec<ZPoly>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != i)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut v = MotClass::from_poly(determinant(&minor));
        if i % 2 == 1 {
            v = -v;
        }
        x.push(&v * &det_inv);
    }
    let u = MotPoly::new(x[..n].to_vec());
    let v = MotPoly::new(x[n..].to_vec());
    Ok((u, v))
}

fn pow_mod(base: &MotPoly, e: u32, modulus: &MotPoly) -> Result<MotPoly> {
    let mut acc = MotPoly::one().rem(modulus)?;
    for _ in 0..e {
        acc = acc.mul(base).rem(modulus)?;
    }
    Ok(acc)
}

/// Inverse of `P_k^{n_k}` modulo `P_i^{n_i}`, from `(U P_i + V P_k)^N = 1`
/// with `N = n_i + n_k - 1`.
fn inverse_mod(
    u: &MotPoly,
    v: &MotPoly,
    p_i: &MotPoly,
    p_k: &MotPoly,
    n_i: u32,
    n_k: u32,
    g_i: &MotPoly,
) -> Result<MotPoly> {
    let big_n = n_i + n_k - 1;
    let up = u.mul(p_i).rem(g_i)?;
    let vp = v.mul(p_k).rem(g_i)?;
    let v_nk = pow_mod(v, n_k, g_i)?;
    let mut acc = MotPoly::zero();
    for s in 0..n_i {
        let term = pow_mod(&up, s, g_i)?
            .mul(&pow_mod(&vp, big_n - s - n_k, g_i)?)
            .rem(g_i)?
            .mul(&v_nk)
            .rem(g_i)?
            .scale(&MotClass::from_bigint(binomial(big_n as u64, s as u64)));
        acc = acc.add(&term);
    }
    acc.rem(g_i)
}

pub fn partial_fractions(p: &MotPoly, factors: &[FactorShape]) -> Result<PartialFractions> {
    for (i, &(a, b, n)) in factors.iter().enumerate() {
        if b == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "factor ({a}, {b}, {n}) needs positive degree and multiplicity"
            )));
        }
        for &(a2, b2, _) in &factors[..i] {
            if proportional(a, b as i64, a2, b2 as i64)
                || !resultant_closed_form(a, b, a2, b2)?.is_unit()
            {
                return Err(Error::ProportionalFactors(a2, b2 as i64, a, b as i64));
            }
        }
    }
    let bases: Vec<MotPoly> = factors
        .iter()
        .map(|&(a, b, _)| MotPoly::factor(a, b as usize))
        .collect();
    let gs: Vec<MotPoly> = factors
        .iter()
        .zip(&bases)
        .map(|(&(_, _, n), b)| b.pow_u(n))
        .collect();
    let coeffs: Vec<Vec<ZPoly>> = factors
        .iter()
        .map(|&(a, b, _)| factor_coeffs(a, b))
        .collect::<Result<_>>()?;

    let k = factors.len();
    let mut rs = Vec::with_capacity(k);
    for i in 0..k {
        let mut r = p.rem(&gs[i])?;
        for j in 0..k {
            if j == i {
                continue;
            }
            let (u, v) = bezout(&coeffs[i], &coeffs[j])?;
            let inv = inverse_mod(
                &u,
                &v,
                &bases[i],
                &bases[j],
                factors[i].2,
                factors[j].2,
                &gs[i],
            )?;
            r = r.mul(&inv).rem(&gs[i])?;
        }
        rs.push(r);
    }

    let mut rest = p.clone();
    for i in 0..k {
        let mut t = rs[i].clone();
        for (j, g) in gs.iter().enumerate() {
            if j != i {
                t = t.mul(g);
            }
        }
        rest = rest.sub(&t);
    }
    let all = gs.iter().fold(MotPoly::one(), |acc, g| acc.mul(g));
    let (q, rem) = rest.div_rem(&all)?;
    if !rem.is_zero() {
        return Err(Error::Invariant(
            "partial fraction remainder not divisible by the full denominator".into(),
        ));
    }

    let mut terms = Vec::with_capacity(k);
    for i in 0..k {
        // R_i = Σ_j Q_{i,j} P_i^{n_i - j}: peel off base-P_i digits.
        let n_i = factors[i].2 as usize;
        let mut row = vec![MotPoly::zero(); n_i];
        let mut cur = rs[i].clone();
        for j in (1..=n_i).rev() {
            let (qq, r) = cur.div_rem(&bases[i])?;
            row[j - 1] = r;
            cur = qq;
        }
        if !cur.is_zero() {
            return Err(Error::Invariant("residue part has too high degree".into()));
        }
        terms.push(row);
    }
    Ok(PartialFractions {
        factors: factors.to_vec(),
        q,
        terms,
    })
}

impl PartialFractions {
    /// `Q ∏ P_i^{n_i} + Σ Q_{i,j} P_i^{n_i - j} ∏_{k≠i} P_k^{n_k}`.
    pub fn recombine(&self) -> MotPoly {
        let bases: Vec<MotPoly> = self
            .factors
            .iter()
            .map(|&(a, b, _)| MotPoly::factor(a, b as usize))
            .collect();
        let gs: Vec<MotPoly> = self
            .factors
            .iter()
            .zip(&bases)
            .map(|(&(_, _, n), b)| b.pow_u(n))
            .collect();
        let mut acc = gs.iter().fold(self.q.clone(), |acc, g| acc.mul(g));
        for (i, row) in self.terms.iter().enumerate() {
            let others = gs
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .fold(MotPoly::one(), |acc, (_, g)| acc.mul(g));
            let n_i = self.factors[i].2;
            for (j, qij) in row.iter().enumerate() {
                let j = j as u32 + 1;
                acc = acc.add(&qij.mul(&bases[i].pow_u(n_i - j)).mul(&others));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MotClass {
        MotClass::parse(s).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        let pf = partial_fractions(&MotPoly::one(), &[(1, 1, 1), (0, 1, 1)]).unwrap();
        assert!(pf.q.is_zero());
        assert_eq!(pf.terms[0][0], MotPoly::new(vec![c("L/(L-1)")]));
        assert_eq!(pf.terms[1][0], MotPoly::new(vec![c("-1/(L-1)")]));
        assert_eq!(pf.recombine(), MotPoly::one());
    }

    #[test]
    fn already_reduced_double_pole() {
        let pf = partial_fractions(&MotPoly::one(), &[(1, 1, 2)]).unwrap();
        assert!(pf.q.is_zero());
        assert!(pf.terms[0][0].is_zero());
        assert_eq!(pf.terms[0][1], MotPoly::one());
    }

    #[test]
    fn euclidean_division_case() {
        let t = MotPoly::new(vec![c("0"), c("1")]);
        let pf = partial_fractions(&t, &[(1, 1, 1)]).unwrap();
        assert_eq!(pf.q, MotPoly::new(vec![c("-L^-1")]));
        assert_eq!(pf.terms[0][0], MotPoly::new(vec![c("L^-1")]));
    }

    #[test]
    fn proportional_rejected() {
        let err = partial_fractions(&MotPoly::one(), &[(1, 2, 1), (2, 4, 1)]).unwrap_err();
        assert!(matches!(err, Error::ProportionalFactors(..)));
    }

    #[test]
    fn mixed_degrees_recombine_and_are_idempotent() {
        let p = MotPoly::new(vec![c("1"), c("L"), c("0"), c("[D]"), c("2")]);
        let f = [(1, 2, 2), (0, 1, 1), (2, 3, 1)];
        let pf = partial_fractions(&p, &f).unwrap();
        assert_eq!(pf.recombine(), p);
        for (i, row) in pf.terms.iter().enumerate() {
            for qij in row {
                assert!(qij.degree().map_or(true, |d| d < f[i].1 as usize));
            }
        }
        let again = partial_fractions(&pf.recombine(), &f).unwrap();
        assert_eq!(again, pf);
    }
}
