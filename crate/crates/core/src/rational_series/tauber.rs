//! Asymptotics of the coefficients of `Z(T)` from its pole at `T = L^{-1}`.
//!
//! With `Z = P(T) / ((1 - L^a T^a)^d ∏_{i≥2} (1 - L^{a_i} T^{b_i})^{n_i})`,
//! `a_i < b_i`, write the partial fractions of the first factor as
//! `Σ_j Q_{1,j}/(1 - L^a T^a)^j` with `Q_{1,j} = Σ_{p<a} q_{1,j,p} T^p`. For
//! `n = ma + p` the contribution of that pole is
//! `Σ_j q_{1,j,p} binom(m+j-1, j-1) L^{n-p}`, which dominates every other
//! pole. Per residue class `p` this predicts `dim(M_n) - n → d_p` and the
//! growth of `ν(M_n)` as a polynomial of degree `j_p - 1` in `n`.

use serde::Serialize;

use super::motpoly::MotPoly;
use super::pfrac::{partial_fractions, FactorShape};
use super::series::{binomial, DenomFactor, RationalMotSeries};
use crate::error::{Error, Result};
use crate::grot_ring::{dim_nu, effectivity_certificate, Certificate, MotClass, SymbolRegistry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TauberConfig {
    /// First index at which the asymptote is compared.
    pub burn_in: usize,
    /// Last index compared.
    pub horizon: usize,
}

impl Default for TauberConfig {
    fn default() -> Self {
        TauberConfig {
            burn_in: 50,
            horizon: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// No contribution of the pole `L^{-1}` in this class.
    Case1,
    /// The pole contributes; `dim(M_n) - n` has a finite limit.
    Case2,
    /// Every coefficient in the class vanishes on the checked range.
    EmptyClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub p: usize,
    pub case: CaseTag,
    /// Limit of `dim(M_n) - n` (Case2).
    pub dim_limit: Option<i64>,
    /// Limit of `log ν(M_n) / log n`, i.e. `j_p - 1` (Case2).
    pub log_nu_exponent: Option<u32>,
    /// `q_{1,j,p}` for `j = 1..=d`.
    pub witnesses: Vec<MotClass>,
    /// Indices `n ≡ p (mod a)` in `[burn_in, horizon]` where the prediction
    /// failed (Case2) or the bound was exceeded (Case1).
    pub mismatches: Vec<usize>,
    /// Case1 only: the bound checked is `dim(M_n) <= max_i (a_i ⌊n/b_i⌋ + c_i)`.
    pub case1_bound: Option<Vec<(i64, i64, i64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauberianReport {
    pub modulus: u32,
    pub order: u32,
    pub config: TauberConfig,
    /// `P(L^{-1}) = Σ_p q_{1,d,p} L^{-p}`.
    pub p_at_linv: MotClass,
    pub effectivity: Certificate,
    pub classes: Vec<ClassReport>,
}

impl TauberianReport {
    /// All checks on the horizon passed.
    pub fn verified(&self) -> bool {
        self.classes.iter().all(|c| c.mismatches.is_empty())
    }

    pub fn has_case2(&self) -> bool {
        self.classes.iter().any(|c| c.case == CaseTag::Case2)
    }
}

/// Brings `Z` to the form `P / ((1 - L^a T^a)^d ∏ other)` and returns
/// `(P, other factors)`.
fn prepare(z: &RationalMotSeries, a: u32, d: u32) -> Result<(MotPoly, Vec<FactorShape>)> {
    if z.nvars() != 1 {
        return Err(Error::InvalidInput(
            "tauberian analysis needs one variable".into(),
        ));
    }
    if a == 0 || d == 0 {
        return Err(Error::InvalidInput(
            "modulus and order must be positive".into(),
        ));
    }
    let diag: Vec<&DenomFactor> = z.factors().iter().filter(|f| f.a == f.b[0]).collect();
    if diag.len() > 1 {
        return Err(Error::ProportionalFactors(
            diag[0].a,
            diag[0].b[0],
            diag[1].a,
            diag[1].b[0],
        ));
    }
    let mut have = 0;
    if let Some(f) = diag.first() {
        if f.a != a as i64 {
            return Err(Error::InvalidInput(format!(
                "the a = b factor has shape ({}, {}), expected ({a}, {a})",
                f.a, f.b[0]
            )));
        }
        have = f.mult;
    }
    if have > d {
        return Err(Error::InvalidInput(format!(
            "pole order {have} at T = L^-1 exceeds the stated order {d}"
        )));
    }
    let mut series = z.clone();
    if have < d {
        // multiply numerator and denominator by the missing power
        let pad = DenomFactor::single(a as i64, a as i64, d - have);
        let num = series
            .numerator()
            .mul(&pad.base_poly(series.vars()).pow_u(d - have));
        let mut f = series.factors().to_vec();
        f.push(pad);
        series = RationalMotSeries::new(num, f)?;
    }
    let others = RationalMotSeries::new(
        series.numerator().clone(),
        series
            .factors()
            .iter()
            .filter(|f| f.a != f.b[0])
            .cloned()
            .collect(),
    )?
    .merge_proportional()?;
    let mut shapes: Vec<FactorShape> = vec![(a as i64, a, d)];
    for f in others.factors() {
        if f.a < 0 || f.b[0] <= f.a {
            return Err(Error::InvalidInput(format!(
                "factor (1 - L^{} T^{})^{} must satisfy 0 <= a < b",
                f.a, f.b[0], f.mult
            )));
        }
        shapes.push((f.a, f.b[0] as u32, f.mult));
    }
    if others.numerator().has_negative_exponents() {
        return Err(Error::InvalidInput(
            "numerator must be a polynomial in T".into(),
        ));
    }
    Ok((MotPoly::new(others.numerator().to_dense()?), shapes))
}

pub fn tauberian_report(
    z: &RationalMotSeries,
    a: u32,
    d: u32,
    cfg: TauberConfig,
    reg: &SymbolRegistry,
) -> Result<TauberianReport> {
    let (p, shapes) = prepare(z, a, d)?;
    let pf = partial_fractions(&p, &shapes)?;
    let au = a as usize;

    // q[j-1][p] = q_{1,j,p}
    let q: Vec<Vec<MotClass>> = pf.terms[0]
        .iter()
        .map(|qj| (0..au).map(|p| qj.coeff(p)).collect())
        .collect();

    let p_at_linv: MotClass = (0..au)
        .map(|p| q[d as usize - 1][p].mul_l_pow(-(p as i64)))
        .sum();
    let full = z.mul_by_factors(&[DenomFactor::single(a as i64, a as i64, d)])?;
    let direct = full.evaluate_dagger_at_linv()?;
    if direct != p_at_linv {
        return Err(Error::Invariant(format!(
            "P(L^-1) from partial fractions ({p_at_linv}) differs from direct evaluation ({direct})"
        )));
    }
    let effectivity = effectivity_certificate(&p_at_linv, reg);

    let coeffs = z.expand(cfg.horizon)?;
    let mut classes = Vec::with_capacity(au);
    for p in 0..au {
        let witnesses: Vec<MotClass> = q.iter().map(|qj| qj[p].clone()).collect();
        let dims: Vec<Option<i64>> = witnesses
            .iter()
            .map(|w| dim_nu(w, reg).map(|x| x.dim))
            .collect::<Result<_>>()?;
        let top = dims.iter().flatten().max().copied();
        let indices = (cfg.burn_in..=cfg.horizon).filter(|n| n % au == p);
        let report = if let Some(top) = top {
            let j_p = dims.iter().rposition(|x| *x == Some(top)).unwrap() + 1;
            let mut mismatches = Vec::new();
            for n in indices {
                let m = ((n - p) / au) as u64;
                let pole: MotClass = witnesses
                    .iter()
                    .enumerate()
                    .map(|(j, w)| {
                        w.scale_int(&binomial(m + j as u64, j as u64))
                            .mul_l_pow((n - p) as i64)
                    })
                    .sum();
                let predicted = dim_nu(&pole, reg)?;
                let actual = dim_nu(&coeffs[n], reg)?;
                if predicted != actual || predicted.dim != Some(n as i64 + top - p as i64) {
                    mismatches.push(n);
                }
            }
            ClassReport {
                p,
                case: CaseTag::Case2,
                dim_limit: Some(top - p as i64),
                log_nu_exponent: Some(j_p as u32 - 1),
                witnesses,
                mismatches,
                case1_bound: None,
            }
        } else {
            let all_zero = (0..=cfg.horizon)
                .filter(|n| n % au == p)
                .all(|n| coeffs[n].is_zero());
            if all_zero {
                ClassReport {
                    p,
                    case: CaseTag::EmptyClass,
                    dim_limit: None,
                    log_nu_exponent: None,
                    witnesses,
                    mismatches: Vec::new(),
                    case1_bound: None,
                }
            } else {
                let mut bound = Vec::new();
                for (i, row) in pf.terms.iter().enumerate().skip(1) {
                    let (ai, bi, _) = shapes[i];
                    let mut c = i64::MIN;
                    for qij in row {
                        for x in qij.coeffs() {
                            if let Some(dd) = dim_nu(x, reg)?.dim {
                                c = c.max(dd);
                            }
                        }
                    }
                    if c > i64::MIN {
                        bound.push((ai, bi as i64, c));
                    }
                }
                let q_deg = pf.q.degree().map_or(-1, |x| x as i64);
                let mut mismatches = Vec::new();
                for n in indices.filter(|n| *n as i64 > q_deg) {
                    if let Some(dn) = dim_nu(&coeffs[n], reg)?.dim {
                        let lim = bound
                            .iter()
                            .map(|(ai, bi, c)| ai * (n as i64 / bi) + c)
                            .max();
                        if lim.map_or(true, |l| dn > l) {
                            mismatches.push(n);
                        }
                    }
                }
                ClassReport {
                    p,
                    case: CaseTag::Case1,
                    dim_limit: None,
                    log_nu_exponent: None,
                    witnesses,
                    mismatches,
                    case1_bound: Some(bound),
                }
            }
        };
        classes.push(report);
    }
    Ok(TauberianReport {
        modulus: a,
        order: d,
        config: cfg,
        p_at_linv,
        effectivity,
        classes,
    })
}
