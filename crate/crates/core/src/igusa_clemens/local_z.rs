//! Local zeta functions at places with trivial character, at integral
//! places, the pole support with an exponential, and the leading constant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::datum::{clemens, BoundaryDatum, ClemensComplex};
use crate::error::{Error, Result};
use crate::grot_ring::{effectivity_certificate, Certificate, MotClass, SymbolRegistry};
use crate::rational_series::{DenomFactor, LaurentPolyMot, RationalMotSeries};

fn unit(k: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

fn check_symbols(c: &MotClass, reg: &SymbolRegistry) -> Result<()> {
    for s in c.symbol_names() {
        reg.get(&s)?;
    }
    Ok(())
}

/// The contribution of `(A, β)`:
/// `∏ T^{e_β} L^{ρ_β} [Δ(A,β)] L^{-n+|A|} (1-L^{-1})^{|A|} ∏_{α∈A} L^{ρ_α-1}T_α/(1-L^{ρ_α-1}T_α)`.
fn stratum_term(
    datum: &BoundaryDatum,
    face: &[usize],
    beta: usize,
    class: &MotClass,
) -> Result<RationalMotSeries> {
    let vars = datum.vars();
    let k = vars.len();
    let mut exps = datum.e_vector(beta);
    let mut coeff = MotClass::l_pow(datum.vertical[beta].rho)
        * class.clone()
        * MotClass::l_pow(-datum.n + face.len() as i64)
        * (MotClass::one() - MotClass::l_pow(-1)).pow_u(face.len() as u32);
    let mut factors = Vec::new();
    for &a in face {
        let r = datum.horizontal[a].rho - 1;
        exps[a] += 1;
        coeff = coeff.mul_l_pow(r);
        factors.push(DenomFactor::new(r, unit(k, a), 1));
    }
    RationalMotSeries::new(LaurentPolyMot::monomial(&vars, exps, coeff), factors)
}

/// `Z(T, 0) = Σ_{A, β ∈ ℬ₁}` of the stratum terms.
pub fn local_z_trivial(datum: &BoundaryDatum, reg: &SymbolRegistry) -> Result<RationalMotSeries> {
    datum.validate(None)?;
    let mut acc = RationalMotSeries::polynomial(LaurentPolyMot::zero(&datum.vars()));
    for (face, beta, class) in datum.b1_strata()? {
        check_symbols(&class, reg)?;
        acc = acc.add(&stratum_term(datum, &face, beta, &class)?)?;
    }
    Ok(acc)
}

/// `Z(T, 0)` regrouped as `Σ_F P_F / ∏_{α∈F} (1 - L^{ρ_α-1} T_α)` over
/// maximal faces `F`.
#[derive(Clone, Debug)]
pub struct GroupedZ {
    pub complex: ClemensComplex,
    /// `(F, P_F / ∏_{α∈F}(...))` per maximal face.
    pub groups: Vec<(Vec<usize>, RationalMotSeries)>,
}

impl GroupedZ {
    pub fn sum(&self, vars: &[String]) -> Result<RationalMotSeries> {
        let mut acc = RationalMotSeries::polynomial(LaurentPolyMot::zero(vars));
        for (_, s) in &self.groups {
            acc = acc.add(s)?;
        }
        Ok(acc)
    }
}

/// Every stratum face goes to the first maximal face (in sorted order)
/// containing it, lifted to that face's full denominator.
pub fn local_z_grouped(datum: &BoundaryDatum, reg: &SymbolRegistry) -> Result<GroupedZ> {
    datum.validate(None)?;
    let complex = clemens(datum)?;
    let vars = datum.vars();
    let k = vars.len();
    let mut groups: Vec<(Vec<usize>, RationalMotSeries)> = complex
        .maximal
        .iter()
        .map(|f| {
            let factors = f
                .iter()
                .map(|&a| DenomFactor::new(datum.horizontal[a].rho - 1, unit(k, a), 1))
                .collect();
            Ok((
                f.clone(),
                RationalMotSeries::new(LaurentPolyMot::zero(&vars), factors)?,
            ))
        })
        .collect::<Result<_>>()?;
    for (face, beta, class) in datum.b1_strata()? {
        check_symbols(&class, reg)?;
        let slot = groups
            .iter_mut()
            .find(|(f, _)| face.iter().all(|a| f.contains(a)))
            .ok_or_else(|| Error::Invariant(format!("face {face:?} lies in no maximal face")))?;
        slot.1 = slot.1.add(&stratum_term(datum, &face, beta, &class)?)?;
    }
    Ok(GroupedZ { complex, groups })
}

/// Value of `P_F` at `T_α = L^{-(ρ_α-1)}`: only `A = F` survives there.
pub fn p_face_at_linv(datum: &BoundaryDatum, face: &[usize]) -> Result<MotClass> {
    let mut acc = MotClass::zero();
    for (b, v) in datum.vertical.iter().enumerate() {
        if v.mu != 1 {
            continue;
        }
        let class = datum.stratum(face, b)?;
        if class.is_zero() {
            continue;
        }
        let shift: i64 = datum
            .e_vector(b)
            .iter()
            .zip(&datum.horizontal)
            .map(|(e, h)| (1 - h.rho) * e)
            .sum();
        acc = acc
            + MotClass::l_pow(shift + v.rho - datum.n + face.len() as i64)
                * class
                * (MotClass::one() - MotClass::l_pow(-1)).pow_u(face.len() as u32);
    }
    Ok(acc)
}

/// `Z(T, 0)` at an integral place and its value at `T_α = L^{-(ρ_α - 1)}`.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralPlace {
    #[serde(serialize_with = "ser_display")]
    pub z: LaurentPolyMot,
    pub value_at_linv: MotClass,
    pub effectivity: Certificate,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `Σ_{β ∈ ℬ⁰} ∏ T_α^{e_{α,β}} L^{ρ_β} [Δ(∅, β)] L^{-n}`.
pub fn local_z_integral_place(
    datum: &BoundaryDatum,
    reg: &SymbolRegistry,
) -> Result<IntegralPlace> {
    datum.validate(None)?;
    let vars = datum.vars();
    let mut z = LaurentPolyMot::zero(&vars);
    let mut value = MotClass::zero();
    for b in datum.integral_indices()? {
        let class = datum.stratum(&[], b)?;
        check_symbols(&class, reg)?;
        let c = MotClass::l_pow(datum.vertical[b].rho - datum.n) * class;
        let e = datum.e_vector(b);
        let shift: i64 = e
            .iter()
            .zip(&datum.horizontal)
            .map(|(e, h)| (1 - h.rho) * e)
            .sum();
        value = value + c.mul_l_pow(shift);
        z = z.add(&LaurentPolyMot::monomial(&vars, e, c));
    }
    let effectivity = effectivity_certificate(&value, reg);
    Ok(IntegralPlace {
        z,
        value_at_linv: value,
        effectivity,
    })
}

/// Pole support of the local integral with an exponential of polar
/// multiplicities `d_α`.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentialPoles {
    pub complex: ClemensComplex,
    /// Faces avoiding every `α` with `d_α > 0`.
    pub subcomplex: ClemensComplex,
    /// Factors `1 - L^{ρ_α-1} T_α` allowed in the denominator.
    pub denominators: Vec<DenomFactor>,
    /// Denominator factors of the trivial-character integral.
    pub trivial_denominators: Vec<DenomFactor>,
    pub strict: bool,
}

pub fn igusa_with_exponential(
    datum: &BoundaryDatum,
    d: &BTreeMap<String, u32>,
) -> Result<ExponentialPoles> {
    datum.validate(None)?;
    for name in d.keys() {
        datum.alpha_index(name)?;
    }
    let complex = clemens(datum)?;
    let polar = |a: usize| d.get(&datum.horizontal[a].name).copied().unwrap_or(0) > 0;
    let subcomplex = complex.restrict(|a| !polar(a));
    let k = datum.horizontal.len();
    let shape = |a: usize| DenomFactor::new(datum.horizontal[a].rho - 1, unit(k, a), 1);
    let denominators: Vec<DenomFactor> = subcomplex.vertex_set().into_iter().map(shape).collect();
    let trivial_denominators: Vec<DenomFactor> =
        complex.vertex_set().into_iter().map(shape).collect();
    let strict = denominators.len() < trivial_denominators.len();
    Ok(ExponentialPoles {
        complex,
        subcomplex,
        denominators,
        trivial_denominators,
        strict,
    })
}

/// The leading constant and its effectivity.
#[derive(Clone, Debug, Serialize)]
pub struct LeadingConstant {
    pub value: MotClass,
    /// Per bad place: `Σ_F P_F(L^{-1}) ∏ a/(ρ_α - 1)` over faces of size `d_v`.
    pub per_place: Vec<MotClass>,
    /// Per integral place: `Z_λ(L^{-1}, 0)`.
    pub integral_constants: Vec<MotClass>,
    pub effectivity: Certificate,
    pub diagnostics: Vec<String>,
}

pub fn leading_constant(
    bad: &[BoundaryDatum],
    integral: &[BoundaryDatum],
    a: i64,
    reg: &SymbolRegistry,
) -> Result<LeadingConstant> {
    let mut value = MotClass::one();
    let mut per_place = Vec::new();
    let mut diagnostics = Vec::new();
    for (v, datum) in bad.iter().enumerate() {
        datum.validate(None)?;
        for h in &datum.horizontal {
            if a % (h.rho - 1) != 0 {
                return Err(Error::InvalidInput(format!(
                    "a = {a} is not a multiple of ρ_{} - 1 = {}",
                    h.name,
                    h.rho - 1
                )));
            }
        }
        let complex = clemens(datum)?;
        let mut local = MotClass::zero();
        match complex.d_v() {
            None => diagnostics.push(format!(
                "place {v}: every stratum is empty, the sum over maximal faces is empty"
            )),
            Some(dv) => {
                for face in complex.maximal.iter().filter(|f| f.len() as i64 == dv) {
                    let mut c = p_face_at_linv(datum, face)?;
                    check_symbols(&c, reg)?;
                    for &al in face {
                        c = c.scale_int(&BigInt::from(a / (datum.horizontal[al].rho - 1)));
                    }
                    local = local + c;
                }
            }
        }
        value = &value * &local;
        per_place.push(local);
    }
    let mut integral_constants = Vec::new();
    for datum in integral {
        let ip = local_z_integral_place(datum, reg)?;
        value = &value * &ip.value_at_linv;
        integral_constants.push(ip.value_at_linv);
    }
    if value.is_zero() && diagnostics.is_empty() {
        diagnostics.push("leading constant vanishes".into());
    }
    let effectivity = effectivity_certificate(&value, reg);
    Ok(LeadingConstant {
        value,
        per_place,
        integral_constants,
        effectivity,
        diagnostics,
    })
}
