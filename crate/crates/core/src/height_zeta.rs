//! The toy instance `G_a ⊂ P^1` over `P^1`: sections counted by height,
//! assembled through Poisson summation, and the pole/leading-constant
//! statement checked on the resulting series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::global_poisson::{
    global_fourier, ord_at, riemann_roch_basis, Divisor, FpPoly, GlobalSB, Place, RatFn,
    RatFnConfig,
};
use crate::grot_ring::{
    count_realize, effectivity_certificate, Certificate, MotClass, SymbolRegistry,
};
use crate::igusa_clemens::{
    local_z_integral_place, local_z_trivial, BoundaryDatum, Horizontal, StratumEntry, Vertical,
};
use crate::local_harmonic::{LocalWindow, SBLocal};
use crate::rational_series::{
    tauberian_report, DenomFactor, LaurentPolyMot, RationalMotSeries, TauberConfig, TauberianReport,
};

/// Limit on the number of polynomials enumerated by the brute-force count.
pub const SECTION_CAP: u128 = 1_953_125;
pub const MAX_TRUNCATION: usize = 8;

/// `X = P^1 × P^1 → C = P^1` with `U = A^1` over `C_0 = A^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyGeometry {
    pub q: u64,
    /// Places treated as bad; always contains `∞`.
    pub sigma: Vec<Place>,
    /// `ω = g dt` for the global pairing.
    pub form: RatFn,
    /// Extra room added to the summation space of the dual side.
    pub enlarge: Divisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub q: u64,
    #[serde(default)]
    pub sigma: Vec<Place>,
    #[serde(default)]
    pub form: Option<RatFnConfig>,
    #[serde(default)]
    pub enlarge: Vec<(Place, i64)>,
}

impl ToyGeometry {
    pub const N: u32 = 1;
    pub const GENUS: i64 = 0;

    pub fn new(q: u64) -> Result<Self> {
        ToyGeometry::from_config(&GeometryConfig {
            q,
            sigma: Vec::new(),
            form: None,
            enlarge: Vec::new(),
        })
    }

    pub fn from_config(cfg: &GeometryConfig) -> Result<Self> {
        let q = cfg.q;
        LocalWindow::new(q, 1, 0, 0)?;
        let mut sigma = vec![Place::Infinity];
        for pl in &cfg.sigma {
            pl.check(q)?;
            if !sigma.contains(pl) {
                sigma.push(*pl);
            }
        }
        sigma.sort();
        let form = match &cfg.form {
            Some(f) => RatFn::from_config(q, f)?,
            None => RatFn::constant(q, 1),
        };
        if form.is_zero() {
            return Err(Error::InvalidInput("the form must be nonzero".into()));
        }
        let mut enlarge = Divisor::zero();
        for (pl, k) in &cfg.enlarge {
            pl.check(q)?;
            if *k < 0 {
                return Err(Error::InvalidInput("enlargement must be effective".into()));
            }
            enlarge.add_at(*pl, *k);
        }
        Ok(ToyGeometry {
            q,
            sigma,
            form,
            enlarge,
        })
    }

    /// `(1 - g) n`.
    pub fn global_exponent(&self) -> i64 {
        (1 - Self::GENUS) * Self::N as i64
    }

    /// The model at `∞`: `ρ_α = 2`, `ρ_β = 0`, `Δ(∅) = A^1`, `Δ({α})` a point.
    pub fn bad_datum() -> BoundaryDatum {
        BoundaryDatum {
            n: 1,
            horizontal: vec![Horizontal {
                name: "a".into(),
                rho: 2,
            }],
            vertical: vec![Vertical {
                name: "E".into(),
                mu: 1,
                rho: 0,
                e: Default::default(),
                strata: vec![
                    StratumEntry {
                        a: vec![],
                        class: MotClass::l(),
                    },
                    StratumEntry {
                        a: vec!["a".into()],
                        class: MotClass::one(),
                    },
                ],
            }],
            integral: vec![],
        }
    }

    /// The model at a finite place: the divisor at infinity does not meet
    /// the special fibre.
    pub fn good_datum() -> BoundaryDatum {
        let mut d = Self::bad_datum();
        d.vertical[0].strata.truncate(1);
        d.integral = vec!["E".into()];
        d
    }
}

/// Number of `f ∈ F_q[t]` of each height `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCount {
    pub q: u64,
    pub counts: Vec<u64>,
}

/// Height of `f ∈ F_q(t)`: total pole order.
fn height(f: &RatFn) -> i64 {
    Place::all(f.p())
        .into_iter()
        .map(|pl| ord_at(f, pl).map_or(0, |o| (-o).max(0)))
        .sum()
}

/// Enumerates `f ∈ F_q(t)` with no poles on `A^1` of height at most `n_max`
/// (these are the polynomials of degree at most `n_max`).
pub fn brute_force_sections(q: u64, n_max: usize) -> Result<SectionCount> {
    LocalWindow::new(q, 1, 0, 0)?;
    let total = (q as u128)
        .checked_pow(n_max as u32 + 1)
        .unwrap_or(u128::MAX);
    if total > SECTION_CAP {
        return Err(Error::CapExceeded {
            what: "polynomials enumerated".into(),
            needed: total,
            cap: SECTION_CAP,
        });
    }
    let counts = (0..total as u64)
        .into_par_iter()
        .fold(
            || vec![0u64; n_max + 1],
            |mut acc, mut idx| {
                let mut c = Vec::with_capacity(n_max + 1);
                for _ in 0..=n_max {
                    c.push(idx % q);
                    idx /= q;
                }
                let f = RatFn::from_poly(FpPoly::new(q, c));
                let regular = Place::all(q)
                    .into_iter()
                    .filter(|pl| *pl != Place::Infinity)
                    .all(|pl| ord_at(&f, pl).is_none_or(|o| o >= 0));
                let h = height(&f);
                if regular && (h as usize) <= n_max {
                    acc[h as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n_max + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(SectionCount { q, counts })
}

/// `Z(T, 0)`: the product of the local factors over `Σ`, specialized at
/// `λ = (ρ_α - 1)`.
pub fn assemble_z_trivial_term(
    geom: &ToyGeometry,
    reg: &SymbolRegistry,
) -> Result<RationalMotSeries> {
    let t = vec!["T".to_string()];
    let mut z = RationalMotSeries::polynomial(LaurentPolyMot::one(&t));
    for pl in &geom.sigma {
        let local = if *pl == Place::Infinity {
            let d = ToyGeometry::bad_datum();
            let lambda: Vec<i64> = d.horizontal.iter().map(|h| h.rho - 1).collect();
            local_z_trivial(&d, reg)?.specialize_lambda(&lambda, "T")?
        } else {
            let ip = local_z_integral_place(&ToyGeometry::good_datum(), reg)?;
            RationalMotSeries::polynomial(ip.z).specialize_lambda(&[1], "T")?
        };
        z = z.mul(&local)?;
    }
    Ok(z)
}

/// `Z_U(T) = L^{(1-g)n} Z(T, 0)`: for the toy every nontrivial character
/// term vanishes.
pub fn toy_z_symbolic(geom: &ToyGeometry, reg: &SymbolRegistry) -> Result<RationalMotSeries> {
    Ok(assemble_z_trivial_term(geom, reg)?.scale(&MotClass::l_pow(geom.global_exponent())))
}

/// Local factor at `∞` of the coefficient of `T^m`: the indicator of the
/// shell `ord x = -m` (the unit ball for `m = 0`).
pub fn height_shell(q: u64, m: i64) -> Result<SBLocal> {
    let w = LocalWindow::new(q, 1, -m, -m + 1)?;
    let ball = SBLocal::unit_ball(w, -m)?;
    if m == 0 {
        Ok(ball)
    } else {
        ball.sub(&SBLocal::unit_ball(w, -m + 1)?)
    }
}

/// The coefficient of `T^m` in `Φ_T` as a global Schwartz–Bruhat function.
pub fn coefficient_function(geom: &ToyGeometry, m: i64) -> Result<GlobalSB> {
    let mut phi = GlobalSB::unit(geom.q, ToyGeometry::N)
        .with_factor(Place::Infinity, height_shell(geom.q, m)?)?;
    for pl in &geom.sigma {
        if *pl != Place::Infinity {
            let w = LocalWindow::new(geom.q, ToyGeometry::N, 0, 1)?;
            phi = phi.with_factor(*pl, SBLocal::unit_ball(w, 0)?)?;
        }
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonAssembly {
    pub q: u64,
    /// `q^{(1-g)n} Σ_{ξ ∈ E} FΦ_m(ξ)` for each `m`.
    #[serde(serialize_with = "ser_rationals")]
    pub coefficients: Vec<BigRational>,
    /// The `ξ = 0` term alone.
    #[serde(serialize_with = "ser_rationals")]
    pub xi_zero: Vec<BigRational>,
    /// `dim E` for each `m`.
    pub e_dims: Vec<usize>,
    pub brute: Vec<u64>,
    pub matches: bool,
}

fn ser_rationals<S: serde::Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn realize(v: &crate::local_harmonic::CycValue) -> Result<BigRational> {
    v.to_rational()
        .ok_or_else(|| Error::Invariant(format!("value {v} is not rational")))
}

/// Coefficients of `Z_U(T)` up to `T^truncation` by Poisson summation,
/// compared with the brute-force counts.
pub fn assemble_z_poisson(geom: &ToyGeometry, truncation: usize) -> Result<PoissonAssembly> {
    if truncation > MAX_TRUNCATION {
        return Err(Error::InvalidInput(format!(
            "truncation {truncation} exceeds {MAX_TRUNCATION}"
        )));
    }
    let q = geom.q;
    let mut coefficients = Vec::new();
    let mut xi_zero = Vec::new();
    let mut e_dims = Vec::new();
    for m in 0..=truncation as i64 {
        let phi = coefficient_function(geom, m)?;
        let fphi = global_fourier(&phi, &geom.form)?;
        let e = fphi.support_divisor().add(&geom.enlarge);
        e_dims.push(riemann_roch_basis(&e, q)?.dim());
        let scale = geom.global_exponent();
        coefficients.push(realize(&fphi.sum_over(&e)?.mul_p_pow(scale))?);
        let zero = vec![RatFn::zero(q); ToyGeometry::N as usize];
        xi_zero.push(realize(&fphi.eval(&zero)?.mul_p_pow(scale))?);
    }
    let brute = brute_force_sections(q, truncation)?.counts;
    let matches = coefficients
        .iter()
        .zip(&brute)
        .all(|(c, b)| *c == BigRational::from_integer(BigInt::from(*b)));
    Ok(PoissonAssembly {
        q,
        coefficients,
        xi_zero,
        e_dims,
        brute,
        matches,
    })
}

/// Re-runs the assembly with every finite place adjoined to `Σ` and the
/// dual summation space enlarged; the coefficients must not move.
pub fn enlargement_check(geom: &ToyGeometry, truncation: usize) -> Result<bool> {
    let base = assemble_z_poisson(geom, truncation)?;
    let mut big = geom.clone();
    big.sigma = Place::all(geom.q);
    big.enlarge = geom.enlarge.add(&Divisor::from_pairs(&[
        (Place::Infinity, 2),
        (Place::Finite(0), 1),
    ]));
    Ok(assemble_z_poisson(&big, truncation)?.coefficients == base.coefficients)
}

/// `(1 - L^a T^a)^d Z = P_U` and what follows from it.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    #[serde(serialize_with = "ser_display")]
    pub p_u: RationalMotSeries,
    pub dagger: bool,
    pub p_at_linv: MotClass,
    pub effectivity: Certificate,
    pub tauberian: TauberianReport,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn theorem_main_check(
    z: &RationalMotSeries,
    a: u32,
    d: u32,
    cfg: TauberConfig,
    reg: &SymbolRegistry,
) -> Result<TheoremReport> {
    if z.nvars() != 1 {
        return Err(Error::InvalidInput(
            "expected a series in one variable".into(),
        ));
    }
    let p_u = z.mul_by_factors(&[DenomFactor::single(a as i64, a as i64, d)])?;
    let residual: Vec<String> = p_u
        .factors()
        .iter()
        .filter(|f| f.a == f.b[0])
        .map(|f| format!("(1 - L^{} T^{})^{}", f.a, f.b[0], f.mult))
        .collect();
    if !residual.is_empty() {
        return Err(Error::ResidualPoles(residual.join(", ")));
    }
    let dagger = p_u.is_dagger();
    let p_at_linv = p_u.evaluate_dagger_at_linv()?;
    let effectivity = effectivity_certificate(&p_at_linv, reg);
    let tauberian = tauberian_report(z, a, d, cfg, reg)?;
    Ok(TheoremReport {
        p_u,
        dagger,
        p_at_linv,
        effectivity,
        tauberian,
    })
}

/// `count_realize` of the first coefficients of a series.
pub fn realized_coefficients(
    z: &RationalMotSeries,
    n_max: usize,
    q: u64,
    reg: &SymbolRegistry,
) -> Result<Vec<BigRational>> {
    z.expand(n_max + 1)?
        .iter()
        .take(n_max + 1)
        .map(|c| count_realize(c, q, reg))
        .collect()
}

/// Strategy for counting sections by height.
pub trait SectionCounter: Send + Sync {
    fn name(&self) -> &'static str;
    fn counts(&self, geom: &ToyGeometry, n_max: usize) -> Result<Vec<BigRational>>;
}

pub struct BruteCounter;
pub struct PoissonCounter;
pub struct SymbolicCounter;

impl SectionCounter for BruteCounter {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn counts(&self, geom: &ToyGeometry, n_max: usize) -> Result<Vec<BigRational>> {
        Ok(brute_force_sections(geom.q, n_max)?
            .counts
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect())
    }
}

impl SectionCounter for PoissonCounter {
    fn name(&self) -> &'static str {
        "poisson"
    }

    fn counts(&self, geom: &ToyGeometry, n_max: usize) -> Result<Vec<BigRational>> {
        Ok(assemble_z_poisson(geom, n_max)?.coefficients)
    }
}

impl SectionCounter for SymbolicCounter {
    fn name(&self) -> &'static str {
        "symbolic"
    }

    fn counts(&self, geom: &ToyGeometry, n_max: usize) -> Result<Vec<BigRational>> {
        let reg = SymbolRegistry::new();
        realized_coefficients(&toy_z_symbolic(geom, &reg)?, n_max, geom.q, &reg)
    }
}

/// Converts exact counts to integers when they are.
pub fn as_integers(v: &[BigRational]) -> Option<Vec<u64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_u64()
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn brute_counts() {
        let c = brute_force_sections(3, 4).unwrap().counts;
        assert_eq!(c, vec![3, 6, 18, 54, 162]);
        assert_eq!(brute_force_sections(2, 1).unwrap().counts[1], 2);
        assert!(matches!(
            brute_force_sections(5, 9),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn trivial_term() {
        let reg = SymbolRegistry::new();
        let g = ToyGeometry::new(3).unwrap();
        let z = assemble_z_trivial_term(&g, &reg).unwrap();
        let t = vec!["T".to_string()];
        let expect = RationalMotSeries::polynomial(LaurentPolyMot::one(&t))
            .add(
                &RationalMotSeries::new(
                    LaurentPolyMot::monomial(&t, vec![1], MotClass::parse("L - 1").unwrap()),
                    vec![DenomFactor::single(1, 1, 1)],
                )
                .unwrap(),
            )
            .unwrap();
        assert_eq!(z, expect);
        assert_eq!(z.factors(), &[DenomFactor::single(1, 1, 1)]);
        let mut wider = g.clone();
        wider.sigma.push(Place::Finite(1));
        assert_eq!(assemble_z_trivial_term(&wider, &reg).unwrap(), z);
    }

    #[test]
    fn poisson_matches_brute_force() {
        let g = ToyGeometry::new(3).unwrap();
        let a = assemble_z_poisson(&g, 4).unwrap();
        assert!(a.matches, "{a:?}");
        assert_eq!(a.coefficients[2], int(18));
        let reg = SymbolRegistry::new();
        let trivial =
            realized_coefficients(&assemble_z_trivial_term(&g, &reg).unwrap(), 4, 3, &reg).unwrap();
        for (x0, t) in a.xi_zero.iter().zip(trivial) {
            assert_eq!(*x0, t * int(3));
        }
        // L(E) = {0}: the remaining characters contribute nothing
        assert!(a.e_dims.iter().all(|d| *d == 0));
        assert_eq!(a.coefficients, a.xi_zero);
        assert!(enlargement_check(&g, 3).unwrap());
    }

    #[test]
    fn main_theorem_on_toy() {
        let reg = SymbolRegistry::new();
        // L + (L - 1) L T / (1 - L T) = (L - L T) / (1 - L T)
        let t = vec!["T".to_string()];
        let z = RationalMotSeries::new(
            LaurentPolyMot::from_terms(
                &t,
                [
                    (vec![0], MotClass::l()),
                    (vec![1], MotClass::parse("-L").unwrap()),
                ],
            ),
            vec![DenomFactor::single(1, 1, 1)],
        )
        .unwrap();
        let g = ToyGeometry::new(3).unwrap();
        assert_eq!(z, toy_z_symbolic(&g, &reg).unwrap());
        let cfg = TauberConfig {
            burn_in: 5,
            horizon: 30,
        };
        let r = theorem_main_check(&z, 1, 1, cfg, &reg).unwrap();
        assert_eq!(r.p_at_linv, MotClass::parse("L - 1").unwrap());
        assert!(r.dagger && r.effectivity.is_certified());
        assert!(r.tauberian.verified());
        assert_eq!(r.tauberian.classes[0].dim_limit, Some(1));
        assert_eq!(r.tauberian.classes[0].log_nu_exponent, Some(0));
        let local = assemble_z_trivial_term(&g, &reg).unwrap();
        let r = theorem_main_check(&local, 1, 1, cfg, &reg).unwrap();
        assert_eq!(r.p_at_linv, MotClass::parse("1 - L^-1").unwrap());
        assert!(matches!(
            theorem_main_check(&z, 1, 0, cfg, &reg),
            Err(Error::ResidualPoles(_))
        ));
    }

    #[test]
    fn symbolic_counts_realize_to_brute_force() {
        let reg = SymbolRegistry::new();
        for q in [2u64, 3, 5] {
            let g = ToyGeometry::new(q).unwrap();
            let sym =
                realized_coefficients(&toy_z_symbolic(&g, &reg).unwrap(), 5, q, &reg).unwrap();
            let brute = BruteCounter.counts(&g, 5).unwrap();
            assert_eq!(sym, brute);
        }
    }
}
