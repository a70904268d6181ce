mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;
use motzeta::global_poisson::{
    global_inversion_check, ord_at, residue_theorem_check, riemann_roch_basis, Divisor, FpPoly,
    GlobalSB, Place, RatFn,
};
use motzeta::grot_ring::{
    count_realize, dim_nu, effectivity_certificate, poincare, MotClass, SymbolRegistry,
};
use motzeta::height_zeta::{
    assemble_z_poisson, brute_force_sections, realized_coefficients, toy_z_symbolic, ToyGeometry,
};
use motzeta::igusa_clemens::{
    igusa_with_exponential, leading_constant, local_z_grouped, local_z_trivial, MonomialChart,
};
use motzeta::local_harmonic::{
    fourier, fourier_at, CycValue, LocalWindow, ResiduePairing, SBLocal,
};
use motzeta::rational_series::{
    partial_fractions, DenomFactor, FactorShape, LaurentPolyMot, MotPoly, RationalMotSeries,
};

fn reg() -> SymbolRegistry {
    SymbolRegistry::new()
}

fn poly_class(coeffs: &[i64]) -> MotClass {
    coeffs
        .iter()
        .enumerate()
        .fold(MotClass::zero(), |acc, (i, c)| {
            acc + MotClass::integer(*c) * MotClass::l_pow(i as i64)
        })
}

/// `L^e p(L) / (L^a - 1)^k`.
fn class() -> impl Strategy<Value = MotClass> {
    (
        prop::collection::vec(-3i64..=3, 1..4),
        -2i64..=2,
        1u32..=3,
        0u32..=2,
    )
        .prop_map(|(c, e, a, k)| {
            let den = MotClass::l_pow_minus_one(a).pow_u(k);
            poly_class(&c)
                .mul_l_pow(e)
                .checked_div(&den)
                .expect("L^a - 1 is a unit")
        })
}

fn dim(x: &MotClass) -> Option<i64> {
    dim_nu(x, &reg()).unwrap().dim
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poincare_is_a_ring_morphism(x in class(), y in class()) {
        let r = reg();
        let (px, py) = (poincare(&x, 12, &r).unwrap(), poincare(&y, 12, &r).unwrap());
        let prod = &px * &py;
        let pxy = poincare(&(&x * &y), 12, &r).unwrap();
        let f = prod.floor().max(pxy.floor());
        prop_assert_eq!(prod.truncate(f), pxy.truncate(f));
        let sum = &px + &py;
        let pxs = poincare(&(&x + &y), 12, &r).unwrap();
        let f = sum.floor().max(pxs.floor());
        prop_assert_eq!(sum.truncate(f), pxs.truncate(f));
    }

    #[test]
    fn dimension_bounds(x in class(), y in class(), n in -3i64..=3) {
        let add = |a: Option<i64>, b: Option<i64>| a.zip(b).map(|(a, b)| a + b);
        prop_assert!(dim(&(&x + &y)) <= dim(&x).max(dim(&y)));
        prop_assert!(dim(&(&x * &y)) <= add(dim(&x), dim(&y)));
        prop_assert_eq!(dim(&x.mul_l_pow(n)), dim(&x).map(|d| d + n));
    }

    #[test]
    fn counting_matches_poincare_on_polynomials(c in prop::collection::vec(-4i64..=4, 1..5), q in 2u64..=7) {
        let x = poly_class(&c);
        let pc = poincare(&x, 0, &reg()).unwrap();
        let mut via_pc = BigRational::zero();
        for (e, v) in pc.coeffs() {
            prop_assert_eq!(e % 2, 0);
            via_pc += BigRational::from_integer(v.clone()) * q_pow(q, e / 2);
        }
        prop_assert_eq!(count_realize(&x, q, &reg()).unwrap(), via_pc);
    }

    #[test]
    fn canonical_form_is_unique(c in prop::collection::vec(-3i64..=3, 1..4), a in 1u32..=3, k in 1u32..=4) {
        let p = poly_class(&c);
        let x = p.checked_div(&MotClass::l_pow_minus_one(a)).unwrap();
        let extra = MotClass::l_pow_minus_one(k);
        let y = (&p * &extra)
            .checked_div(&(&MotClass::l_pow_minus_one(a) * &extra))
            .unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn display_round_trips(x in class()) {
        prop_assert_eq!(MotClass::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn certified_classes_count_nonnegatively(x in class()) {
        if effectivity_certificate(&x, &reg()).is_certified() {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                prop_assert!(!count_realize(&x, q, &reg()).unwrap().is_negative());
            }
        }
    }
}

fn shapes() -> impl Strategy<Value = Vec<FactorShape>> {
    prop::collection::vec((0i64..=3, 1u32..=3, 1u32..=2), 1..=3).prop_filter(
        "pairwise non-proportional",
        |v| {
            v.iter()
                .enumerate()
                .all(|(i, s)| v[..i].iter().all(|t| s.0 * t.1 as i64 != t.0 * s.1 as i64))
        },
    )
}

fn series_of(p: &MotPoly, factors: &[DenomFactor]) -> RationalMotSeries {
    let num = LaurentPolyMot::from_dense("T", p.coeffs());
    RationalMotSeries::new(num, factors.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_fraction_form_expands_like_the_original(
        s in shapes(),
        c in prop::collection::vec((-3i64..=3, -2i64..=2), 1..6),
    ) {
        let p = MotPoly::new(c.iter().map(|(a, b)| MotClass::integer(*a) + MotClass::integer(*b) * MotClass::l()).collect());
        let pf = partial_fractions(&p, &s).unwrap();
        let all: Vec<DenomFactor> = s.iter().map(|&(a, b, n)| DenomFactor::single(a, b as i64, n)).collect();
        let original = series_of(&p, &all);
        let mut sum = series_of(&pf.q, &[]);
        for (i, row) in pf.terms.iter().enumerate() {
            for (j, qij) in row.iter().enumerate() {
                let (a, b, _) = s[i];
                let term = series_of(qij, &[DenomFactor::single(a, b as i64, j as u32 + 1)]);
                sum = sum.add(&term).unwrap();
            }
        }
        prop_assert_eq!(sum.expand(100).unwrap(), original.expand(100).unwrap());
    }

    #[test]
    fn dagger_value_commutes_with_counting(
        c in prop::collection::vec(-3i64..=3, 1..4),
        f in prop::collection::vec((-1i64..=2, 1i64..=3, 1u32..=2), 1..3),
        q in 2u64..=5,
    ) {
        let f: Vec<(i64, i64, u32)> = f.into_iter().map(|(a, db, m)| (a, a.max(0) + db, m)).collect();
        let p = MotPoly::new(c.iter().map(|x| MotClass::integer(*x)).collect());
        let factors: Vec<DenomFactor> = f.iter().map(|&(a, b, m)| DenomFactor::single(a, b, m)).collect();
        let z = series_of(&p, &factors);
        prop_assume!(z.is_dagger());
        let value = z.evaluate_dagger_at_linv().unwrap();
        // r(T = 1/q) with L = q
        let t = rat(1, q as i64);
        let mut num = BigRational::zero();
        for (k, x) in c.iter().enumerate() {
            num += BigRational::from_integer(BigInt::from(*x)) * num_traits::pow(t.clone(), k);
        }
        let den = f.iter().fold(BigRational::one(), |acc, &(a, b, m)| {
            let base = BigRational::one() - q_pow(q, a) * q_pow(q, -b);
            acc * num_traits::pow(base, m as usize)
        });
        prop_assert_eq!(at_q(&value, q), num / den);
    }
}

fn window() -> impl Strategy<Value = LocalWindow> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        1u32..=2,
        -1i64..=1,
        1i64..=2,
    )
        .prop_filter("small", |(q, n, _, w)| q.pow(*n * *w as u32) <= 625)
        .prop_map(|(q, n, lo, w)| LocalWindow::new(q, n, lo, lo + w).unwrap())
}

fn table(w: LocalWindow, seed: u64) -> SBLocal {
    use rand::Rng;
    let mut r = rng(seed);
    let vals: Vec<CycValue> = (0..w.size().unwrap())
        .map(|_| CycValue::integer(w.q, r.gen_range(-2..=2)))
        .collect();
    SBLocal::from_values(w, &vals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_is_linear(w in window(), nu in 0i64..=2, s1: u64, s2: u64, c in -3i128..=3) {
        let pairing = ResiduePairing::monomial(w.q, nu);
        let (a, b) = (table(w, s1), table(w, s2));
        let scale = CycValue::integer(w.q, c);
        let lhs = fourier(&a.add(&b.scale(&scale)).unwrap(), &pairing).unwrap();
        let rhs = fourier(&a, &pairing).unwrap().add(&fourier(&b, &pairing).unwrap().scale(&scale)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fourier_table_matches_pointwise_sum(w in window(), nu in 0i64..=2, seed: u64) {
        let pairing = ResiduePairing::monomial(w.q, nu);
        let phi = table(w, seed);
        let f = fourier(&phi, &pairing).unwrap();
        let out = f.window();
        for i in (0..out.size().unwrap()).step_by(7) {
            prop_assert_eq!(fourier_at(&phi, &pairing, &out.point(i)).unwrap(), f.value(i));
        }
    }

    #[test]
    fn integration_ignores_the_level(w in window(), k in 1i64..=2, seed: u64) {
        let phi = table(w, seed);
        prop_assume!(w.q.pow(w.n * (w.hi - w.lo + k) as u32) <= 20_000);
        let fine = phi.pullback(w.hi + k).unwrap();
        prop_assert_eq!(fine.integrate(), phi.integrate());
        prop_assert_eq!(fine.pushforward(w.hi).unwrap(), phi.mul_q_pow(w.n as i64 * k));
    }

    #[test]
    fn translation_invariant_characters_sum_to_zero(w in window(), seed: u64, c in 1u64..5) {
        use rand::Rng;
        let q = w.q;
        let c = c % q;
        prop_assume!(c != 0);
        let mut r = rng(seed);
        let other: Vec<u64> = (0..w.size().unwrap()).map(|_| r.gen_range(0..q)).collect();
        // ψ(c x_0 + g(rest)), x_0 the first digit of the first coordinate
        let phi = SBLocal::from_fn(w, |d| {
            let mut rest = d.to_vec();
            rest[0][0] = 0;
            let g = other[w.index(&rest)];
            CycValue::zeta_pow(q, (c * d[0][0] + g) % q)
        })
        .unwrap();
        prop_assert!(phi.integrate().is_zero());
    }
}

fn divisor() -> impl Strategy<Value = (u64, Divisor)> {
    prop::sample::select(vec![2u64, 3, 5]).prop_flat_map(|q| {
        let places: Vec<Place> = Place::all(q);
        (
            Just(q),
            prop::collection::vec((prop::sample::select(places), -3i64..=3), 0..4),
        )
            .prop_map(|(q, v)| {
                let mut d = Divisor::zero();
                for (pl, k) in v {
                    d.add_at(pl, k);
                }
                (q, d)
            })
            .prop_filter("|deg D| <= 6", |(_, d)| d.degree().abs() <= 6)
    })
}

fn poly(q: u64, c: &[u64]) -> FpPoly {
    FpPoly::new(q, c.iter().map(|x| x % q).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn riemann_roch((q, d) in divisor()) {
        let omega = Divisor::from_pairs(&[(Place::Infinity, -2)]);
        let l = riemann_roch_basis(&d, q).unwrap();
        let l_dual = riemann_roch_basis(&omega.add(&d.neg()), q).unwrap();
        prop_assert_eq!(l.dim() as i64 - l_dual.dim() as i64, d.degree() + 1);
        for f in &l.basis {
            for pl in Place::all(q) {
                prop_assert!(ord_at(f, pl).unwrap() + d.get(pl) >= 0);
            }
        }
    }

    #[test]
    fn residues_sum_to_zero(
        q in prop::sample::select(vec![2u64, 3, 5]),
        num in prop::collection::vec(0u64..5, 1..5),
        roots in prop::collection::vec((0u64..5, 1u32..=2), 1..3),
        g in prop::collection::vec(0u64..5, 1..3),
    ) {
        let den = roots.iter().fold(FpPoly::one(q), |acc, (c, k)| acc.mul(&FpPoly::linear(q, c % q).pow(*k)));
        let x = RatFn::new(poly(q, &num), den).unwrap();
        let g = RatFn::from_poly(poly(q, &g));
        prop_assume!(!x.is_zero() && !g.is_zero());
        prop_assert!(residue_theorem_check(&x, &g).unwrap());
    }

    #[test]
    fn global_inversion_factor(
        q in prop::sample::select(vec![2u64, 3]),
        n in 1u32..=2,
        lo in -1i64..=0,
        w in 0i64..=1,
        c in 0u64..3,
    ) {
        let c = c % q;
        let center = vec![motzeta::local_harmonic::FpLaurent::constant(q, c); n as usize];
        let phi = GlobalSB::simple(q, n, &[(Place::Finite(c), lo, lo + w, center)]).unwrap();
        let rep = global_inversion_check(&phi, &RatFn::constant(q, 1)).unwrap();
        prop_assert_eq!(rep.exponent, -2 * n as i64);
        prop_assert!(rep.factorwise_equal);
    }
}

fn chart() -> impl Strategy<Value = MonomialChart> {
    (1usize..=2)
        .prop_flat_map(|n| (Just(n), 1usize..=n))
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                prop::collection::vec(2i64..=4, k),
                -1i64..=1,
                prop::collection::vec(0i64..=2, k),
            )
        })
        .prop_map(|(n, rho, rho_beta, e)| MonomialChart {
            n,
            rho,
            rho_beta,
            e,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grouping_by_maximal_faces(c in chart()) {
        let datum = c.to_datum().unwrap();
        let r = reg();
        let z = local_z_trivial(&datum, &r).unwrap();
        let grouped = local_z_grouped(&datum, &r).unwrap().sum(&datum.vars()).unwrap();
        prop_assert_eq!(&grouped, &z);
        let k = c.rho.len();
        for m in 0..=2i64 {
            let e = vec![m; k];
            prop_assert_eq!(grouped.coefficient(&e).unwrap(), z.coefficient(&e).unwrap());
        }
    }

    #[test]
    fn exponential_poles_shrink(c in chart(), polar in prop::collection::vec(0u32..=1, 2)) {
        let datum = c.to_datum().unwrap();
        let d: BTreeMap<String, u32> = (0..c.rho.len()).map(|i| (format!("x{i}"), polar[i])).collect();
        let ex = igusa_with_exponential(&datum, &d).unwrap();
        prop_assert!(ex.denominators.iter().all(|f| ex.trivial_denominators.contains(f)));
        let any_polar = d.values().any(|v| *v > 0);
        prop_assert_eq!(ex.strict, any_polar);
    }

    #[test]
    fn leading_constant_is_effective(c in chart()) {
        let datum = c.to_datum().unwrap();
        let a = c.rho.iter().fold(1i64, |acc, r| num_integer::lcm(acc, r - 1));
        let lc = leading_constant(&[datum], &[], a, &reg()).unwrap();
        prop_assert!(!lc.value.is_zero());
        prop_assert!(lc.effectivity.is_certified());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn section_counts_agree(q in prop::sample::select(vec![2u64, 3, 5]), n in 0usize..=4) {
        let geom = ToyGeometry::new(q).unwrap();
        let r = reg();
        let brute = brute_force_sections(q, n).unwrap().counts;
        let want: Vec<u64> = (0..=n as u32).map(|k| if k == 0 { q } else { (q - 1) * q.pow(k) }).collect();
        prop_assert_eq!(&brute, &want);
        let symbolic = realized_coefficients(&toy_z_symbolic(&geom, &r).unwrap(), n, q, &r).unwrap();
        let poisson = assemble_z_poisson(&geom, n).unwrap().coefficients;
        let exact: Vec<BigRational> = want.iter().map(|c| BigRational::from_integer(BigInt::from(*c))).collect();
        prop_assert_eq!(symbolic, exact.clone());
        prop_assert_eq!(poisson, exact);
    }
}
