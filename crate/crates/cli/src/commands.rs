//! One function per subcommand; each returns the text and JSON renderings.

use serde_json::{json, Value};

use motzeta::global_poisson::{poisson_check, GlobalConfig};
use motzeta::grot_ring::{SymbolConfig, SymbolRegistry};
use motzeta::height_zeta::{
    as_integers, brute_force_sections, theorem_main_check, toy_z_symbolic, GeometryConfig,
    ToyGeometry,
};
use motzeta::igusa_clemens::{
    clemens, igusa_with_exponential, leading_constant, local_z_grouped, local_z_integral_place,
    local_z_trivial,
};
use motzeta::local_harmonic::{inversion_check, FpLaurent, ResiduePairing, SBLocal};
use motzeta::rational_series::{
    partial_fractions, tauberian_report, CaseTag, MotPoly, RationalMotSeries, TauberConfig,
};
use motzeta::registry::{fourier_kernels, oscillatory_methods, section_counters};

use crate::config::{IgusaConfig, LocalConfig, OscConfig, SeriesConfig};
use crate::error::CliError;

pub struct Report {
    pub text: String,
    pub json: Value,
}

fn registry(symbols: &[SymbolConfig]) -> Result<SymbolRegistry, CliError> {
    Ok(SymbolRegistry::from_configs(symbols)?)
}

fn series_of(cfg: &SeriesConfig) -> Result<RationalMotSeries, CliError> {
    Ok(RationalMotSeries::from_json(&cfg.series)?)
}

pub fn series_expand(cfg: &SeriesConfig, depth: usize) -> Result<Report, CliError> {
    let z = series_of(cfg)?;
    let coeffs = z.expand(depth + 1)?;
    let coeffs: Vec<String> = coeffs
        .iter()
        .take(depth + 1)
        .map(|c| c.to_string())
        .collect();
    let text = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| format!("T^{k}: {c}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report {
        text,
        json: json!({ "series": z.to_string(), "coefficients": coeffs }),
    })
}

pub fn series_pfrac(cfg: &SeriesConfig) -> Result<Report, CliError> {
    let z = series_of(cfg)?;
    if z.nvars() != 1 || z.numerator().has_negative_exponents() {
        return Err(CliError::Usage(
            "pfrac needs a polynomial numerator in one variable".into(),
        ));
    }
    let p = MotPoly::new(z.numerator().to_dense()?);
    let shapes: Vec<(i64, u32, u32)> = z
        .factors()
        .iter()
        .map(|f| {
            u32::try_from(f.b[0])
                .map(|b| (f.a, b, f.mult))
                .map_err(|_| CliError::Usage("factor degrees must be positive".into()))
        })
        .collect::<Result<_, _>>()?;
    let pf = partial_fractions(&p, &shapes)?;
    let poly = |p: &MotPoly| -> String {
        let parts: Vec<String> = p.coeffs().iter().map(|c| format!("({c})")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{c}*T^{k}"))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    };
    let mut lines = vec![format!("polynomial part: {}", poly(&pf.q))];
    for ((a, b, _), terms) in pf.factors.iter().zip(&pf.terms) {
        for (j, t) in terms.iter().enumerate() {
            if !t.is_zero() {
                lines.push(format!("[{}] / (1 - L^{a} T^{b})^{}", poly(t), j + 1));
            }
        }
    }
    lines.push(format!("recombines: {}", pf.recombine() == p));
    Ok(Report {
        text: lines.join("\n"),
        json: serde_json::to_value(&pf).expect("serializable"),
    })
}

pub fn series_taub(cfg: &SeriesConfig, horizon: Option<usize>) -> Result<Report, CliError> {
    let z = series_of(cfg)?;
    let reg = registry(&cfg.symbols)?;
    let mut tc = TauberConfig::default();
    if let Some(h) = horizon {
        tc.horizon = h;
    }
    if let Some(b) = cfg.burn_in {
        tc.burn_in = b;
    }
    if tc.burn_in > tc.horizon {
        return Err(CliError::Usage(format!(
            "burn-in {} exceeds horizon {}",
            tc.burn_in, tc.horizon
        )));
    }
    let r = tauberian_report(&z, cfg.modulus, cfg.order, tc, &reg)?;
    let mut lines = vec![
        format!("P(L^-1) = {}", r.p_at_linv),
        format!("effective: {}", r.effectivity.is_certified()),
    ];
    for c in &r.classes {
        let case = match c.case {
            CaseTag::Case1 => "case 1".to_string(),
            CaseTag::Case2 => format!(
                "case 2, dim-n → {}, nu-exponent → {}",
                c.dim_limit.map_or("?".into(), |v| v.to_string()),
                c.log_nu_exponent.map_or("?".into(), |v| v.to_string())
            ),
            CaseTag::EmptyClass => "empty".to_string(),
        };
        lines.push(format!(
            "class {} mod {}: {case}; mismatches {}",
            c.p,
            r.modulus,
            c.mismatches.len()
        ));
    }
    lines.push(format!("verified={}", r.verified()));
    Ok(Report {
        text: lines.join("\n"),
        json: serde_json::to_value(&r).expect("serializable"),
    })
}

fn render_point(x: &[FpLaurent]) -> String {
    x.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn local_inputs(cfg: &LocalConfig) -> Result<(SBLocal, ResiduePairing), CliError> {
    let phi = cfg.factor().local(cfg.q, cfg.n)?;
    let pairing = match &cfg.form {
        Some(f) => ResiduePairing::exact(FpLaurent::from_config(cfg.q, f))?,
        None => ResiduePairing::monomial(cfg.q, cfg.nu),
    };
    Ok((phi, pairing))
}

pub fn local_fourier(cfg: &LocalConfig, method: Option<&str>) -> Result<Report, CliError> {
    let kernels = fourier_kernels();
    let kernel = kernels.select(method)?;
    let (phi, pairing) = local_inputs(cfg)?;
    let f = kernel.transform(&phi, &pairing)?;
    let w = f.window();
    let mut lines = vec![format!(
        "kernel={} conductor={} dual level=({}, {})",
        kernel.name(),
        pairing.conductor(),
        w.lo,
        w.hi
    )];
    let mut table = Vec::new();
    for (idx, v) in f.values().iter().enumerate() {
        if !v.is_zero() {
            let x = render_point(&w.point(idx));
            lines.push(format!("[{x}] {v}"));
            table.push(json!({ "point": x, "value": v.to_string() }));
        }
    }
    Ok(Report {
        text: lines.join("\n"),
        json: json!({
            "kernel": kernel.name(),
            "conductor": pairing.conductor(),
            "level": [w.lo, w.hi],
            "support": table,
        }),
    })
}

pub fn local_invert(cfg: &LocalConfig, method: Option<&str>) -> Result<Report, CliError> {
    let kernels = fourier_kernels();
    let kernel = kernels.select(method)?;
    let (phi, pairing) = local_inputs(cfg)?;
    let ok = inversion_check(&phi, &pairing, kernel)?;
    let exp = -(cfg.n as i64) * pairing.conductor();
    Ok(Report {
        text: format!("FF(phi) = q^{exp} phi(-x): {ok}"),
        json: json!({ "kernel": kernel.name(), "exponent": exp, "equal": ok }),
    })
}

pub fn local_osc(cfg: &OscConfig, method: Option<&str>) -> Result<Report, CliError> {
    let methods = oscillatory_methods();
    let m = methods.select(method)?;
    let a = FpLaurent::from_config(cfg.q, &cfg.a);
    let v = m.integral(cfg.m, cfg.d, &a)?;
    Ok(Report {
        text: v.to_string(),
        json: json!({
            "method": m.name(),
            "q": cfg.q,
            "m": cfg.m,
            "d": cfg.d,
            "a": a.to_string(),
            "value": v.to_string(),
        }),
    })
}

pub fn poisson(cfg: &GlobalConfig) -> Result<Report, CliError> {
    let (phi, g) = cfg.build()?;
    let r = poisson_check(&phi, &g)?;
    Ok(Report {
        text: format!("lhs={} rhs={} equal={}", r.lhs, r.rhs, r.equal),
        json: json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "equal": r.equal }),
    })
}

pub fn igusa(cfg: &IgusaConfig) -> Result<Report, CliError> {
    let reg = registry(&cfg.symbols)?;
    let d = &cfg.datum;
    d.validate(Some(&reg))?;
    let complex = clemens(d)?;
    let name = |f: &Vec<usize>| -> Vec<String> {
        f.iter().map(|a| d.horizontal[*a].name.clone()).collect()
    };
    let maximal: Vec<Vec<String>> = complex.maximal.iter().map(name).collect();
    let z = local_z_trivial(d, &reg)?;
    let grouped = local_z_grouped(d, &reg)?;
    let grouped_equal = grouped.sum(&d.vars())? == z;
    let mut lines = vec![
        format!(
            "clemens: d_v={} maximal={:?}",
            complex.d_v().map_or("none".into(), |v| v.to_string()),
            maximal
        ),
        format!("Z(T,0) = {z}"),
        format!("grouped by maximal faces: {grouped_equal}"),
    ];
    let mut json = json!({
        "d_v": complex.d_v(),
        "maximal": maximal,
        "z": z.to_string(),
        "grouped_equal": grouped_equal,
    });
    if !cfg.polar.is_empty() {
        let e = igusa_with_exponential(d, &cfg.polar)?;
        let dens: Vec<String> = e
            .denominators
            .iter()
            .map(|f| {
                let vars = d.vars();
                format!("1 - L^{} {}", f.a, monomial(&vars, &f.b))
            })
            .collect();
        lines.push(format!(
            "exponential denominators: {dens:?} strict={}",
            e.strict
        ));
        json["exponential"] = json!({ "denominators": dens, "strict": e.strict });
    }
    if !d.integral.is_empty() {
        let ip = local_z_integral_place(d, &reg)?;
        lines.push(format!(
            "integral place: Z = {} value = {} effective={}",
            ip.z,
            ip.value_at_linv,
            ip.effectivity.is_certified()
        ));
        json["integral"] = serde_json::to_value(&ip).expect("serializable");
    }
    if let Some(a) = cfg.a {
        let lc = leading_constant(std::slice::from_ref(d), &[], a, &reg)?;
        lines.push(format!(
            "leading constant: {} effective={}",
            lc.value,
            lc.effectivity.is_certified()
        ));
        lines.extend(lc.diagnostics.iter().map(|s| format!("note: {s}")));
        json["leading_constant"] = serde_json::to_value(&lc).expect("serializable");
    }
    Ok(Report {
        text: lines.join("\n"),
        json,
    })
}

fn monomial(vars: &[String], e: &[i64]) -> String {
    vars.iter()
        .zip(e)
        .filter(|(_, k)| **k != 0)
        .map(|(v, k)| {
            if *k == 1 {
                v.clone()
            } else {
                format!("{v}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn list(v: &[impl ToString]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn height(
    geom: &GeometryConfig,
    n_max: usize,
    method: Option<&str>,
) -> Result<Report, CliError> {
    let g = ToyGeometry::from_config(geom)?;
    let counters = section_counters();
    let counter = counters.select(method)?;
    let coeffs = counter.counts(&g, n_max)?;
    let brute = brute_force_sections(g.q, n_max)?.counts;
    let matched = as_integers(&coeffs).as_deref() == Some(&brute[..]);
    let reg = SymbolRegistry::new();
    let z = toy_z_symbolic(&g, &reg)?;
    let th = theorem_main_check(
        &z,
        1,
        1,
        TauberConfig {
            burn_in: 5,
            horizon: 40,
        },
        &reg,
    )?;
    let text = [
        format!("method={}", counter.name()),
        format!("coefficients={}", list(&coeffs)),
        format!("brute={}", list(&brute)),
        format!("match={matched}"),
        format!("Z_U(T) = {z}"),
        format!(
            "pole order 1: P_U(L^-1) = {} effective={}",
            th.p_at_linv,
            th.effectivity.is_certified()
        ),
    ]
    .join("\n");
    Ok(Report {
        text,
        json: json!({
            "method": counter.name(),
            "coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "brute": brute,
            "match": matched,
            "theorem": { "z": z.to_string(), "p_at_linv": th.p_at_linv.to_string() },
            "effective": th.effectivity.is_certified(),
        }),
    })
}
