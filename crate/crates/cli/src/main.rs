//! `motzeta`: command-line workbench over the motzeta library.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use motzeta::global_poisson::GlobalConfig;
use motzeta::height_zeta::GeometryConfig;
use motzeta::local_harmonic::LaurentConfig;

use crate::commands::Report;
use crate::config::{load, OscConfig};
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "motzeta",
    version,
    about = "Exact motivic height-zeta workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// JSON configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Field size (prime).
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Number of coefficients beyond T^0 (expand, height).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Last coefficient checked by the tauberian analysis.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Algorithm variant, by registered name.
    #[arg(long, global = true)]
    method: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Rational series: expansion, partial fractions, tauberian report.
    Series {
        #[command(subcommand)]
        action: SeriesAction,
    },
    /// Local harmonic analysis on F_q((t))^n.
    Local {
        #[command(subcommand)]
        action: LocalAction,
    },
    /// Poisson summation for a global Schwartz–Bruhat function on P^1.
    Poisson,
    /// Clemens complex and local zeta functions of a boundary datum.
    Igusa,
    /// End-to-end toy height zeta function.
    Height,
}

#[derive(Subcommand)]
enum SeriesAction {
    Expand,
    Pfrac,
    Taub,
}

#[derive(Subcommand)]
enum LocalAction {
    Fourier,
    Invert,
    /// Oscillatory integral over t^m R of ψ(a x^d).
    Osc {
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long)]
        d: Option<u32>,
        /// Use a = t^{ord_a}.
        #[arg(long = "ord-a", allow_hyphen_values = true)]
        ord_a: Option<i64>,
    },
}

fn need_config(opts: &Opts) -> Result<&PathBuf, CliError> {
    opts.config
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --config PATH".into()))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let o = &cli.opts;
    let method = o.method.as_deref();
    match &cli.command {
        Command::Series { action } => {
            let cfg = load(need_config(o)?)?;
            match action {
                SeriesAction::Expand => commands::series_expand(&cfg, o.depth.unwrap_or(10)),
                SeriesAction::Pfrac => commands::series_pfrac(&cfg),
                SeriesAction::Taub => commands::series_taub(&cfg, o.precision),
            }
        }
        Command::Local { action } => match action {
            LocalAction::Fourier => commands::local_fourier(&load(need_config(o)?)?, method),
            LocalAction::Invert => commands::local_invert(&load(need_config(o)?)?, method),
            LocalAction::Osc { m, d, ord_a } => {
                let cfg = match &o.config {
                    Some(p) => load(p)?,
                    None => {
                        let (Some(m), Some(d), Some(ord_a)) = (m, d, ord_a) else {
                            return Err(CliError::Usage(
                                "osc needs --config or all of --m, --d, --ord-a".into(),
                            ));
                        };
                        OscConfig {
                            q: o.q.unwrap_or(3),
                            m: *m,
                            d: *d,
                            a: LaurentConfig {
                                ord: *ord_a,
                                digits: vec![1],
                            },
                        }
                    }
                };
                commands::local_osc(&cfg, method)
            }
        },
        Command::Poisson => {
            let cfg: GlobalConfig = match &o.config {
                Some(p) => load(p)?,
                None => GlobalConfig {
                    q: o.q.unwrap_or(3),
                    n: 1,
                    form: None,
                    factors: Vec::new(),
                },
            };
            commands::poisson(&cfg)
        }
        Command::Igusa => commands::igusa(&load(need_config(o)?)?),
        Command::Height => {
            let mut cfg: GeometryConfig = match &o.config {
                Some(p) => load(p)?,
                None => GeometryConfig {
                    q: 3,
                    sigma: Vec::new(),
                    form: None,
                    enlarge: Vec::new(),
                },
            };
            if let Some(q) = o.q {
                cfg.q = q;
            }
            commands::height(&cfg, o.depth.unwrap_or(4), method)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.opts.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("JSON value")
                );
            } else {
                println!("{}", r.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
