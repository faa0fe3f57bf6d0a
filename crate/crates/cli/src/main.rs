//! `turanlab` batch front end.
//!
//! Exit status: 0 on success, 1 when a check with a declared expectation
//! found violations, 2 on configuration or domain errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{Case, CommandKind, Format, RunConfig, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Domain(String),
    #[error("output: {0}")]
    Output(String),
}

#[derive(Parser, Debug)]
#[command(name = "turanlab", version, about = "Generalized Turánians of parameterized power series")]
struct Cli {
    /// TOML or JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Truncation order N.
    #[arg(short = 'N', long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Default)]
struct Point {
    /// Family name: KS, G2, F3, H, Y, YRecip, YGamma, GammaSeries1,
    /// PochReciprocal2, or any of these with a `[k=p/q]` suffix.
    #[arg(long)]
    family: Option<String>,
    /// constant:c, factorial, factorial-reciprocal, geometric:r,
    /// list:v0,v1,..., hyp:a1,a2;b1,b2
    #[arg(long)]
    seq: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Δ coefficients, Gauss-paired rows and verdict at one point.
    Turanian {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Exact sign scan over a (μ, α, β) grid, or a theorem evidence suite.
    Scan {
        #[command(flatten)]
        point: Point,
        /// Comma-separated rationals.
        #[arg(long)]
        mu_grid: Option<String>,
        #[arg(long)]
        alpha_grid: Option<String>,
        #[arg(long)]
        beta_grid: Option<String>,
        /// NonNegative, NonPositive, Zero or Unknown.
        #[arg(long)]
        expected: Option<String>,
        #[arg(long)]
        strict_from: Option<usize>,
        /// second-hyp-log-convex, second-hyp-log-concave,
        /// discrete-log-concave or negative-coefficients.
        #[arg(long)]
        theorem: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
    /// Parameter conditions: Fox-Wright (default: the worked example) or a
    /// hypergeometric term ratio.
    Conditions {
        /// Comma-separated a_i.
        #[arg(long)]
        a: Option<String>,
        #[arg(long = "A")]
        big_a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long = "B")]
        big_b: Option<String>,
        #[arg(long)]
        theta: Option<String>,
    },
    /// Reproduce the printed counterexamples.
    Reproduce {
        #[arg(long, value_enum)]
        case: Option<Case>,
    },
    /// Random trials against an open conjecture.
    Fuzz {
        /// f3-log-concave, h-log-concave, h-log-convex, y-recip-log-concave
        /// or y-gamma-log-concave.
        #[arg(long)]
        conjecture: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn enum_value<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_value(serde_json::Value::String(text.to_string()))
        .map_err(|_| CliError::Config(format!("unknown {what} `{text}`")))
}

fn rational(text: &str) -> Result<turanlab::exact::Rational, CliError> {
    turanlab::exact::parse_rational(text).map_err(|e| CliError::Config(e.to_string()))
}

/// Merge command-line flags over the config file.
fn merge(cli: Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => config::load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(n) = cli.order {
        cfg.order = Some(n);
    }
    if let Some(s) = cli.seed {
        cfg.seed = Some(s);
    }
    if let Some(f) = cli.format {
        cfg.output.format = f;
    }
    if let Some(p) = cli.out {
        cfg.output.path = Some(p);
    }
    let set_point = |cfg: &mut RunConfig, p: &Point| -> Result<(), CliError> {
        if let Some(f) = &p.family {
            cfg.family = Some(config::parse_family(f)?);
        }
        if let Some(s) = &p.seq {
            cfg.sequence = Some(config::parse_sequence(s)?);
        }
        Ok(())
    };
    let kind = match &cli.command {
        None => None,
        Some(Command::Turanian { point, mu, alpha, beta }) => {
            set_point(&mut cfg, point)?;
            for (slot, v) in [(&mut cfg.mu, mu), (&mut cfg.alpha, alpha), (&mut cfg.beta, beta)] {
                if let Some(v) = v {
                    *slot = Some(rational(v)?);
                }
            }
            Some(CommandKind::Turanian)
        }
        Some(Command::Scan {
            point,
            mu_grid,
            alpha_grid,
            beta_grid,
            expected,
            strict_from,
            theorem,
        }) => {
            set_point(&mut cfg, point)?;
            for (slot, v) in [
                (&mut cfg.mu_grid, mu_grid),
                (&mut cfg.alpha_grid, alpha_grid),
                (&mut cfg.beta_grid, beta_grid),
            ] {
                if let Some(v) = v {
                    *slot = config::parse_grid(v)?;
                }
            }
            if let Some(e) = expected {
                cfg.expected = Some(enum_value("expectation", e)?);
            }
            if strict_from.is_some() {
                cfg.strict_from = *strict_from;
            }
            if let Some(t) = theorem {
                cfg.theorem = Some(enum_value("theorem", t)?);
            }
            Some(CommandKind::Scan)
        }
        Some(Command::Verify { suite }) => {
            if suite.is_some() {
                cfg.suite = *suite;
            }
            Some(CommandKind::Verify)
        }
        Some(Command::Conditions {
            a,
            big_a,
            b,
            big_b,
            theta,
        }) => {
            let given = [a, big_a, b, big_b, theta];
            if given.iter().any(|v| v.is_some()) {
                let list = |v: &Option<String>, name: &str| -> Result<Vec<_>, CliError> {
                    config::parse_grid(v.as_deref().ok_or_else(|| {
                        CliError::Config(format!("Fox-Wright parameters need --{name}"))
                    })?)
                };
                cfg.foxwright = Some(turanlab::conditions::FoxWrightParams {
                    a: list(a, "a")?,
                    big_a: list(big_a, "A")?,
                    b: list(b, "b")?,
                    big_b: list(big_b, "B")?,
                    theta: rational(theta.as_deref().unwrap_or("1"))?,
                });
            }
            Some(CommandKind::Conditions)
        }
        Some(Command::Reproduce { case }) => {
            if case.is_some() {
                cfg.case = *case;
            }
            Some(CommandKind::Reproduce)
        }
        Some(Command::Fuzz { conjecture, trials }) => {
            if let Some(c) = conjecture {
                cfg.conjecture = Some(enum_value("conjecture", c)?);
            }
            if trials.is_some() {
                cfg.trials = *trials;
            }
            Some(CommandKind::Fuzz)
        }
    };
    if let Some(k) = kind {
        if cfg.command.is_some_and(|c| c != k) {
            return Err(CliError::Config(format!(
                "the config declares command {:?} but {:?} was requested",
                cfg.command.unwrap(),
                k
            )));
        }
        cfg.command = Some(k);
    }
    Ok(cfg)
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("TURANLAB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Config(format!("TURANLAB_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = init_threads()
        .and_then(|_| merge(cli))
        .and_then(|cfg| {
            let report = commands::run(&cfg)?;
            output::emit(&report, &cfg.output)?;
            Ok(report.failed)
        });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("turanlab: {e}");
            ExitCode::from(2)
        }
    }
}
