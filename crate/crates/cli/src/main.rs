//! `qsphere <suite|verb> [--q p/r] [--cutoff N] [--degree d] [--json]`

mod verbs;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsphere::suite::{self, ConfigError, Report, Suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "qsphere", version, about = "Exact checks for the quantum 4-sphere")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Deformation parameter for numeric checks, as p/r.
    #[arg(long = "q", global = true, default_value = "1/2")]
    q: String,
    #[arg(long, global = true, default_value_t = qsphere::fock::DEFAULT_CUTOFF)]
    cutoff: u32,
    /// Degree bound for bounded-degree linear algebra.
    #[arg(long, global = true, default_value_t = qsphere::chern::DEFAULT_DEGREE_BOUND)]
    degree: usize,
    #[arg(long, global = true)]
    json: bool,
    /// Suites run concurrently.
    #[arg(long, global = true, default_value_t = 1)]
    parallelism: usize,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Every suite.
    All,
    /// Completion, embedding and basis checks.
    Presentations,
    /// Coideal, quotient and coinvariant checks.
    Quotient {
        #[command(subcommand)]
        verb: Option<verbs::QuotientVerb>,
    },
    /// Sections, the projector G and the classical limit.
    Bundle {
        #[command(subcommand)]
        verb: Option<verbs::BundleVerb>,
    },
    /// Semiclassical limit and coisotropy.
    Poisson {
        #[command(subcommand)]
        verb: Option<verbs::PoissonVerb>,
    },
    /// Fock representation, traces and trace-class estimates.
    Fock {
        #[command(subcommand)]
        verb: Option<verbs::FockVerb>,
    },
    /// Chern characters and the pairing.
    Chern {
        #[command(subcommand)]
        verb: Option<verbs::ChernVerb>,
    },
    /// Normal form of an expression in a named presentation.
    Nf { presentation: String, expr: String },
}

fn config(opts: &Opts, suites: Vec<Suite>) -> Result<SuiteConfig, ConfigError> {
    let mut cfg = SuiteConfig {
        suites,
        q0: suite::parse_q(&opts.q)?,
        cutoff: opts.cutoff,
        degree_bound: opts.degree,
        parallelism: opts.parallelism,
        ..SuiteConfig::default()
    };
    if let Some(s) = suite::step_limit_from_env()? {
        cfg.step_limit = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<Report, ConfigError> {
    let whole = |s: Vec<Suite>| -> Result<Report, ConfigError> { suite::run(&config(&cli.opts, s)?) };
    match &cli.cmd {
        Cmd::All => whole(suite::ALL_SUITES.to_vec()),
        Cmd::Presentations => whole(vec![Suite::Presentations]),
        Cmd::Quotient { verb: None } => whole(vec![Suite::Quotient]),
        Cmd::Bundle { verb: None } => whole(vec![Suite::Bundle]),
        Cmd::Poisson { verb: None } => whole(vec![Suite::Poisson]),
        Cmd::Fock { verb: None } => whole(vec![Suite::Fock]),
        Cmd::Chern { verb: None } => whole(vec![Suite::Chern]),
        Cmd::Quotient { verb: Some(v) } => {
            let cfg = config(&cli.opts, vec![Suite::Quotient])?;
            Ok(Report::new(cfg.clone(), verbs::quotient(v, &cfg)))
        }
        Cmd::Bundle { verb: Some(v) } => {
            let cfg = config(&cli.opts, vec![Suite::Bundle])?;
            Ok(Report::new(cfg.clone(), verbs::bundle(v, &cfg)))
        }
        Cmd::Poisson { verb: Some(v) } => {
            let cfg = config(&cli.opts, vec![Suite::Poisson])?;
            Ok(Report::new(cfg.clone(), verbs::poisson(v, &cfg)))
        }
        Cmd::Fock { verb: Some(v) } => {
            let cfg = config(&cli.opts, vec![Suite::Fock])?;
            Ok(Report::new(cfg.clone(), verbs::fock(v, &cfg)))
        }
        Cmd::Chern { verb: Some(v) } => {
            let cfg = config(&cli.opts, vec![Suite::Chern])?;
            Ok(Report::new(cfg.clone(), verbs::chern(v, &cfg)?))
        }
        Cmd::Nf { presentation, expr } => {
            let cfg = config(&cli.opts, vec![])?;
            Ok(Report::new(cfg.clone(), vec![verbs::nf(presentation, expr, &cfg)]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(rep) => {
            let text = if cli.opts.json {
                serde_json::to_string_pretty(&rep).expect("report serializes") + "\n"
            } else {
                rep.render_text()
            };
            // a closed pipe is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("qsphere: {e}");
            ExitCode::from(2)
        }
    }
}
