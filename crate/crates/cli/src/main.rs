//! `drinfeld`: verification suites, u-expansions and cusp reports.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or configuration
//! error, 3 internal inconsistency of the series engine.

mod config;
mod series;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use drinfeld_core::opcalc::IdentityId;

use config::SuiteConfig;
use series::{FieldArgs, SeriesCmd};

#[derive(Debug, Parser)]
#[command(name = "drinfeld", version, about = "Hecke and Atkin-Lehner operators for Drinfeld modular forms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Verify the identity catalog over a parameter grid.
    Verify {
        /// TOML suite configuration; the built-in default grid otherwise.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path (JSON); overrides the config's `output`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negative control: corrupt the left side of this identity.
        #[arg(long)]
        perturb: Option<String>,
        /// Record wall time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Series computations.
    Series {
        /// TOML configuration supplying series defaults.
        #[arg(long, global = true)]
        config: Option<PathBuf>,
        /// Write JSON here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Cusps of X_0(n) and the Atkin–Lehner action on them.
    Cusps {
        #[arg(long)]
        level: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(v: &serde_json::Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Verify { config, out, perturb, timing } => {
            let cfg = match &config {
                Some(p) => SuiteConfig::load(p)?,
                None => SuiteConfig::default_suite(),
            };
            let perturb = match perturb {
                Some(name) => {
                    Some(IdentityId::from_name(&name).ok_or_else(|| anyhow::anyhow!("unknown identity {name:?}"))?)
                }
                None => None,
            };
            let report = verify::run_verify(&cfg, perturb, timing)?;
            let s = &report.summary;
            eprintln!(
                "{} instances: {} pass, {} fail, {} not applicable; {} grid points skipped",
                s.total, s.pass, s.fail, s.not_applicable, s.skipped
            );
            eprint!("{}", verify::render_failures(&report));
            let out = out.or_else(|| cfg.output.as_ref().map(PathBuf::from));
            emit(&serde_json::to_value(&report)?, out.as_ref())?;
            Ok(if report.summary.fail > 0 { 1 } else { 0 })
        }
        Cmd::Series { config, out, cmd } => {
            let cfg = config.as_deref().map(SuiteConfig::load).transpose()?;
            emit(&series::run_series(&cmd, cfg.as_ref())?, out.as_ref())?;
            Ok(0)
        }
        Cmd::Cusps { level, field, out } => {
            emit(&series::cusps_json(&field, &level)?, out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e
                .chain()
                .any(|c| c.downcast_ref::<drinfeld_core::Error>().is_some_and(|e| e.is_internal_inconsistency()));
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}
