//! `hullbound` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when an emitted
//! certificate or construction fails its independent re-check. Reports are
//! still written in the last case.

// `!(x > 0)` style tests are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use config::{Command, RunConfig};

#[derive(Parser)]
#[command(
    name = "hullbound",
    version,
    about = "Degree-bounded polynomial hulls: oracles, certificates and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    config: Value,
    verified: bool,
    result: Value,
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("HULLBOUND_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| anyhow!("HULLBOUND_THREADS must be a positive integer, got {v:?}"))?;
    anyhow::ensure!(n > 0, "HULLBOUND_THREADS must be positive");
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

/// Runs the command and writes its artifacts; returns the verification flag.
fn run(cli: Cli) -> Result<bool> {
    init_threads()?;
    let mut cfg = cli.config.resolve()?;
    let cmd = cli
        .command
        .or(cfg.subcommand)
        .ok_or_else(|| anyhow!("no subcommand given on the command line or in the config file"))?;
    cfg.subcommand = Some(cmd);
    let outcome = commands::run(cmd, &cfg)?;

    let config = config::strip_nulls(serde_json::to_value(&cfg)?);
    let envelope = Envelope { command: cmd.name(), config, verified: outcome.verified, result: outcome.result };
    let json = output::to_json(&envelope)?;
    match &cfg.out {
        Some(path) => output::write_file(path, &json)?,
        None => std::io::stdout().write_all(json.as_bytes()).context("writing report")?,
    }
    if let (Some(path), Some(csv)) = (&cfg.csv, &outcome.csv) {
        output::write_file(path, csv)?;
    }
    if let Some(path) = &cfg.svg {
        output::write_file(path, &outcome.svg.render())?;
    }
    Ok(outcome.verified)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("hullbound: verification failed; see \"verified\" in the report");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("hullbound: {e:#}");
            ExitCode::from(1)
        }
    }
}
