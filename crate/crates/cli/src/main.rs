//! `epsw`: W-volume, Polyakov–Alvarez checks, Schottky bounds and Loewner energy from JSON configs.

mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{error_kind, error_status, exit, guidance};
use config::{Command, RunConfig};

#[derive(Parser)]
#[command(name = "epsw", version, about = "W-volume of conformal metrics on circle-bounded domains")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// JSON run configuration; defaults are used for absent sections.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Scales every quadrature count to this boundary resolution (a power of two).
    #[arg(long, global = true, value_name = "N")]
    resolution: Option<usize>,
    /// Report destination; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// OBJ mesh destination for `schottky` and `epstein-export`.
    #[arg(long, global = true, value_name = "PATH")]
    obj: Option<PathBuf>,
    /// Seed of the randomized checks in `selftest`.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// W-volume of a metric with its term breakdown.
    Wvol,
    /// Compares the W-volume difference with the planar conformal-variation terms.
    PolyakovCheck,
    /// Convex core and renormalized-volume bounds of a Schottky configuration.
    Schottky,
    /// Loewner energy of a Jordan curve by the volume and planar routes.
    Loewner,
    /// Writes the Epstein, caterpillar and cap pieces as an OBJ mesh.
    EpsteinExport,
    /// Quick end-to-end checks of every pipeline.
    Selftest,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Wvol => Command::Wvol,
            Sub::PolyakovCheck => Command::PolyakovCheck,
            Sub::Schottky => Command::Schottky,
            Sub::Loewner => Command::Loewner,
            Sub::EpsteinExport => Command::EpsteinExport,
            Sub::Selftest => Command::Selftest,
        }
    }
}

/// Caps the global rayon pool at `EPSW_THREADS` when set.
fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("EPSW_THREADS") else { return Ok(()) };
    let n: usize = value.trim().parse().map_err(|_| format!("EPSW_THREADS must be a positive integer, got `{value}`"))?;
    if n == 0 {
        return Err("EPSW_THREADS must be a positive integer, got `0`".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn write_text(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = Command::from(cli.command);
    let fail = |status: i32, message: String| {
        eprintln!("epsw {}: {message}", command.name());
        ExitCode::from(status as u8)
    };
    if let Err(e) = configure_threads() {
        return fail(exit::VALIDATION, e);
    }
    if cli.obj.is_some() && !matches!(command, Command::Schottky | Command::EpsteinExport) {
        return fail(exit::VALIDATION, "--obj is only used by `schottky` and `epstein-export`".into());
    }
    if command == Command::EpsteinExport && cli.obj.is_none() {
        return fail(exit::VALIDATION, "`epstein-export` needs --obj PATH".into());
    }
    let raw = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => RunConfig::parse(&text),
            Err(e) => return fail(exit::IO, format!("cannot read {}: {e}", path.display())),
        },
        None => Ok(RunConfig::default()),
    };
    let resolved = raw.and_then(|c| c.resolve(command, cli.resolution, cli.seed));
    let (config, outcome) = match resolved {
        Ok(config) => {
            let outcome = commands::run(command, &config);
            (Some(config), outcome)
        }
        Err(e) => (None, Err(e)),
    };
    let (body, status, mesh) = match outcome {
        Ok(run) => (json!({ "status": run.status, "report": run.report }), run.status, run.mesh),
        Err(e) => {
            let status = error_status(command, &e);
            eprintln!("epsw {}: {e}", command.name());
            if let Some(g) = guidance(command, &e) {
                eprintln!("hint: {g}");
            }
            let error = json!({ "kind": error_kind(&e), "message": e.to_string(), "guidance": guidance(command, &e) });
            (json!({ "status": status, "error": error }), status, None)
        }
    };
    let mut report = json!({ "version": epsw::VERSION, "command": command.name(), "config": config });
    if let (Some(target), Some(extra)) = (report.as_object_mut(), body.as_object()) {
        target.extend(extra.clone());
    }
    let text = match serde_json::to_string_pretty(&report) {
        Ok(t) => t + "\n",
        Err(e) => return fail(exit::IO, format!("cannot serialize report: {e}")),
    };
    if let Err(e) = write_text(cli.out.as_deref(), &text) {
        return fail(exit::IO, format!("cannot write report: {e}"));
    }
    if let (Some(path), Some(mesh)) = (&cli.obj, mesh) {
        if let Err(e) = std::fs::write(path, mesh.to_obj()) {
            return fail(exit::IO, format!("cannot write {}: {e}", path.display()));
        }
    }
    ExitCode::from(status as u8)
}
