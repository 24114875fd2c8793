//! Command-line front end for `spectral-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod files;
pub mod fixtures;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::{Cli, Command};
use crate::commands::{Outcome, Settings};
use crate::error::{exit, CliError};

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::INPUT,
            };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let settings = Settings::new(cli.tol)?;
    let started = Instant::now();
    if cli.emit.is_some() && cli.command.is_some() {
        return Err(CliError::Input(
            "--emit cannot be combined with a subcommand".into(),
        ));
    }
    let outcome = if let Some(fixture) = cli.emit {
        let value = fixtures::emit(fixture)?;
        let mut text =
            serde_json::to_string_pretty(&value).map_err(|e| CliError::Invariant(e.to_string()))?;
        text.push('\n');
        write_out(cli, &text)?;
        return Ok(exit::OK);
    } else {
        let Some(command) = &cli.command else {
            return Err(CliError::Input(
                "a subcommand or --emit is required (see --help)".into(),
            ));
        };
        dispatch(command, &settings)?
    };
    if cli.verbose > 0 {
        eprintln!("done in {:.3}s", started.elapsed().as_secs_f64());
    }
    let text = outcome.report.render(cli.format(outcome.default_format))?;
    write_out(cli, &text)?;
    Ok(outcome.code)
}

fn dispatch(command: &Command, s: &Settings) -> Result<Outcome, CliError> {
    match command {
        Command::MilnorVerify { cutoff } => commands::milnor_verify(cutoff.as_deref()),
        Command::TorusSpectrum { lattice, cutoff } => commands::torus_spectrum_cmd(lattice, cutoff),
        Command::Isospec { a, b } => commands::isospec(a, b),
        Command::Weyl { sides, bc, lambda } => commands::weyl(sides, *bc, lambda),
        Command::Corner(args) => commands::corner(args, s),
        Command::HeatTrace(args) => commands::heat_trace(args, s),
        Command::Polygeom(args) => commands::polygeom(args),
    }
}

fn write_out(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
