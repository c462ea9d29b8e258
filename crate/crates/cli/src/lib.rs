//! The `liegrowth` command line, callable in-process through [`run`].
//!
//! Exit status 0 is success, 2 a usage error (bad flags, inconsistent
//! options), 1 a failure while computing (unreadable files, parse errors in
//! expressions, degree caps, unsupported engine choices).

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use report::{emit, format_real, Cell, Format, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

/// Everything a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    match try_run(argv) {
        Ok(out) => out,
        Err(Failure::Usage(m)) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Compute(m)) => Outcome {
            status: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn try_run(argv: Vec<OsString>) -> Result<Outcome, Failure> {
    let argv = args::expand_config(argv)?;
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Ok(Outcome {
                        status: 0,
                        stdout: text,
                        stderr: String::new(),
                    })
                }
                _ => {
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    Err(Failure::Usage(first.trim_start_matches("error: ").to_string()))
                }
            };
        }
    };
    let done = commands::execute(cli.command)?;
    let mut stderr = String::new();
    for w in done.warnings {
        stderr.push_str(&w);
        stderr.push('\n');
    }
    Ok(Outcome {
        status: 0,
        stdout: emit(&done.report, done.format),
        stderr,
    })
}
