//! Command-line front end: file formats, JSON reports and the
//! `bound`, `certify1d`, `certify` and `compare` commands.

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub mod commands;
pub mod formats;
pub mod report;

pub use commands::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NONPOSITIVE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INCOMPLETE: i32 = 4;

/// Overrides the numeric-oracle seed.
pub const SEED_VAR: &str = "SIMPLEXBOUND_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Core(#[from] simplexbound::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use simplexbound::Error as E;
        match self {
            CliError::Invalid(_) | CliError::Io(..) => EXIT_INVALID,
            CliError::Core(e) => match e {
                E::ZeroPolynomial
                | E::VariableCount { .. }
                | E::InvalidArgument(_)
                | E::WholeFaceCritical(_)
                | E::DegenerateResultant
                | E::RurDimension { .. }
                | E::InvalidRur(_)
                | E::NotARoot => EXIT_INVALID,
                _ => EXIT_INTERNAL,
            },
        }
    }
}

/// Everything a process invocation would produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command. The seed comes
/// from [`SEED_VAR`] when set.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Output { code: EXIT_INVALID, stdout: String::new(), stderr: text },
            };
        }
    };
    let seed = match seed_from_env() {
        Ok(s) => s,
        Err(e) => return failure(&e),
    };
    match commands::execute(&cli, &echo, seed) {
        Ok((code, stdout)) => Output { code, stdout, stderr: String::new() },
        Err(e) => failure(&e),
    }
}

fn failure(e: &CliError) -> Output {
    Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}

pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Invalid(format!("{SEED_VAR}={v} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(simplexbound::numeric::DEFAULT_SEED),
        Err(e) => Err(CliError::Invalid(format!("{SEED_VAR}: {e}"))),
    }
}
