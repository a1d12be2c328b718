mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are successes; everything else is usage
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gsteer: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use gsteer_core::Error;
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                Error::Config(_) | Error::InvalidDimension(_) | Error::ContractViolation(_) => 1,
                Error::Domain(_)
                | Error::Range(_)
                | Error::Singular { .. }
                | Error::AuditMismatch { .. } => 2,
                Error::Io(_) => 3,
            },
        }
    }
}
