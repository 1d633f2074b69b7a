mod args;
mod commands;
mod output;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] ellipsoid_lb::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let g = &cli.global;
    let start = Instant::now();
    let (table, failures) = match &cli.command {
        Command::Table1(a) => (commands::table1::run(g, a)?, None),
        Command::Table2(a) => (commands::table2::run(g, a)?, None),
        Command::SweepBiaxial(a) => (commands::sweep::run(g, a)?, None),
        Command::Nodal(a) => (commands::nodal::run(g, a)?, None),
        Command::Spectrum(a) => (commands::spectrum::run(g, a)?, None),
        Command::Verify(a) => {
            let (table, failed) = verify::run(g, a)?;
            let total = table.rows.len();
            (table, Some((failed, total)))
        }
    };
    output::emit(&table, g.format, g.out.as_deref(), start.elapsed())?;
    match failures {
        Some((failed, total)) if failed > 0 => Err(CliError::Verification { failed, total }),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
