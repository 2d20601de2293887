//! `ciprng`: build iteration functions, analyse their mixing, generate
//! output and run the statistical battery. Every artifact-producing command
//! writes a manifest that `ciprng rerun` replays.

mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

/// Exit status for parameter contract violations, matching clap's usage
/// errors.
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.chain().any(|cause| {
                matches!(
                    cause.downcast_ref::<ciprng::Error>(),
                    Some(
                        ciprng::Error::Parameter(_)
                            | ciprng::Error::ComponentCount(_)
                            | ciprng::Error::ComponentIndex { .. }
                            | ciprng::Error::ConfigurationRange { .. }
                            | ciprng::Error::ZeroSeed
                            | ciprng::Error::NotStronglyConnected
                    )
                )
            });
            ExitCode::from(if usage { USAGE } else { 1 })
        }
    }
}
