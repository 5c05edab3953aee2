//! `algiso`: generate instances, run the provers, verify certificates and
//! write experiment reports.
//!
//! Exit codes: 0 not refuted (or Duplicator wins, or verification passed),
//! 10 refuted (or Spoiler wins), 1 verification failed, 2 error.

mod common;
mod decide;
mod generate;
mod report;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "algiso", version, about = "Algebraic proof systems on graph isomorphism equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph pair (and, for tseitin, the instance and its polynomials).
    Generate(generate::GenerateArgs),
    /// Run provers on a graph pair and store verdicts and certificates.
    Decide(decide::DecideArgs),
    /// Replay a certificate or solution against a system file.
    Verify(verify::VerifyArgs),
    /// Run the reference experiment grid.
    Report(report::ReportArgs),
}

const REFUTED: u8 = 10;
const FAILED: u8 = 1;
const ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate(a) => generate::run(a).map(|files| {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }),
        Command::Decide(a) => decide::run(a).map(|refuted| if refuted { ExitCode::from(REFUTED) } else { ExitCode::SUCCESS }),
        Command::Verify(a) => verify::run(a).map(|checked| match checked {
            Ok(msg) => {
                println!("pass: {msg}");
                ExitCode::SUCCESS
            }
            Err(msg) => {
                println!("fail: {msg}");
                ExitCode::from(FAILED)
            }
        }),
        Command::Report(a) => report::run(a).map(|results| {
            for r in &results {
                println!("{}", serde_json::to_string(&r.entry).unwrap_or_default());
            }
            ExitCode::SUCCESS
        }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(ERROR)
    })
}
