//! `benford-walk <command> --scenario <path> --out <dir>`.

use std::path::PathBuf;
use std::process::ExitCode;

use benford_walk::scenario::{exit_code, parse_scenario, run, Command};
use benford_walk::{parallel, Error};
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Simulate,
    Fourier,
    Weyl,
    Check,
    Invariance,
    Bound,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Simulate => Command::Simulate,
            Cmd::Fourier => Command::Fourier,
            Cmd::Weyl => Command::Weyl,
            Cmd::Check => Command::Check,
            Cmd::Invariance => Command::Invariance,
            Cmd::Bound => Command::Bound,
        }
    }
}

/// Mantissa dynamics of random products.
#[derive(Debug, Parser)]
#[command(name = "benford-walk", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Also write trajectory.csv (simulate).
    #[arg(long)]
    dump: bool,
    /// Overrides `trajectories`.
    #[arg(long)]
    replicas: Option<usize>,
    /// Overrides `length`.
    #[arg(long)]
    length: Option<usize>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    parallel::init_from_env();

    let result = std::fs::read_to_string(&args.scenario)
        .map_err(Error::from)
        .and_then(|text| parse_scenario(&text))
        .and_then(|s| s.with_overrides(args.replicas, args.length))
        .and_then(|s| run(args.command.into(), &s, &args.out, args.dump));

    match &result {
        Ok(outcome) => {
            for v in &outcome.verdicts {
                println!("{:<28} {:?}", v.name, v.status);
            }
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
        }
        Err(e) => eprintln!("benford-walk: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}
