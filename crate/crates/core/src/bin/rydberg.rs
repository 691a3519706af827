//! Scenario-driven front end: `rydberg <scales|schedule|autocorr|packet|verify> --scenario FILE`.
//!
//! Exit status: 0 on success, 1 when `verify` misses an expected verdict,
//! 2 when the scenario is invalid or outputs cannot be written.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rydberg_revivals::scenario::{
    cmd_autocorr, cmd_packet, cmd_scales, cmd_schedule, cmd_verify, CommandOutcome, Format,
    OutputOptions, Scenario, ScenarioError,
};

type Runner = fn(&Scenario, &OutputOptions) -> Result<CommandOutcome, ScenarioError>;

#[derive(Parser)]
#[command(name = "rydberg", version, about = "Rydberg wave-packet revivals and superrevivals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the classical, revival and superrevival time scales.
    Scales(Args),
    /// Write the superrevival schedule for every q in the scenario.
    Schedule(Args),
    /// Write the autocorrelation trace |A(t)|^2.
    Autocorr(Args),
    /// Write packet density profiles at the scenario's snapshot times.
    Packet(Args),
    /// Compare the trace with the predicted schedule.
    Verify(Args),
}

#[derive(clap::Args)]
struct Args {
    /// Scenario file (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory.
    #[arg(long, env = "RYDBERG_OUT_DIR")]
    out: Option<PathBuf>,
    /// Output format for traces, profiles and scales.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Suppress progress output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, args): (Runner, Args) = match cli.command {
        Command::Scales(a) => (cmd_scales, a),
        Command::Schedule(a) => (cmd_schedule, a),
        Command::Autocorr(a) => (cmd_autocorr, a),
        Command::Packet(a) => (cmd_packet, a),
        Command::Verify(a) => (cmd_verify, a),
    };
    let opts = OutputOptions {
        dir: args.out,
        format: args.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }),
        quiet: args.quiet,
    };
    let result = Scenario::from_path(&args.scenario).and_then(|s| run(&s, &opts));
    match result {
        Ok(outcome) if outcome.success => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
