use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use siam_dmft::cli::{parse_config_with, parse_override, run_subcommand, Subcommand};

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    Dmft,
    Sweep,
    Greens,
    Asp,
    Pps,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Dmft => Subcommand::Dmft,
            Command::Sweep => Subcommand::Sweep,
            Command::Greens => Subcommand::Greens,
            Command::Asp => Subcommand::Asp,
            Command::Pps => Subcommand::Pps,
        }
    }
}

/// Two-site impurity DMFT on a simulated spin processor.
#[derive(Parser)]
#[command(version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// `key = value` configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set U=2` (repeatable, applied after the file)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory (same as `--set out_dir=DIR`)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> siam_dmft::Result<()> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut overrides = args
        .overrides
        .iter()
        .map(|s| parse_override(s))
        .collect::<siam_dmft::Result<Vec<_>>>()?;
    if let Some(out) = &args.out {
        overrides.push(("out_dir".into(), out.display().to_string()));
    }
    let cfg = parse_config_with(&text, &overrides)?;
    let output = run_subcommand(args.command.into(), &cfg)?;
    for f in output.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
