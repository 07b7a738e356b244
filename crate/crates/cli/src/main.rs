use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use igsic::Signaling;
use igsic_cli::config::Format;
use igsic_cli::format::{fmt_g9, write_csv, write_json};
use igsic_cli::{
    cmd_compare, cmd_rate, cmd_region, parse_complex, parse_config, CliError, Experiment, Outcome,
};

#[derive(Parser)]
#[command(
    name = "igsic",
    version,
    about = "Rate regions of the two-user interference channel with improper Gaussian inputs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Proper-optimal and improper boundary points for every profile.
    Region(RunArgs),
    /// Region points plus the exhaustive-search oracle and a summary.
    Compare(RunArgs),
    /// Evaluate the two rates of one signaling.
    Rate(RateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (TOML).
    config: PathBuf,
    /// Overrides `output.path`; `-` writes to standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RateArgs {
    config: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, allow_negative_numbers = true)]
    c2: f64,
    /// Pseudo-covariance of user 1 as `re,im`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    ct1: String,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    ct2: String,
}

fn load(path: &PathBuf) -> Result<Experiment, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

fn emit(
    exp: &Experiment,
    override_path: Option<PathBuf>,
    outcome: &Outcome,
) -> Result<(), CliError> {
    let path = override_path
        .or_else(|| exp.output.path.clone())
        .filter(|p| p.as_os_str() != "-");
    let mut buf = Vec::new();
    match exp.output.format {
        Format::Csv => write_csv(&outcome.report, &mut buf)?,
        Format::Json => write_json(&outcome.report, &mut buf)?,
    }
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(&p)?);
            w.write_all(&buf)?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(&buf)?,
    }
    if outcome.non_convergence {
        return Err(CliError::NonConvergence);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Region(args) => {
            let exp = load(&args.config)?;
            emit(&exp, args.output, &cmd_region(&exp))
        }
        Command::Compare(args) => {
            let exp = load(&args.config)?;
            let outcome = cmd_compare(&exp)?;
            emit(&exp, args.output, &outcome)
        }
        Command::Rate(args) => {
            let exp = load(&args.config)?;
            let sig = Signaling::new(
                args.c1,
                args.c2,
                parse_complex(&args.ct1)?,
                parse_complex(&args.ct2)?,
            );
            let r = cmd_rate(&exp, &sig)?;
            println!("R1,R2");
            println!("{},{}", fmt_g9(r.r1), fmt_g9(r.r2));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("igsic: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
