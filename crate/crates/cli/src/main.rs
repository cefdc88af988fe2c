use std::io::Write;
use std::process::ExitCode;

use aesthetic_curves_cli::{run_job, Cli, JobConfig};
use clap::Parser;

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let cfg = JobConfig::from_cli(cli.command, &cli.args)?;
    let outcome = run_job(&cfg)?;
    // A closed stdout (e.g. piped into `head`) is not an error.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}: {}", cfg.command.name(), outcome.summary);
    for p in &outcome.artifacts {
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(outcome.exit_code(cfg.strict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
