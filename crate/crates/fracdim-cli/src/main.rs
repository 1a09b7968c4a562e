use anyhow::Context;
use clap::Parser;
use fracdim_cli::config::{ConfigError, SweepConfig};
use fracdim_cli::Cli;
use std::io::Write;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cfg = SweepConfig::resolve(cli.command.args().clone())?;
    let outcome = cli.command.run(&cfg)?;
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    match &cfg.out {
        Some(path) => {
            let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = std::io::BufWriter::new(file);
            outcome.table.write(&mut w, cfg.format, stamp)?;
            w.flush()?;
        }
        None => {
            let mut w = std::io::stdout().lock();
            outcome.table.write(&mut w, cfg.format, stamp)?;
            w.flush()?;
        }
    }
    for f in &outcome.failures {
        eprintln!("gate failure: {f}");
    }
    Ok(outcome.failures.is_empty())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            // configuration problems, and I/O failures that leave no usable output
            let kind = if e.downcast_ref::<ConfigError>().is_some() { "" } else { "runtime " };
            eprintln!("fracdim: {kind}{e:#}");
            ExitCode::from(2)
        }
    }
}
