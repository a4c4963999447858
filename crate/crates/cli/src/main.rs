use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tetra_cli::args::Cli;
use tetra_cli::config::RunConfig;
use tetra_cli::{run, CliError, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = RunConfig::from_cli(cli)?;
    if let Some(threads) = config.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    }
    let outcome = run(&config)?;
    if let Outcome::Certificate(c) = &outcome {
        for r in &c.results {
            eprintln!("{}", r.summary());
        }
        eprintln!(
            "{} in {:.2} s, hash {}",
            if c.pass { "all checks passed" } else { "verification FAILED" },
            c.timing.elapsed_seconds,
            c.content_hash
        );
    }
    let text = outcome.text();
    match &config.output {
        Some(path) => {
            std::fs::write(path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(outcome.exit_code())
}
