use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use tzrank_cli::args::Cli;
use tzrank_cli::record::write_csv;
use tzrank_cli::{run, violations, RunError};

fn thread_pool() -> Result<(), RunError> {
    let Ok(v) = std::env::var("TZ_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| RunError::Usage(format!("TZ_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| RunError::Usage(format!("thread pool: {e}")))
}

fn execute(cli: &Cli) -> Result<(), RunError> {
    thread_pool()?;
    let rows = run(cli)?;
    let out: Box<dyn Write> = match &cli.common.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| RunError::Usage(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_csv(&rows, out).map_err(|e| RunError::Numerical(format!("writing CSV: {e}")))?;
    let bad = violations(&rows);
    if !bad.is_empty() && !cli.common.no_assert {
        return Err(RunError::BoundViolation(bad));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tzrank: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
