//! `prgraph`: explore product replacement graphs, compute their metrics, run
//! the structural checks and sample the product replacement walk.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod manifest;

use error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "prgraph", version, about = "Product replacement graph toolkit")]
struct Cli {
    /// Size of the worker pool; outputs do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Group, tuple length and starting tuple. Tuples are written with `;`
/// between entries and `,` inside lattice elements, e.g. `1,0;0,1`.
#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Group spec: Z, Z^k, Zmod:m, Zmod:m1x..xmk, Dinf, D:m, Sym:m, Q8.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Starting tuple; defaults to the standard generating tuple.
    #[arg(long)]
    pub root: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Explore a ball and write it as JSON, DOT and CSV.
    Explore(commands::explore::ExploreArgs),
    /// Cheeger constant, spectral gap and return probabilities.
    Metrics(commands::metrics::MetricsArgs),
    /// Run a named structural check; exit 3 when it fails.
    Verify(commands::verify::VerifyArgs),
    /// Sample the product replacement walk.
    Sample(commands::sample::SampleArgs),
    /// Convert an explored graph to one output format.
    Export(commands::export::ExportArgs),
}

pub enum Outcome {
    Done,
    Failed,
}

fn run(cli: Cli, argv: &[String]) -> CliResult<Outcome> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(error::CliError::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| error::CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Explore(a) => commands::explore::run(a, argv),
        Command::Metrics(a) => commands::metrics::run(a, argv),
        Command::Verify(a) => commands::verify::run(a, argv),
        Command::Sample(a) => commands::sample::run(a, argv),
        Command::Export(a) => commands::export::run(a, argv),
    }
}

/// 0 success or pass, 1 internal error, 2 user error, 3 failed verification.
fn exit_code(result: &CliResult<Outcome>) -> u8 {
    match result {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Failed) => 3,
        Err(e) => e.exit_code(),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(cli, &argv);
    if let Err(e) = &result {
        eprintln!("prgraph: {e}");
    }
    ExitCode::from(exit_code(&result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use error::CliError;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(Outcome::Done)), 0);
        assert_eq!(exit_code(&Ok(Outcome::Failed)), 3);
        assert_eq!(exit_code(&Err(CliError::Usage("x".into()))), 2);
        assert_eq!(exit_code(&Err(prgraph::Error::NotGenerating.into())), 2);
        assert_eq!(exit_code(&Err(prgraph::Error::CapExceeded { cap: 1 }.into())), 2);
        assert_eq!(exit_code(&Err(prgraph::Error::Overflow("mul").into())), 1);
    }

    #[test]
    fn argument_definitions_are_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
