use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use specseq::run::{run, Options};
use specseq_core::FieldSpec;

#[derive(Parser)]
#[command(name = "specseq", version, about = "Spectral sequences of filtered chain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled scenario by name.
    Run {
        scenario: String,
        /// Compute over this field instead of the declared one (QQ or ZZ/p).
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        /// Precompute page entries with this many threads.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Print pages as `r p q dim [deg:k ...]` lines.
        #[arg(long)]
        machine: bool,
        /// Verify the filtration, d∘d = 0, the page-to-page homology and the
        /// limit comparison before answering queries.
        #[arg(long)]
        check: bool,
    },
    /// List the bundled scenarios.
    List,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: specseq_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for (name, _) in specseq::BUNDLED {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, field, threads, machine, check } => {
            let text = if Path::new(&scenario).exists() {
                match std::fs::read_to_string(&scenario) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: cannot read {scenario}: {e}");
                        return ExitCode::from(2);
                    }
                }
            } else if let Some(t) = specseq::bundled(&scenario) {
                t.to_string()
            } else {
                eprintln!("error: no file or bundled scenario named `{scenario}` (see `specseq list`)");
                return ExitCode::from(2);
            };
            let outcome = run(&text, &Options { field, threads, machine, check });
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
            let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
    }
}
