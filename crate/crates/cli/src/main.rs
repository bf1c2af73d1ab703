use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gammacat_core::harness::{self, Format, SuiteConfig};
use gammacat_core::DEFAULT_BUDGET;

#[derive(Parser)]
#[command(name = "gammacat", version, about = "Bounded checks for Γ-categories, permutative categories and Segal nerves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a report.
    Verify {
        /// Comma-separated suite names, `suite/check` selectors, or `all`.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        len_max: usize,
        #[arg(long, default_value_t = 2)]
        entry_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict corpus-driven suites to one permutative corpus member.
        #[arg(long)]
        monoid: Option<String>,
        /// Record wall time per check (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize a corpus member, or list the corpus when no name is given.
    Describe {
        name: Option<String>,
        /// Print the canonical JSON serialization instead.
        #[arg(long)]
        json: bool,
    },
    /// Check that a serialized file validates and reserializes byte for byte.
    IoCheck { path: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> gammacat_core::Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, n_max, len_max, entry_max, budget, seed, monoid, timings, format, out } => {
            let format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Text => Format::Text,
            };
            let config = SuiteConfig { suites: suite, n_max, len_max, entry_max, budget, seed, monoid, timings, format, out };
            let report = harness::run_suite(&config)?;
            let text = report.render(config.format);
            match &config.out {
                Some(path) => std::fs::write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(if report.failed() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::Describe { name: None, .. } => {
            for name in harness::corpus_names() {
                println!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Describe { name: Some(name), json } => {
            if json {
                print!("{}", harness::corpus(&name)?.to_json());
            } else {
                print!("{}", harness::describe(&name)?.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::IoCheck { path } => {
            let report = harness::io_roundtrip(&path)?;
            print!("{}", harness::canonical(&report));
            Ok(if report.stable { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
