use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hyperend_cli::{execute, export, schema, Options, EXIT_VALIDATION};

/// Evaluates a JSON request document (schema v1) and prints the result
/// document. Exit status: 0 success, 2 invalid request, 3 numeric failure.
#[derive(Parser, Debug)]
#[command(name = "hyperend", version)]
struct Cli {
    /// Request file; reads standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Print the published request and result schemas and exit.
    #[arg(long)]
    schema: bool,
    /// Integration tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized steps.
    #[arg(long)]
    seed: Option<u64>,
    /// Sample count for grids, trajectories and direction rings.
    #[arg(long)]
    samples: Option<usize>,
    /// Write the grid or trajectory of the result as comma-separated values.
    #[arg(long)]
    export: Option<PathBuf>,
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.schema {
        println!(
            "{}",
            serde_json::to_string_pretty(&schema::published()).expect("schema serializes")
        );
        return ExitCode::SUCCESS;
    }
    let doc = match read_input(cli.input.as_ref()) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("hyperend: cannot read request: {e}");
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    let flags = Options {
        tol: cli.tol,
        seed: cli.seed,
        samples: cli.samples,
    };
    let mut outcome = execute(&doc, &flags);
    if let (Some(path), Ok(out)) = (&cli.export, &outcome.result) {
        if let Err(f) = export::write_csv(path, out) {
            outcome.result = Err(f);
        }
    }
    let _ = io::stdout().write_all(outcome.document().as_bytes());
    if let Err(f) = &outcome.result {
        eprintln!("hyperend: {}", f.message);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
