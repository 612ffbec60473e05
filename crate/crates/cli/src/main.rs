use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use curve_obstruct::pipeline::{batch, PipelineConfig};
use curve_obstruct::Verdict;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Run the obstruction pipeline on curve and line-arrangement documents.
#[derive(Parser, Debug)]
#[command(name = "curve-obstruct", version)]
struct Args {
    /// Input documents.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// Only run these checks.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,

    /// Primes for the finite-field search.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 5, 7, 11, 13])]
    primes: Vec<u32>,

    /// Largest branch subset tried by the double-cover check.
    #[arg(long, default_value_t = 8)]
    max_branch_subset: usize,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for batches.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = PipelineConfig {
        checks: args.checks,
        primes: args.primes,
        max_branch_subset: args.max_branch_subset,
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }

    let items = batch(&args.input, &config, args.jobs);
    let mut failed = false;
    let mut obstructed = false;
    for item in &items {
        match &item.result {
            Ok(r) => obstructed |= r.summary == Verdict::Obstructed,
            Err(e) => {
                failed = true;
                eprintln!("{}: {e}", item.path.display());
            }
        }
    }

    match args.format {
        Format::Structured => {
            let out: Vec<_> = items
                .iter()
                .map(|item| match &item.result {
                    Ok(r) => json!({"path": item.path.display().to_string(), "report": r}),
                    Err(e) => json!({"path": item.path.display().to_string(), "error": e.to_string()}),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).expect("reports serialize"));
        }
        Format::Text => {
            for item in &items {
                println!("== {}", item.path.display());
                match &item.result {
                    Ok(r) => print!("{}", r.to_text()),
                    Err(e) => println!("error: {e}"),
                }
            }
        }
    }

    if failed {
        ExitCode::from(2)
    } else if obstructed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
