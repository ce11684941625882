mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Coefficients, Report};
use input::{load_complex, load_template, CliError};

#[derive(Parser, Debug)]
#[command(name = "macloops", version, about = "Homology, cohomology rings and loop homology of moment-angle complexes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Coefficients::Integer, global = true)]
    coefficients: Coefficients,
    /// Only report these degrees (repeatable).
    #[arg(long = "degree", global = true)]
    degrees: Vec<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of Z_K by Hochster's formula and by cellular homology.
    Betti { complex: String },
    /// Pairing of H^p and H^q against the top class.
    CohomologyRing { complex: String, p: usize, q: usize },
    /// Loop homology generators with their Hurewicz cycles.
    Generators { complex: String },
    /// Check that a relation expands to zero in the loop algebra.
    VerifyRelation { complex: String, relation: String },
    /// Solve for the unknown coefficients of a relation template.
    SolveCoefficients { complex: String, template: String },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Betti { complex } => commands::betti(&load_complex(complex)?, &cli.degrees),
        Command::CohomologyRing { complex, p, q } => {
            commands::cohomology_ring(&load_complex(complex)?, *p, *q, cli.coefficients)
        }
        Command::Generators { complex } => commands::generators(&load_complex(complex)?, &cli.degrees, cli.coefficients),
        Command::VerifyRelation { complex, relation } => {
            let k = load_complex(complex)?;
            commands::verify_relation(&k, &load_template(relation, &k)?)
        }
        Command::SolveCoefficients { complex, template } => {
            let k = load_complex(complex)?;
            commands::solve(&k, &load_template(template, &k)?, cli.coefficients)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("report serializes")),
                Format::Text => print!("{}", report.text),
            }
            match report.violation {
                Some(v) => {
                    eprintln!("error: {}", CliError::Invariant(v));
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
