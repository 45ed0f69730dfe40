use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use twogroup_core::cohomology::{CohomologyOptions, DEFAULT_MAX_ROWS};

use twogroup_cli::commands::{self, Coefficients, FusionQuery, Settings};
use twogroup_cli::error::CliError;
use twogroup_cli::output::{digest, OutputDocument, Outcome, Status, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exact computations with finite skeletal 2-groups and their fusion categories.
#[derive(Parser, Debug)]
#[command(name = "twogroup", version)]
struct Cli {
    /// Output as a plain-text table or as a versioned JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest accepted order for the base group, the coefficient group and subgroup searches.
    #[arg(long, global = true, env = "TWOGROUP_MAX_SIZE", default_value_t = 32)]
    max_size: usize,
    /// Largest number of rows in a cohomology linear system.
    #[arg(long, global = true, env = "TWOGROUP_MAX_ROWS", default_value_t = DEFAULT_MAX_ROWS)]
    max_rows: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a specification file describes a valid 2-group.
    Validate { file: PathBuf },
    /// Fusion rules of Vect over the 2-group.
    Fusion {
        file: PathBuf,
        /// Print the full fusion table (the default).
        #[arg(long, conflicts_with = "simple")]
        table: bool,
        /// Fuse two simples such as "(1,χ[1])" or "(1,χ1)".
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        simple: Option<Vec<String>>,
    },
    /// Split Vect over the 2-group into blocks.
    Decompose { file: PathBuf },
    /// Group cohomology of the base group.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Coefficients::Module)]
        coefficients: Coefficients,
        /// Include representative cocycles for the generators.
        #[arg(long)]
        generators: bool,
    },
    /// Counts and descriptors for 2-representations.
    Tworep { file: PathBuf },
    /// Write a symmetric ℚ/ℤ-valued 2-cocycle on a finite abelian group as a coboundary.
    SplitSymmetric { file: PathBuf },
    /// Randomized property checks on seeded small 2-groups.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Fusion { .. } => "fusion",
            Command::Decompose { .. } => "decompose",
            Command::Cohomology { .. } => "cohomology",
            Command::Tworep { .. } => "tworep",
            Command::SplitSymmetric { .. } => "split-symmetric",
            Command::Check { .. } => "check",
        }
    }

    fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { file }
            | Command::Fusion { file, .. }
            | Command::Decompose { file }
            | Command::Cohomology { file, .. }
            | Command::Tworep { file }
            | Command::SplitSymmetric { file } => Some(file),
            Command::Check { .. } => None,
        }
    }
}

/// Reads the input file, with `-` meaning standard input.
fn read_input(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::io(&name, e))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| CliError::io(&name, e))
    }
}

fn run(cli: &Cli, bytes: &[u8]) -> Result<Outcome, CliError> {
    let settings = Settings { max_size: cli.max_size, opts: CohomologyOptions { max_rows: cli.max_rows, ..Default::default() } };
    let text = || std::str::from_utf8(bytes).map_err(|e| CliError::usage(format!("input is not UTF-8: {e}")));
    match &cli.command {
        Command::Validate { .. } => commands::validate(text()?, &settings),
        Command::Fusion { simple, .. } => {
            let query = match simple {
                Some(pair) => FusionQuery::Product(pair[0].clone(), pair[1].clone()),
                None => FusionQuery::Table,
            };
            commands::fusion(text()?, &settings, query)
        }
        Command::Decompose { .. } => commands::decompose(text()?, &settings),
        Command::Cohomology { degree, coefficients, generators, .. } => {
            commands::cohomology_cmd(text()?, &settings, *degree, *coefficients, *generators)
        }
        Command::Tworep { .. } => commands::tworep(text()?, &settings),
        Command::SplitSymmetric { .. } => commands::split_symmetric(text()?, &settings),
        Command::Check { seed, count } => commands::check(*seed, *count, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bytes = match cli.command.file() {
        Some(path) => read_input(path),
        None => match &cli.command {
            Command::Check { seed, count } => Ok(format!("check --seed {seed} --count {count}").into_bytes()),
            _ => unreachable!(),
        },
    };
    let input_digest = bytes.as_deref().map(digest).unwrap_or_default();
    let outcome = bytes.and_then(|b| run(&cli, &b));

    let base_metadata = [
        ("max_size".to_string(), json!(cli.max_size)),
        ("max_rows".to_string(), json!(cli.max_rows)),
    ];
    let (doc, text, code) = match outcome {
        Ok(o) => {
            let code = o.exit_code();
            let mut metadata = o.metadata;
            metadata.extend(base_metadata);
            let doc = OutputDocument {
                schema_version: SCHEMA_VERSION.into(),
                command: cli.command.name().into(),
                input_digest,
                status: o.status,
                results: o.results,
                metadata,
            };
            (doc, o.text, code)
        }
        Err(e) => {
            let doc = OutputDocument {
                schema_version: SCHEMA_VERSION.into(),
                command: cli.command.name().into(),
                input_digest,
                status: Status::Error,
                results: json!({ "error": e.to_json() }),
                metadata: base_metadata.into_iter().collect(),
            };
            let mut text = format!("error: {e}\n");
            if let CliError::Domain { witness: Some(w), .. } = &e {
                text += &format!("witness: {w}\n");
            }
            (doc, text, e.exit_code())
        }
    };

    let rendered = match cli.format {
        Format::Structured => doc.to_structured(),
        Format::Text => text,
    };
    let mut out: Box<dyn Write> =
        if doc.status == Status::Error && cli.format == Format::Text { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    let _ = out.write_all(rendered.as_bytes());
    ExitCode::from(code as u8)
}
