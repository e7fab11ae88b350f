//! `drsa` — dominance-based rough set analysis from the command line.
//!
//! Subcommands mirror the analysis stages: `pipeline` builds the observation
//! table from snapshot files, `induce` extracts certain decision rules,
//! `classify` applies a rule file to observations, `compare` aligns rule
//! sets across segments, `eda` emits exploratory statistics, and `demo`
//! walks the built-in ten-observation example end to end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod emit;
mod load;

#[derive(Parser)]
#[command(
    name = "drsa",
    version,
    about = "Dominance-based rough set analysis: ordinal rule induction and segment comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in worked example and print cones, unions and rules.
    Demo,
    /// Build the observation table from a directory of snapshot CSVs.
    Pipeline {
        /// Directory holding cases.csv, positivity.csv, occupancy.csv,
        /// capacity.csv, mapping.csv, tiers.csv and regions.csv.
        #[arg(long = "in", value_name = "DIR")]
        input: PathBuf,
        /// Rolling-average window in days.
        #[arg(long, default_value_t = 7)]
        window: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Induce certain decision rules from an observation table.
    Induce {
        /// Input table (.isf or .csv).
        input: PathBuf,
        /// Keep only rules with at least this strength (percent).
        #[arg(long, default_value_t = 0.0, value_name = "PCT")]
        min_strength: f64,
        /// Maximum rule length (default: the criteria count).
        #[arg(long, value_name = "N")]
        max_length: Option<usize>,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify observations with a rule file, emitting class intervals.
    Classify {
        /// Rule file (.rls) produced by `induce` or `compare`.
        #[arg(long, value_name = "FILE")]
        rules: PathBuf,
        /// Observations to classify (.isf or .csv; the decision column is
        /// not required for CSV input).
        input: PathBuf,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Induce per-segment rules and compare them across segments.
    Compare {
        /// Segmented observation table (.isf or .csv).
        input: PathBuf,
        /// Keep only rules with at least this strength (percent).
        #[arg(long, default_value_t = 25.0, value_name = "PCT")]
        min_strength: f64,
        /// Maximum rule length (default: the criteria count).
        #[arg(long, value_name = "N")]
        max_length: Option<usize>,
        /// Trade-off thresholds, ascending.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,10,20,30,40,50,60,70,80,90,100"
        )]
        thresholds: Vec<f64>,
        /// Metric the trade-off filter applies.
        #[arg(long, value_enum, default_value_t = MetricArg::Strength)]
        metric: MetricArg,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exploratory statistics: correlations and tier distributions.
    Eda {
        /// Observation table (.isf or .csv).
        input: PathBuf,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Output directory.
    #[arg(long, env = "DRSA_OUT", default_value = ".", value_name = "DIR")]
    out: PathBuf,
    /// Output format for reports (rule files are always written as .rls).
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct TableArgs {
    /// Name of the decision column in CSV input.
    #[arg(long, default_value = "Tier", value_name = "COL")]
    decision_col: String,
    /// Name of the segment meta column in CSV input.
    #[arg(long, default_value = "segment", value_name = "COL")]
    segments: String,
    /// Declared class order, lowest first (default: inferred from the data,
    /// numeric-aware).
    #[arg(long, value_delimiter = ',', value_name = "LABELS")]
    classes: Option<Vec<String>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Strength,
    Confidence,
}

/// Errors carry the exit code: 1 for validation problems, 2 for I/O.
pub(crate) struct CliError {
    message: String,
    io: bool,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            io: false,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            io: true,
        }
    }
}

impl From<drsa_core::TableError> for CliError {
    fn from(e: drsa_core::TableError) -> Self {
        CliError {
            io: e.is_io(),
            message: e.to_string(),
        }
    }
}

impl From<drsa_core::DomlemError> for CliError {
    fn from(e: drsa_core::DomlemError) -> Self {
        CliError {
            io: e.is_io(),
            message: e.to_string(),
        }
    }
}

impl From<drsa_core::pipeline::PipelineError> for CliError {
    fn from(e: drsa_core::pipeline::PipelineError) -> Self {
        CliError {
            io: e.is_io(),
            message: e.to_string(),
        }
    }
}

impl From<drsa_core::compare::CompareError> for CliError {
    fn from(e: drsa_core::compare::CompareError) -> Self {
        use drsa_core::compare::CompareError;
        let io = match &e {
            CompareError::Induction(inner) => inner.is_io(),
            CompareError::Table(inner) => inner.is_io(),
            _ => false,
        };
        CliError {
            io,
            message: e.to_string(),
        }
    }
}

impl From<drsa_core::ClassifyError> for CliError {
    fn from(e: drsa_core::ClassifyError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(if e.io { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Demo => commands::demo(),
        Command::Pipeline {
            input,
            window,
            output,
        } => commands::pipeline(&input, window, &output),
        Command::Induce {
            input,
            min_strength,
            max_length,
            table,
            output,
        } => commands::induce(&input, min_strength, max_length, &table, &output),
        Command::Classify {
            rules,
            input,
            table,
            output,
        } => commands::classify(&rules, &input, &table, &output),
        Command::Compare {
            input,
            min_strength,
            max_length,
            thresholds,
            metric,
            table,
            output,
        } => commands::compare(
            &input,
            min_strength,
            max_length,
            &thresholds,
            metric,
            &table,
            &output,
        ),
        Command::Eda {
            input,
            table,
            output,
        } => commands::eda(&input, &table, &output),
    }
}
