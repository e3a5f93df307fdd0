use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gysin_cli::document::PivotName;
use gysin_cli::report::Report;
use gysin_cli::run::RunOptions;

#[derive(Parser, Debug)]
#[command(name = "gysin", version, about = "Verify cochain-level exactness claims from diagram files")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Include per-check wall-clock time in the report.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PivotArg {
    #[value(name = "E")]
    E,
    #[value(name = "F")]
    F,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checks declared in a diagram file (`-` or no path reads standard input).
    Check { file: Option<PathBuf> },
    /// Verify every shipped instance on all its supported sequence kinds.
    Catalog,
    /// Verify one shipped instance.
    Verify {
        instance: String,
        /// Restrict to these sequence kinds, e.g. S3_SMITH_GYSIN.
        #[arg(long = "kind")]
        kinds: Vec<String>,
    },
    /// Splice the fifth sequence out of a braid.
    Splice {
        /// A braid declared in --file, or an explicit shipped instance.
        braid: String,
        #[arg(long, value_enum)]
        pivot: PivotArg,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions { timings: cli.timings };
    let report: Report = match &cli.command {
        Command::Check { file } => {
            let path = file.clone().unwrap_or_else(|| PathBuf::from("-"));
            gysin_cli::check_path(&path, opts)
        }
        Command::Catalog => gysin_cli::catalog_report(opts),
        Command::Verify { instance, kinds } => gysin_cli::verify_report(instance, kinds, opts),
        Command::Splice { braid, pivot, file } => {
            let pivot = match pivot {
                PivotArg::E => PivotName::E,
                PivotArg::F => PivotName::F,
            };
            gysin_cli::splice_report(braid, pivot, file.as_deref(), opts)
        }
    };
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json() + "\n",
    };
    // A closed pipe downstream is not an error of ours.
    let _ = std::io::stdout().write_all(rendered.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
