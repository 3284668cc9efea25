mod error;
mod report;
mod run;
mod spec;
mod svg;
mod theorems;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::report::{build_report, EXAMPLES};
use crate::run::{check_suite, run, Flags, Outcome, OwnedFigure, DEFAULT_SEED};
use crate::svg::{emit_svg, Figure};

#[derive(Parser)]
#[command(
    name = "okounkov",
    version,
    about = "Exact Newton-Okounkov bodies, filtrations and toric Seshadri constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Debug, Default)]
struct Common {
    /// Degree bound for enumerations and verification windows.
    #[arg(long)]
    max_degree: Option<u64>,
    /// Number of steps of the level grid.
    #[arg(long)]
    grid: Option<u64>,
    /// Directory for SVG figures.
    #[arg(long, value_name = "DIR")]
    svg: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Seed of the randomized property suites.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a problem spec (a path, or the name of a shipped example).
    Run {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in theorem and property suites.
    Check {
        /// Skip the theorem checks and run only the property suites.
        #[arg(long)]
        properties_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List the shipped example specs.
    ListExamples,
}

fn read_spec(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(std::fs::read_to_string(path)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    EXAMPLES
        .iter()
        .find(|(name, _)| *name == stem)
        .map(|(_, text)| (*text).to_string())
        .ok_or_else(|| CliError::Input(format!("no such spec file or example: {arg}")))
}

fn write_figures(outcome: &Outcome, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, fig) in &outcome.figures {
        let fig = match fig {
            OwnedFigure::Body(p) => Figure::Body(p),
            OwnedFigure::Function(f) => Figure::Function(f),
        };
        let path = dir.join(format!("{name}.svg"));
        emit_svg(&fig, &path)?;
        written.push(path);
    }
    Ok(written)
}

fn execute(command: Command) -> Result<bool, CliError> {
    let start = Instant::now();
    let (kind, input, outcome, common) = match command {
        Command::ListExamples => {
            for (name, text) in EXAMPLES {
                let kind = serde_json::from_str::<serde_json::Value>(text)
                    .ok()
                    .and_then(|v| v["kind"].as_str().map(str::to_string))
                    .unwrap_or_default();
                println!("{name}\t{kind}");
            }
            return Ok(true);
        }
        Command::Run { spec, common } => {
            let parsed = spec::parse(&read_spec(&spec)?)?;
            let flags = Flags {
                max_degree: common.max_degree,
                grid: common.grid,
                seed: common.seed,
            };
            let outcome = run(&parsed, &flags)?;
            (parsed.kind, parsed.raw, outcome, common)
        }
        Command::Check {
            properties_only,
            common,
        } => {
            let seed = common.seed.unwrap_or(DEFAULT_SEED);
            let input = serde_json::json!({"kind": "check-suite", "theorems": !properties_only, "options": {"seed": seed}});
            (
                "check-suite",
                input,
                check_suite(!properties_only, true, seed),
                common,
            )
        }
    };
    let figures = match &common.svg {
        Some(dir) => write_figures(&outcome, dir)?,
        None => Vec::new(),
    };
    let report = build_report(kind, input, &outcome, &figures, start.elapsed());
    let text = serde_json::to_string_pretty(&report.value).expect("report serializes") + "\n";
    match &common.json {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    for (name, ok) in &outcome.checks {
        if !ok {
            eprintln!("FAIL {name}");
        }
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
