use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kleppner_cli::catalog::SCENARIOS;
use kleppner_cli::run::{analyze_batch, analyze_source, validate_source, Outcome, Overrides, EXIT_PARSE};
use kleppner_cli::spec::ReportFormat;

#[derive(Parser)]
#[command(name = "kleppner", version, about = "Decide Kleppner's condition and classify twisted group C*-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a spec file, or every spec in a directory with --batch
    Analyze {
        /// Spec file (TOML or JSON)
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        report: Option<Format>,
        /// Cross-check finite groups against the matrix oracle
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        effort: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Numeric value substituted for theta in oracle runs
        #[arg(long)]
        theta_numeric: Option<f64>,
        /// Directory of spec files analyzed in parallel
        #[arg(long, conflicts_with = "spec")]
        batch: Option<PathBuf>,
        /// Where batch reports are written (defaults to the batch directory)
        #[arg(long, requires = "batch")]
        out: Option<PathBuf>,
    },
    /// List the built-in scenarios, or print one as a spec document
    Catalog { name: Option<String> },
    /// Parse a spec and validate its cocycle
    Validate { spec: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        code: EXIT_PARSE,
        output: format!("error (io): {}: {e}\n", path.display()),
    })
}

fn finish(outcome: Outcome) -> ExitCode {
    if outcome.code == 0 {
        print!("{}", outcome.output);
    } else if outcome.output.starts_with("error") {
        eprint!("{}", outcome.output);
    } else {
        print!("{}", outcome.output);
    }
    ExitCode::from(outcome.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            spec,
            report,
            oracle,
            effort,
            seed,
            theta_numeric,
            batch,
            out,
        } => {
            let overrides = Overrides {
                report: report.map(|f| match f {
                    Format::Text => ReportFormat::Text,
                    Format::Json => ReportFormat::Json,
                }),
                oracle,
                effort,
                seed,
                theta_numeric,
            };
            if let Some(dir) = batch {
                let out = out.unwrap_or_else(|| dir.clone());
                let results = match analyze_batch(&dir, &overrides) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error (io): {}: {e}", dir.display());
                        return ExitCode::from(EXIT_PARSE as u8);
                    }
                };
                let ext = if matches!(overrides.report, Some(ReportFormat::Json)) { "json" } else { "txt" };
                let mut worst = 0;
                for (path, outcome) in results {
                    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("spec");
                    let target = out.join(format!("{stem}.report.{ext}"));
                    if let Err(e) = std::fs::write(&target, &outcome.output) {
                        eprintln!("error (io): {}: {e}", target.display());
                        return ExitCode::from(EXIT_PARSE as u8);
                    }
                    println!("{}: exit {}", path.display(), outcome.code);
                    worst = worst.max(outcome.code);
                }
                return ExitCode::from(worst as u8);
            }
            let Some(path) = spec else {
                eprintln!("error: a spec file or --batch DIR is required");
                return ExitCode::from(EXIT_PARSE as u8);
            };
            match read(&path) {
                Ok(src) => finish(analyze_source(&src, &overrides)),
                Err(o) => finish(o),
            }
        }
        Command::Catalog { name: None } => {
            for s in SCENARIOS {
                println!("{:<22} {}", s.name, s.description);
            }
            ExitCode::SUCCESS
        }
        Command::Catalog { name: Some(name) } => match kleppner_cli::catalog::find(&name) {
            Some(s) => {
                print!("{}", s.spec);
                ExitCode::SUCCESS
            }
            None => {
                let names: Vec<&str> = SCENARIOS.iter().map(|s| s.name).collect();
                let hint = kleppner_cli::spec::suggest(&name, &names)
                    .map(|s| format!("; did you mean `{s}`?"))
                    .unwrap_or_default();
                eprintln!("error: no scenario named `{name}`{hint}");
                ExitCode::from(EXIT_PARSE as u8)
            }
        },
        Command::Validate { spec } => match read(&spec) {
            Ok(src) => finish(validate_source(&src, &Overrides::default())),
            Err(o) => finish(o),
        },
    }
}
