use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use contact_pairs_cli::{fixture_document, run_fixtures, run_text, CliError, Report, TaskSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Classify and verify invariant contact pair structures.
///
/// Exit status: 0 when every verdict is as expected, 1 when a check
/// evaluated to false, 2 on any error.
#[derive(Debug, Parser)]
#[command(name = "cpair", version)]
struct Args {
    /// Input document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Task to run, overriding the document's own task.
    #[arg(long)]
    task: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Use a built-in fixture as the input document.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// Run the golden expectations of every fixture.
    #[arg(long, conflicts_with_all = ["input", "fixture"])]
    run_all: bool,
    /// Print the fixture as an input document instead of running it.
    #[arg(long, requires = "fixture")]
    export: bool,
}

fn execute(args: &Args) -> Result<Option<Report>, CliError> {
    if args.run_all {
        return run_fixtures(&TaskSpec::new("fixtures")).map(Some);
    }
    if let Some(name) = &args.fixture {
        let doc = fixture_document(name)?;
        if args.export {
            print!("{}", doc.to_json());
            return Ok(None);
        }
        return run_text(&doc.to_json(), args.task.as_deref(), Path::new(".")).map(Some);
    }
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("one of --input, --fixture or --run-all is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let base = path.parent().unwrap_or(Path::new("."));
    run_text(&text, args.task.as_deref(), base).map(Some)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    match execute(&args) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match args.format {
                Format::Machine => print!("{}", report.to_machine()),
                Format::Text => {
                    print!("{}", report.to_text());
                    println!("elapsed: {:.1?}", start.elapsed());
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
