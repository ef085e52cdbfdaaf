//! File-driven front end for the `contact-pairs` engine.

pub mod document;
pub mod report;
pub mod tasks;

use std::path::Path;

use thiserror::Error;

pub use document::{parse, InputDocument, Parsed, TaskSpec};
pub use report::Report;
pub use tasks::{fixture_document, run, run_fixtures};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Semantic(String),
    #[error(transparent)]
    Core(#[from] contact_pairs::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

/// Parses, validates and runs a document. `task_override` replaces the
/// document's task operation (keeping its arguments and expectations).
pub fn run_text(text: &str, task_override: Option<&str>, base: &Path) -> Result<Report, CliError> {
    let doc = parse(text)?;
    let mut task = doc.task.clone();
    if let Some(op) = task_override {
        task = Some(match task {
            Some(t) if t.op == op => t,
            _ => TaskSpec::new(op),
        });
    }
    let task = task.ok_or_else(|| CliError::Usage("the document has no task; pass --task".into()))?;
    if task.op == "fixtures" {
        return run_fixtures(&task);
    }
    let parsed = doc.validate()?;
    run(&parsed, &task, base)
}
