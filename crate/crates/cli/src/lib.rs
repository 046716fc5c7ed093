//! Script-driven front end: parse a session script, run its command, emit
//! human-readable text and a versioned JSON trace document.

use std::time::Instant;

use blowup_core::field::{FieldSpec, PrimeField, Rationals};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub mod commands;
pub mod script;

pub use script::{parse_script, SessionScript};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Script { line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] blowup_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Script { .. } => "script",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.code(),
            CliError::Io(_) => "io",
        }
    }

    /// 3 for guards and step limits, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_limit() => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInfo {
    pub field: String,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub version: u32,
    pub ring: Option<RingInfo>,
    pub command: String,
    /// `ok`, `step-limit` or `error`.
    pub status: String,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// What a command produced before it is wrapped into a document.
pub struct CommandOutput {
    pub result: Value,
    pub text: Vec<String>,
    /// Trace status for resolution commands.
    pub limited: bool,
    pub failed: Option<ErrorInfo>,
}

pub struct Outcome {
    pub document: TraceDocument,
    pub text: String,
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timings: bool,
}

fn ring_info(script: &SessionScript) -> Option<RingInfo> {
    script.ring.as_ref().map(|r| RingInfo { field: r.field.to_string(), vars: r.vars.clone() })
}

fn error_outcome(command: String, ring: Option<RingInfo>, e: &CliError) -> Outcome {
    let info = ErrorInfo { code: e.code().to_string(), message: e.to_string() };
    Outcome {
        text: format!("error[{}]: {}\n", info.code, info.message),
        exit_code: e.exit_code(),
        document: TraceDocument {
            version: SCHEMA_VERSION,
            ring,
            command,
            status: "error".into(),
            result: Value::Null,
            error: Some(info),
            timings: None,
        },
    }
}

fn dispatch(script: &SessionScript) -> Result<CommandOutput, CliError> {
    match script.ring.as_ref().map(|r| r.field) {
        Some(FieldSpec::Rationals) => commands::run(script, Some(Rationals)),
        Some(FieldSpec::Prime { p }) => commands::run(script, Some(PrimeField::new(p)?)),
        None => commands::run::<Rationals>(script, None),
    }
}

/// Parses and runs a script. Never panics on user input; failures become
/// an error document with exit code 2 or 3.
pub fn run_script(text: &str, options: RunOptions) -> Outcome {
    let start = Instant::now();
    let script = match parse_script(text) {
        Ok(s) => s,
        Err(e) => return error_outcome(String::new(), None, &e),
    };
    let ring = ring_info(&script);
    let out = match dispatch(&script) {
        Ok(out) => out,
        Err(e) => return error_outcome(script.command.clone(), ring, &e),
    };
    let (status, exit_code) = match (&out.failed, out.limited) {
        (Some(_), _) => ("error", 2),
        (None, true) => ("step-limit", 3),
        (None, false) => ("ok", 0),
    };
    let mut text = out.text.join("\n");
    text.push('\n');
    Outcome {
        text,
        exit_code,
        document: TraceDocument {
            version: SCHEMA_VERSION,
            ring,
            command: script.command.clone(),
            status: status.into(),
            result: out.result,
            error: out.failed,
            timings: options.timings.then(|| Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 }),
        },
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &TraceDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
