//! Batch front end: every subcommand prints one JSON report envelope
//! `{"version", "command", "config", "verdict", "details"}` and exits with
//! 0 (PASS), 1 (FAIL) or 2 (ERROR, including bad arguments).

mod args;
mod commands;

use std::io::Write;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use args::{CharpCommand, Cli, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub verdict: Verdict,
    pub details: Value,
}

/// Parses `argv` (program name first), runs the subcommand and writes the
/// report to stdout or `--out`. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let mut rendered = e.render().to_string();
            if e.use_stderr() {
                if !rendered.contains("Usage:") {
                    let usage = <Cli as clap::CommandFactory>::command().render_usage();
                    rendered.push_str(&format!("\n{usage}\n"));
                }
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let envelope = execute(&cli);
    let mut text = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    if envelope.verdict == Verdict::Error {
        if let Some(msg) = envelope.details.get("error").and_then(Value::as_str) {
            let _ = writeln!(err, "error: {msg}");
        }
    }
    envelope.verdict.exit_code()
}

/// Runs a parsed command and wraps the outcome in an envelope.
pub fn execute(cli: &Cli) -> ReportEnvelope {
    let config = serde_json::to_value(&cli.command).expect("arguments serialize");
    let (verdict, details) = match commands::dispatch(&cli.command) {
        Ok((ok, details)) => (Verdict::from_bool(ok), details),
        Err(e) => (Verdict::Error, serde_json::json!({ "error": e.to_string() })),
    };
    ReportEnvelope {
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        config,
        verdict,
        details,
    }
}
