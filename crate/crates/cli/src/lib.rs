//! Front end for `gfweight`: turns command-line options into calls on
//! `gfweight_core` and renders deterministic reports.

pub mod args;
mod cache;
mod commands;
mod inputs;
mod output;

use std::io::Write;
use std::time::Instant;

use serde_json::{json, Value};

pub use args::{Cli, Command, Format, Mode, Options};
pub use cache::Cache;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A failed run, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, a field that is too small, IO trouble: exit code 2.
    Domain(anyhow::Error),
    /// A violated invariant in the core: exit code 3.
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Domain(e) | Failure::Internal(e) => format!("{e:#}"),
        }
    }
}

impl From<gfweight_core::Error> for Failure {
    fn from(e: gfweight_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.into())
        } else {
            Failure::Domain(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<gfweight_core::Error>() {
            Some(core) if core.is_internal() => Failure::Internal(e),
            _ => Failure::Domain(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// The full report for one invocation.
pub fn record(cli: &Cli) -> Outcome<Value> {
    let opts = &cli.opts;
    let cache = Cache::from_options(opts);
    let job = commands::prepare(cli.command, opts)?;
    let key_input = json!({
        "command": cli.command.name(),
        "input": job.input,
        "version": VERSION,
    });
    if cli.command != Command::Sweep {
        if let Some(hit) = cache.as_ref().and_then(|c| c.load(&key_input)) {
            return Ok(hit);
        }
    }
    let output = commands::execute(cli.command, &job, opts, cache.as_ref())?;
    let rec = json!({
        "version": VERSION,
        "command": cli.command.name(),
        "input": job.input,
        "output": output,
    });
    if cli.command != Command::Sweep {
        if let Some(c) = &cache {
            c.store(&key_input, &rec)?;
        }
    }
    Ok(rec)
}

pub fn render(cli: &Cli, rec: &Value) -> Outcome<String> {
    output::render(cli.command, cli.opts.format, rec)
}

/// Runs the command and writes the report; returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let result = record(cli).and_then(|rec| render(cli, &rec)).and_then(|text| {
        match &cli.opts.out {
            Some(path) => std::fs::write(path, &text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
