//! Command-line front end: problem files in, deterministic reports out.

pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use sha2::{Digest, Sha256};

use crate::commands::{Command, Settings};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "dgres", version, about = "Bar and semifree resolutions of DG algebras, verified exactly")]
pub struct Cli {
    pub command: Command,
    pub file: PathBuf,
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub reduced: bool,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub const DEFAULT_MAX_DEGREE: u32 = 8;
pub const DEFAULT_SAMPLES: usize = 50;
pub const DEFAULT_SEED: u64 = 7;

/// What the process should print and return.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage_failure(msg: String) -> Outcome {
    Outcome { stdout: String::new(), stderr: msg, code: 2 }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                usage_failure(text)
            };
        }
    };
    let bytes = match std::fs::read(&cli.file) {
        Ok(b) => b,
        Err(e) => return usage_failure(format!("error: cannot read {}: {e}\n", cli.file.display())),
    };
    let file_name = cli.file.file_name().map_or_else(|| cli.file.display().to_string(), |f| f.to_string_lossy().into());
    let Ok(src) = std::str::from_utf8(&bytes) else {
        return usage_failure(format!("error: {file_name} is not valid UTF-8\n"));
    };
    let problem = match input::parse_problem(src) {
        Ok(p) => p,
        Err(e) => return usage_failure(format!("error: {file_name}: {e}\n")),
    };
    let o = &problem.options;
    let settings = Settings {
        command: cli.command,
        file_name,
        max_degree: cli.max_degree.or(o.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        max_n: cli.max_n.or(o.max_n),
        reduced: cli.reduced,
        module: cli.module.clone(),
        samples: cli.samples.or(o.samples).unwrap_or(DEFAULT_SAMPLES),
        seed: cli.seed.or(o.seed).unwrap_or(DEFAULT_SEED),
    };
    let mut report = Report::new(settings.echo(), hex::encode(Sha256::digest(&bytes)), settings.seed);
    if let Err(e) = commands::run(&problem, &settings, &mut report) {
        return usage_failure(format!("error: {e}\n"));
    }
    report.finish();
    let stdout = match cli.format {
        Format::Text => report.render_text(),
        Format::Machine => report.render_machine(),
    };
    Outcome { stdout, stderr: String::new(), code: if report.passed() { 0 } else { 1 } }
}

/// Applies `DGRES_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("DGRES_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("DGRES_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("DGRES_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
