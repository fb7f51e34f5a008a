//! Command-line front end. The binary only forwards to [`run`].

mod commands;
mod selftest;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::invariants::Limits;
use crate::nilalgebra::{parse_algebra, NilpotentAlgebra};
use crate::pcgroup::{builtin, parse_presentation, PcPresentation, BUILTIN_NAMES, DEFAULT_MAX_ORDER};
use crate::unitgroup::DEFAULT_MAX_GENS;

pub use selftest::{run_selftest, Check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "modunits", version, about = "Unit groups of modular group algebras and Bogomolov multipliers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// `builtin:<name>` or a presentation file.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Nilpotent algebra file.
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// Field size, a power of the group prime.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Extension degree for the inclusion `F_q -> F_(q^m)`.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub max_order: Option<u64>,
    #[arg(long, global = true)]
    pub max_gens: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Embed through the second root (debugging).
    #[arg(long, global = true)]
    pub alt_embedding: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Conjugacy classes, power map and heights.
    Classes,
    /// Abelianization of the normalized unit group.
    Units,
    /// The group `M_q`.
    Mq,
    /// Order, structure and exponent of `B_0`.
    Bogomolov,
    /// Coadjoint orbits against linear characters.
    Fakedegree,
    /// Property suites on the built-in groups.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classes => "classes",
            Command::Units => "units",
            Command::Mq => "mq",
            Command::Bogomolov => "bogomolov",
            Command::Fakedegree => "fakedegree",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn parse(s: &str) -> GroupSource {
        match s.strip_prefix("builtin:") {
            Some(name) => GroupSource::Builtin(name.to_string()),
            None if !std::path::Path::new(s).exists() && BUILTIN_NAMES.contains(&s) => {
                GroupSource::Builtin(s.to_string())
            }
            None => GroupSource::File(PathBuf::from(s)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GroupSource::Builtin(n) => format!("builtin:{n}"),
            GroupSource::File(p) => p.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<PcPresentation> {
        match self {
            GroupSource::Builtin(n) => builtin(n),
            GroupSource::File(p) => parse_presentation(&read(p)?),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSource::Builtin(n) => n.clone(),
            GroupSource::File(p) => p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        }
    }
}

fn read(p: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

pub fn load_algebra(p: &std::path::Path) -> Result<NilpotentAlgebra> {
    parse_algebra(&read(p)?)
}

/// Parsed command line.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub group: Option<GroupSource>,
    pub algebra: Option<PathBuf>,
    pub q: Option<u64>,
    pub m: Option<usize>,
    pub json: bool,
    pub limits: Limits,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> std::result::Result<RunConfig, String> {
        if cli.group.is_some() && cli.algebra.is_some() {
            return Err("--group and --algebra are mutually exclusive".into());
        }
        let needs_group = matches!(cli.command, Command::Classes | Command::Mq | Command::Bogomolov);
        if needs_group && cli.group.is_none() {
            return Err(format!("`{}` needs --group", cli.command.name()));
        }
        if matches!(cli.command, Command::Units | Command::Fakedegree) && cli.group.is_none() && cli.algebra.is_none() {
            return Err(format!("`{}` needs --group or --algebra", cli.command.name()));
        }
        if cli.m == Some(0) {
            return Err("--m must be at least 1".into());
        }
        Ok(RunConfig {
            command: cli.command,
            group: cli.group.as_deref().map(GroupSource::parse),
            algebra: cli.algebra,
            q: cli.q,
            m: cli.m,
            json: cli.json,
            limits: Limits {
                max_order: cli.max_order.unwrap_or(DEFAULT_MAX_ORDER),
                max_gens: cli.max_gens.unwrap_or(DEFAULT_MAX_GENS),
                alt_embedding: cli.alt_embedding,
            },
            seed: cli.seed,
        })
    }

    pub fn input(&self) -> Value {
        match (&self.group, &self.algebra) {
            (Some(g), _) => Value::String(g.describe()),
            (None, Some(a)) => Value::String(a.display().to_string()),
            _ => Value::Null,
        }
    }
}

/// Wall-clock phases reported under `timings_ms`.
#[derive(Default)]
pub struct Timings {
    phases: Vec<(String, f64)>,
}

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases.push((phase.to_string(), start.elapsed().as_secs_f64() * 1e3));
        out
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.phases {
            m.insert(k.clone(), json!((v * 1000.0).round() / 1000.0));
        }
        Value::Object(m)
    }
}

/// A finished command: JSON results plus the text rendering of the same
/// numbers.
pub struct Report {
    pub q: Option<u64>,
    pub results: Value,
    pub text: String,
    /// Nonzero when the command ran but a verification failed.
    pub failed: bool,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_invalid_input() {
        EXIT_INVALID
    } else if e.is_guard() {
        EXIT_GUARD
    } else {
        EXIT_INTERNAL
    }
}

pub fn execute(cfg: &RunConfig) -> Result<(Report, Timings)> {
    let mut timings = Timings::default();
    let report = match cfg.command {
        Command::Classes => commands::classes(cfg, &mut timings)?,
        Command::Units => commands::units(cfg, &mut timings)?,
        Command::Mq => commands::mq(cfg, &mut timings)?,
        Command::Bogomolov => commands::bogomolov(cfg, &mut timings)?,
        Command::Fakedegree => commands::fakedegree(cfg, &mut timings)?,
        Command::Selftest => commands::selftest(cfg, &mut timings)?,
    };
    Ok((report, timings))
}

pub fn render_json(cfg: &RunConfig, report: &Report, timings: &Timings) -> String {
    let doc = json!({
        "command": cfg.command.name(),
        "input": cfg.input(),
        "q": report.q,
        "results": report.results,
        "timings_ms": timings.to_json(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(msg) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    match execute(&cfg) {
        Ok((report, timings)) => {
            let stdout = if cfg.json {
                render_json(&cfg, &report, &timings)
            } else {
                let mut s = report.text.clone();
                if !timings.phases.is_empty() {
                    let total: f64 = timings.phases.iter().map(|p| p.1).sum();
                    let _ = writeln!(s, "time: {total:.1} ms");
                }
                s
            };
            Outcome {
                code: if report.failed { EXIT_INTERNAL } else { EXIT_OK },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
