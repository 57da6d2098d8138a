//! Argument handling and command dispatch.
//!
//! Exit codes: 0 success, 1 usage, configuration or I/O error, 2 a
//! verification or numeric-tolerance failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionk_core::FusionTable;

use crate::checks::{self, Check, Source, Status, Tolerances};
use crate::{export, json};

/// Largest `k` accepted without `--allow-large`, unless `FUSIONK_MAX_K` says otherwise.
pub const DEFAULT_MAX_K: usize = 25;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_FAILED: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "fusionk", version, about = "Build and verify the fusion rings attached to (Γ_k, Γ′_k)")]
#[command(after_help = "Environment:\n  FUSIONK_MAX_K  largest k accepted without --allow-large (default 25)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Build fusion tables from the matrix model and write them out.
    Build,
    /// Run the axiom and identity checks and print a pass/fail matrix.
    Verify,
    /// Compare model tables with the closed-form coefficients.
    Crosscheck,
    /// Print the graphs Γ_k and Γ′_k.
    Graph,
    /// Check the integer sequence and polynomial identities.
    Identities,
}

#[derive(Args, Debug, Default)]
pub struct Options {
    /// A single k or an inclusive range a..b.
    #[arg(long, global = true, value_name = "n|a..b", value_parser = parse_k_range, conflicts_with = "from")]
    pub k: Option<KRange>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file, or directory (one `fusion_k{k}.{ext}` per k) when several k are requested.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Comma-separated subset of checks for `verify`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "CHECK,...")]
    pub checks: Vec<String>,

    /// Override a tolerance, e.g. `rounding=1e-5`; repeatable.
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    pub tolerance: Vec<String>,

    /// Accept k above the configured maximum.
    #[arg(long, global = true)]
    pub allow_large: bool,

    /// With `graph`: emit the graphs in the given format.
    #[arg(long, global = true, value_enum, value_name = "FORMAT")]
    pub emit: Option<Emit>,

    /// Read a table from a JSON file instead of building it.
    #[arg(long, global = true, value_name = "FILE")]
    pub from: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
    Dot,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "txt",
            Format::Dot => "dot",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub start: usize,
    pub end: usize,
}

impl KRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn len(self) -> usize {
        self.end - self.start + 1
    }
}

pub fn parse_k_range(s: &str) -> Result<KRange, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a non-negative integer"));
    let (start, end) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if start > end {
        return Err(format!("empty range {start}..{end}"));
    }
    Ok(KRange { start, end })
}

/// A failure that maps to exit code 1.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl<E: std::fmt::Display> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

/// Settings resolved from arguments and environment.
pub struct RunConfig {
    pub command: Command,
    pub ks: Vec<usize>,
    pub table: Option<FusionTable>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub checks: Vec<Check>,
    pub tolerances: Tolerances,
    pub emit: Option<Emit>,
}

impl RunConfig {
    pub fn resolve(cli: Cli, max_k_env: Option<String>) -> Result<RunConfig, ConfigError> {
        let o = cli.opts;
        let max_k = match max_k_env {
            Some(v) => v.trim().parse::<usize>().map_err(|_| ConfigError(format!("FUSIONK_MAX_K={v:?} is not an integer")))?,
            None => DEFAULT_MAX_K,
        };
        let mut tolerances = Tolerances::default();
        for t in &o.tolerance {
            tolerances.set(t).map_err(ConfigError)?;
        }
        let checks: Vec<Check> = if o.checks.is_empty() {
            Check::ALL.to_vec()
        } else {
            o.checks.iter().map(|c| c.trim().parse()).collect::<Result<_, _>>().map_err(ConfigError)?
        };
        if !o.checks.is_empty() && cli.command != Command::Verify {
            return Err(ConfigError("--checks only applies to verify".into()));
        }
        if o.emit.is_some() && cli.command != Command::Graph {
            return Err(ConfigError("--emit only applies to graph".into()));
        }

        let (ks, table) = match (&o.from, o.k) {
            (Some(path), _) => {
                if matches!(cli.command, Command::Graph | Command::Identities) {
                    return Err(ConfigError(format!("--from does not apply to {}", command_name(cli.command))));
                }
                let text = fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
                let t = json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
                (vec![t.k()], Some(t))
            }
            (None, Some(r)) => (r.iter().collect(), None),
            (None, None) => return Err(ConfigError("one of --k or --from is required".into())),
        };
        if let Some(&big) = ks.iter().find(|&&k| k > max_k) {
            if !o.allow_large {
                return Err(ConfigError(format!("k = {big} exceeds the maximum {max_k}; pass --allow-large")));
            }
        }

        let format = match (cli.command, o.format) {
            (Command::Build, Some(Format::Dot)) => {
                return Err(ConfigError("build writes json, csv or pretty; use `graph --emit dot` for graphs".into()))
            }
            (Command::Build, f) => f.unwrap_or(Format::Json),
            (Command::Graph, Some(Format::Dot)) => Format::Dot,
            (Command::Graph, Some(Format::Pretty) | None) => Format::Pretty,
            (_, None) => Format::Pretty,
            (c, Some(Format::Pretty)) if c != Command::Graph => Format::Pretty,
            (c, Some(f)) => {
                return Err(ConfigError(format!("{} does not write {f:?} output", command_name(c))));
            }
        };
        let format = if o.emit == Some(Emit::Dot) { Format::Dot } else { format };

        Ok(RunConfig { command: cli.command, ks, table, format, out: o.out, checks, tolerances, emit: o.emit })
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Build => "build",
        Command::Verify => "verify",
        Command::Crosscheck => "crosscheck",
        Command::Graph => "graph",
        Command::Identities => "identities",
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_CONFIG
                }
            };
        }
    };
    let cfg = match RunConfig::resolve(cli, std::env::var("FUSIONK_MAX_K").ok()) {
        Ok(cfg) => cfg,
        Err(ConfigError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_CONFIG;
        }
    };
    match execute(cfg, stdout) {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_CONFIG
        }
    }
}

/// Runs `work` for every `k` on a small thread pool; results come back in input order.
pub fn per_k<T: Send>(ks: &[usize], work: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, NonZeroUsize::get).min(ks.len()).max(1);
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<T>>> = ks.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&k) = ks.get(i) else { break };
                let r = work(k);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every slot is filled")).collect()
}

fn execute(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    match cfg.command {
        Command::Build => cmd_build(cfg, stdout),
        Command::Verify => cmd_verify(cfg, stdout),
        Command::Crosscheck => cmd_crosscheck(cfg, stdout),
        Command::Graph => cmd_graph(cfg, stdout),
        Command::Identities => cmd_identities(cfg, stdout),
    }
}

/// Routes per-k documents to stdout, a file, or a directory.
fn write_outputs(cfg: &RunConfig, docs: &[(usize, String)], stdout: &mut dyn Write) -> Result<(), ConfigError> {
    let Some(out) = &cfg.out else {
        for (_, d) in docs {
            stdout.write_all(d.as_bytes())?;
        }
        return Ok(());
    };
    if docs.len() > 1 || out.is_dir() {
        fs::create_dir_all(out).map_err(|e| ConfigError(format!("{}: {e}", out.display())))?;
        for (k, d) in docs {
            let path = out.join(format!("fusion_k{k}.{}", cfg.format.extension()));
            write_file(&path, d)?;
        }
    } else {
        write_file(out, &docs[0].1)?;
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), ConfigError> {
    fs::write(path, text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
}

fn render(t: &FusionTable, format: Format) -> Result<String, ConfigError> {
    Ok(match format {
        Format::Json => json::to_string(t),
        Format::Csv => export::csv(t)?,
        Format::Pretty => export::pretty(t),
        Format::Dot => unreachable!("rejected during configuration"),
    })
}

fn cmd_build(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    let tables: Vec<Result<FusionTable, String>> = match &cfg.table {
        Some(t) => vec![Ok(t.clone())],
        None => per_k(&cfg.ks, |k| checks::build(k, &cfg.tolerances).map(|b| b.table)),
    };
    let mut docs = Vec::new();
    for (k, t) in cfg.ks.iter().zip(tables) {
        match t {
            Ok(t) => docs.push((*k, render(&t, cfg.format)?)),
            Err(e) => {
                let _ = writeln!(io::stderr(), "k = {k}: {e}");
                return Ok(EXIT_FAILED);
            }
        }
    }
    write_outputs(&cfg, &docs, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    let reports = match cfg.table.clone() {
        Some(t) => vec![checks::verify(Source::File(t), &cfg.checks, &cfg.tolerances)],
        None => per_k(&cfg.ks, |k| checks::verify(Source::Model(k), &cfg.checks, &cfg.tolerances)),
    };
    let mut text = String::new();
    let width = cfg.checks.iter().map(|c| c.name().len()).max().unwrap_or(4).max(4);
    text.push_str(&format!("{:>4}", "k"));
    for c in &cfg.checks {
        text.push_str(&format!("  {:>width$}", c.name()));
    }
    text.push('\n');
    let mut witnesses = String::new();
    for r in &reports {
        text.push_str(&format!("{:>4}", r.k));
        for (check, status) in &r.results {
            let cell = match status {
                Status::Pass(_) => "ok",
                Status::Fail(w) => {
                    witnesses.push_str(&format!("k = {}, {check}: {w}\n", r.k));
                    "FAIL"
                }
                Status::Skipped(_) => "-",
            };
            text.push_str(&format!("  {cell:>width$}"));
        }
        text.push('\n');
    }
    text.push_str(&witnesses);
    let failed = reports.iter().any(|r| r.failed());
    text.push_str(if failed { "verification FAILED\n" } else { "all checks passed\n" });
    write_outputs(&cfg, &[(cfg.ks[0], text)], stdout)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn cmd_crosscheck(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    let reports = match cfg.table.clone() {
        Some(t) => vec![checks::crosscheck(Source::File(t), &cfg.tolerances)],
        None => per_k(&cfg.ks, |k| checks::crosscheck(Source::Model(k), &cfg.tolerances)),
    };
    let mut text = String::new();
    let mut failed = false;
    for (k, r) in cfg.ks.iter().zip(&reports) {
        match r {
            Ok(r) => {
                for f in &r.families {
                    let verdict = if f.passed() { "ok" } else { "FAIL" };
                    text.push_str(&format!("k = {k}  {:<15} {:>6} checked  {verdict}\n", f.family, f.checked));
                    for m in &f.mismatches {
                        text.push_str(&format!("    {}: closed form {}, table {}\n", m.what, m.expected, m.found));
                    }
                }
                failed |= !r.passed();
            }
            Err(e) => {
                text.push_str(&format!("k = {k}  FAIL  {e}\n"));
                failed = true;
            }
        }
    }
    text.push_str(if failed { "crosscheck FAILED\n" } else { "all families agree\n" });
    write_outputs(&cfg, &[(cfg.ks[0], text)], stdout)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn cmd_graph(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    let docs: Vec<(usize, String)> = cfg
        .ks
        .iter()
        .map(|&k| (k, if cfg.format == Format::Dot { export::dot(k) } else { export::adjacency_text(k) }))
        .collect();
    write_outputs(&cfg, &docs, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_identities(cfg: RunConfig, stdout: &mut dyn Write) -> Result<u8, ConfigError> {
    let rows = per_k(&cfg.ks, checks::identities);
    let mut text = String::new();
    let mut failed = false;
    for (k, row) in cfg.ks.iter().zip(rows) {
        for (name, status) in row {
            let line = match &status {
                Status::Pass(d) => format!("k = {k}  {name:<13} ok    {d}\n"),
                Status::Fail(w) => format!("k = {k}  {name:<13} FAIL  {w}\n"),
                Status::Skipped(why) => format!("k = {k}  {name:<13} -     {why}\n"),
            };
            failed |= status.failed();
            text.push_str(&line);
        }
    }
    write_outputs(&cfg, &[(cfg.ks[0], text)], stdout)?;
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}
