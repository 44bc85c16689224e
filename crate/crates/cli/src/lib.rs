//! Seeded experiment runner behind the `qtele` binary.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

pub use report::Report;

/// Environment variable naming the directory reports go to when `--output` is absent.
pub const OUTPUT_DIR_ENV: &str = "QTELE_OUTPUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qtele", version, about = "Teleportation and entanglement experiments with reproducible seeds")]
pub struct Cli {
    /// Master seed; every trial and restart derives its own stream from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled trials (teleport) or Monte Carlo inputs (audit).
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report path; `-` for standard output. Defaults to `$QTELE_OUTPUT_DIR/<command>.<ext>`, else standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sampled runs of the measure / announce / correct protocol.
    Teleport(commands::TeleportArgs),
    /// The wrong-correction-table scenario for a real or complex qubit input.
    Example1(commands::Example1Args),
    /// Entropies of a named state.
    Entropy(commands::EntropyArgs),
    /// Entanglement of formation of a Werner state.
    Eof(commands::EofArgs),
    /// Recurrence distillation of Werner pairs or concentration of pure pairs.
    Distill(commands::DistillArgs),
    /// Best teleportation fidelity through an undersized resource.
    Audit(commands::AuditArgs),
    /// Distill-then-teleport against teleport-then-distill.
    Theorem3(commands::Theorem3Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Teleport(_) => "teleport",
            Command::Example1(_) => "example1",
            Command::Entropy(_) => "entropy",
            Command::Eof(_) => "eof",
            Command::Distill(_) => "distill",
            Command::Audit(_) => "audit",
            Command::Theorem3(_) => "theorem3",
        }
    }
}

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub invocation: String,
}

/// `qtele` followed by the arguments, space separated.
pub fn invocation_line<I, T>(args: I) -> String
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut parts = vec!["qtele".to_string()];
    parts.extend(args.into_iter().skip(1).map(|a| a.into().to_string_lossy().into_owned()));
    parts.join(" ")
}

/// Runs the parsed command and renders the whole report in memory.
pub fn render(cli: &Cli, invocation: &str) -> Result<String> {
    let cfg = RunConfig { seed: cli.seed, trials: cli.trials, invocation: invocation.to_string() };
    let report = match &cli.command {
        Command::Teleport(a) => commands::teleport(a, &cfg)?,
        Command::Example1(a) => commands::example1(a, &cfg)?,
        Command::Entropy(a) => commands::entropy(a, &cfg)?,
        Command::Eof(a) => commands::eof(a, &cfg)?,
        Command::Distill(a) => commands::distill(a, &cfg)?,
        Command::Audit(a) => commands::audit(a, &cfg)?,
        Command::Theorem3(a) => commands::theorem3(a, &cfg)?,
    };
    Ok(match cli.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    })
}

/// Where the report goes: `None` means standard output.
pub fn destination(cli: &Cli, output_dir: Option<&Path>) -> Option<PathBuf> {
    match &cli.output {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => output_dir.map(|d| d.join(format!("{}.{}", cli.command.name(), cli.format.extension()))),
    }
}

/// Writes through a temporary sibling and renames it into place, so a
/// failed write never leaves a truncated report behind.
pub fn write_report(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("moving report to {}", path.display()))?;
    Ok(())
}

/// Parse, run and write; the body of `main`.
pub fn run_from<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&args).unwrap_or_else(|e| e.exit());
    let invocation = invocation_line(args);
    let text = render(&cli, &invocation)?;
    let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    match destination(&cli, dir.as_deref()) {
        Some(path) => write_report(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
