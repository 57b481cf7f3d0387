use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use xatlas_core::bounds::{certify, GraphFamily};
use xatlas_core::io::{
    bounds_csv, bounds_json, bounds_markdown, embed_report, render_svg, verify_family, verify_table, Artifact,
    RenderStyle, ReportFormat,
};

#[derive(Parser)]
#[command(name = "xatlas", version, about = "Crossing-number drawings, counts and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the drawing JSON for one family and n.
    Build {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count crossings of a drawing file (or of a freshly built drawing).
    Count {
        file: Option<PathBuf>,
        #[arg(long)]
        family: Option<GraphFamily>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare counted drawings with their closed forms over a range.
    Verify {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certified lower and upper bounds over a range.
    Bounds {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a drawing file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON file with render settings.
        #[arg(long)]
        style: Option<PathBuf>,
    },
    /// Congestion report of the embedding used for the lower bound.
    Embed {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    family: GraphFamily,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long)]
    family: GraphFamily,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range, conflicts_with = "n", required_unless_present = "n")]
    range: Option<RangeInclusive<usize>>,
    #[arg(long)]
    n: Option<usize>,
}

impl RangeArgs {
    fn values(&self) -> RangeInclusive<usize> {
        match (&self.range, self.n) {
            (Some(r), _) => r.clone(),
            (None, Some(n)) => n..=n,
            (None, None) => unreachable!("clap requires one of them"),
        }
    }
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

/// Failure classes mapped to exit codes.
enum Outcome {
    Ok,
    Mismatch,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        },
    }
}

fn read_artifact(path: &Path) -> Result<Artifact> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Artifact::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Build { target, out } => {
            let a = Artifact::build(target.family, target.n)?;
            emit(out.as_deref(), &a.to_json())?;
            Ok(Outcome::Ok)
        }
        Command::Count { file, family, n } => {
            let a = match (file, family, n) {
                (Some(f), None, None) => read_artifact(&f)?,
                (None, Some(family), Some(n)) => Artifact::build(family, n)?,
                _ => bail!("give either a drawing file or both --family and --n"),
            };
            let c = a.count()?;
            let v = json!({
                "family": a.family.name(),
                "n": a.n,
                "counted": c.counted,
                "geometric": c.geometric,
                "breakdown": c.breakdown,
            });
            emit(None, &(serde_json::to_string_pretty(&v)? + "\n"))?;
            Ok(if c.counted == c.geometric { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Verify { range, format, out } => {
            let rows = range
                .values()
                .map(|n| verify_family(range.family, n))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            emit(out.as_deref(), &verify_table(&rows, format))?;
            if out.is_some() {
                emit(None, &verify_table(&rows, ReportFormat::Md))?;
            }
            match rows.iter().find(|r| !r.matches) {
                Some(r) => {
                    eprintln!(
                        "mismatch for {} n = {}: {}",
                        r.family,
                        r.n,
                        r.diagnostic.as_deref().unwrap_or("unknown")
                    );
                    Ok(Outcome::Mismatch)
                }
                None => Ok(Outcome::Ok),
            }
        }
        Command::Bounds { range, format, out } => {
            let rows = range
                .values()
                .map(|n| certify(range.family, n))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let text = match format {
                ReportFormat::Csv => bounds_csv(&rows),
                ReportFormat::Md => bounds_markdown(&rows),
                ReportFormat::Json => bounds_json(&rows),
            };
            emit(out.as_deref(), &text)?;
            Ok(Outcome::Ok)
        }
        Command::Render { file, out, style } => {
            let a = read_artifact(&file)?;
            let style = match style {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str::<RenderStyle>(&text).with_context(|| format!("parsing {}", p.display()))?
                }
                None => RenderStyle::default(),
            };
            let c = a.count()?;
            emit(out.as_deref(), &render_svg(&a.expanded, Some(c.geometric), &style)?)?;
            Ok(Outcome::Ok)
        }
        Command::Embed { target, out } => {
            let r = embed_report(target.family, target.n)?;
            let mut text = serde_json::to_string_pretty(&r)?;
            text.push('\n');
            emit(out.as_deref(), &text)?;
            Ok(if r.matches { Outcome::Ok } else { Outcome::Mismatch })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
