//! `level2coh`: compute, verify and export cohomology tables of arrangement
//! complements and the moduli spaces assembled from them.
//!
//! Exit status: 0 on success, 1 on a failed check or invariant violation,
//! 2 on a usage error.

mod cache;

use anyhow::{Context as _, Result};
use cache::FileStore;
use clap::{Parser, Subcommand, ValueEnum};
use level2coh::modspaces::{ArtifactStore, Context, GradedRep, Pipeline, ReferenceTables, Scope, SpaceId};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "level2coh", version, about)]
struct Cli {
    /// Directory for cached base traces; no caching when absent.
    #[arg(long, global = true, env = "LEVEL2COH_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for the count sweeps (default: all cores).
    #[arg(long, global = true, env = "LEVEL2COH_THREADS")]
    threads: Option<usize>,
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv, env = "LEVEL2COH_FORMAT")]
    format: Format,
    /// Directory holding `<table>.csv` reference files instead of the shipped ones.
    #[arg(long, global = true, env = "LEVEL2COH_REFERENCE_DIR")]
    reference_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Degrees by irreducibles, with a `degree,phi_<label>,...` header.
    Csv,
    /// The Poincare polynomial in `t`.
    Poly,
}

/// A space name or `all`.
#[derive(Clone, Debug)]
enum Selection {
    All,
    One(SpaceId),
}

fn parse_selection(s: &str) -> Result<Selection, String> {
    if s == "all" {
        return Ok(Selection::All);
    }
    s.parse().map(Selection::One).map_err(|_| {
        let names: Vec<&str> = SpaceId::ALL.iter().map(|id| id.slug()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse().map_err(|_| "expected `all`, `q2`, `m3` or a space name".to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Compute spaces and print their tables.
    Compute {
        #[arg(required = true, value_parser = parse_selection)]
        spaces: Vec<Selection>,
        /// Also write one file per space into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check computed spaces against the reference tables and stated values.
    Verify {
        #[arg(default_value = "all", value_parser = parse_scope)]
        scope: Scope,
    },
    /// Write a space in the chosen format, to stdout or into a directory.
    Export {
        #[arg(value_parser = parse_selection)]
        space: Selection,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn expand(selections: &[Selection]) -> Vec<SpaceId> {
    let mut ids = Vec::new();
    for s in selections {
        let more = match s {
            Selection::All => SpaceId::ALL.to_vec(),
            Selection::One(id) => vec![*id],
        };
        for id in more {
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    ids
}

fn render(rep: &GradedRep, format: Format) -> String {
    match format {
        Format::Csv => rep.to_csv(),
        Format::Poly => format!("{}\n", rep.poly_form()),
    }
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Poly => "txt",
    }
}

fn write_outputs(
    pipeline: &mut Pipeline<'_>,
    ids: &[SpaceId],
    format: Format,
    out: Option<&Path>,
    headers: bool,
) -> Result<()> {
    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for &id in ids {
        let text = render(&pipeline.space(id)?, format);
        match out {
            Some(dir) => {
                let path = dir.join(format!("{id}.{}", extension(format)));
                std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
                writeln!(stdout, "{id}: wrote {}", path.display())?;
            }
            None => {
                if headers {
                    writeln!(stdout, "# {id}")?;
                }
                stdout.write_all(text.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
    }
    let store = cli
        .cache_dir
        .as_ref()
        .map(|d| FileStore::new(d).with_context(|| format!("opening cache {}", d.display())))
        .transpose()?;
    let ctx = Context::shared()?;
    let mut pipeline = match &store {
        Some(s) => Pipeline::with_store(ctx, s as &dyn ArtifactStore),
        None => Pipeline::new(ctx),
    };
    match cli.command {
        Command::Compute { spaces, out } => {
            let ids = expand(&spaces);
            write_outputs(&mut pipeline, &ids, cli.format, out.as_deref(), true)?;
            Ok(true)
        }
        Command::Export { space, out } => {
            let ids = expand(&[space]);
            write_outputs(&mut pipeline, &ids, cli.format, out.as_deref(), ids.len() > 1)?;
            Ok(true)
        }
        Command::Verify { scope } => {
            let references = match &cli.reference_dir {
                Some(dir) => ReferenceTables::from_dir(dir)?,
                None => ReferenceTables::shipped()?,
            };
            let result = level2coh::modspaces::verify_scope(&mut pipeline, &references, scope)?;
            let mut out = std::io::stdout().lock();
            write!(out, "{}", result.report)?;
            if let Some(m3) = &result.m3 {
                writeln!(out, "m3 Eul(M_3[2], u) = Eul(Q[2], u) + u^2 Eul(Hyp3, u) = {}", m3.euler.display_with("u"))?;
                writeln!(out, "m3 dim H^7(M_3[2]) >= {} (dimension-only bound {})", m3.lower_bound, m3.naive_bound)?;
                writeln!(out, "m3 dim H^7(M_3[2]) <= {}", m3.upper_bound)?;
            }
            let failed = result.report.failures().count();
            writeln!(out, "{} checks, {} failed", result.report.checks.len(), failed)?;
            Ok(failed == 0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
