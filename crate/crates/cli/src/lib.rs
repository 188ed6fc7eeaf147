//! Command-line front end for `nsbetti`.
//!
//! [`run`] takes parsed arguments and explicit output streams so that the
//! binary and the tests share one code path.

pub mod cache;
pub mod fixture;
pub mod output;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsbetti::moduli::betti_table;
use nsbetti::{Component, GenusPair};

use crate::cache::Cache;
use crate::fixture::Fixture;
use crate::output::{ReportRow, TableRecord};
use crate::verify::Fault;

pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const BAD_ARGS: i32 = 2;
    pub const ASSEMBLY: i32 = 3;
    pub const FIXTURE: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "nsbetti",
    version,
    about = "Betti numbers of the two components of a degenerate rank-2 moduli space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute Betti tables for one genus pair.
    Compute(ComputeArgs),
    /// Run every consistency check over the grid 3 <= g1, g2 <= N.
    Verify(VerifyArgs),
    /// Recompute the reference low-genus table and diff it against the fixture.
    Table1(Table1Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComponentArg {
    M12,
    M21,
    Intersection,
    All,
}

impl ComponentArg {
    pub fn components(self) -> Vec<Component> {
        match self {
            ComponentArg::M12 => vec![Component::M12],
            ComponentArg::M21 => vec![Component::M21],
            ComponentArg::Intersection => vec![Component::IntersectionM],
            ComponentArg::All => Component::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Genus of the curve carrying the stable factor (>= 2).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub g1: u32,
    /// Genus of the curve carrying the Kummer stratification (>= 2).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub g2: u32,
    #[arg(long, value_enum, default_value_t = ComponentArg::M12)]
    pub component: ComponentArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Cache file; defaults to $NSBETTI_CACHE when set, otherwise no cache.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub grid_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Fixture to diff against; the bundled copy by default.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn emit(path: Option<&PathBuf>, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            exit::BAD_ARGS
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Compute(a) => run_compute(&a, out, err),
        Command::Verify(a) => run_verify(&a, out, err),
        Command::Table1(a) => run_table1(&a, out, err),
    }
}

/// Tables for the requested components, via the cache when one is configured.
pub fn compute_tables(
    gp: GenusPair,
    components: &[Component],
    cache: Option<&mut Cache>,
) -> nsbetti::Result<Vec<TableRecord>> {
    let mut cache = cache;
    let mut records = Vec::new();
    for &c in components {
        if let Some(hit) = cache.as_deref().and_then(|k| k.get(gp, c)) {
            records.push(hit.clone());
            continue;
        }
        let rec = TableRecord::from(&betti_table(gp, c)?);
        if let Some(k) = cache.as_deref_mut() {
            k.insert(gp, c, rec.clone());
        }
        records.push(rec);
    }
    Ok(records)
}

pub fn run_compute(a: &ComputeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let gp = match GenusPair::new(a.g1, a.g2) {
        Ok(gp) => gp,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::BAD_ARGS;
        }
    };
    let mut cache = cache::resolve_path(a.cache.as_deref()).map(Cache::open);
    let records = match compute_tables(gp, &a.component.components(), cache.as_mut()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "assembly error at {gp}: {e}");
            return exit::ASSEMBLY;
        }
    };
    if let Some(c) = &cache {
        if let Err(e) = c.save() {
            let _ = writeln!(err, "warning: cache not saved: {e}");
        }
    }
    let text = match a.format {
        Format::Json => output::tables_json(&records),
        Format::Csv => output::tables_csv(&records),
        Format::Md => output::tables_md(&records),
    };
    emit(a.output.as_ref(), &text, out, err)
}

pub fn run_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let rows: Vec<ReportRow> = verify::run_grid(a.grid_max, a.inject_fault);
    let text = match a.format {
        Format::Json => output::report_json(a.grid_max, &rows),
        Format::Csv => output::report_csv(&rows),
        Format::Md => output::report_md(&rows),
    };
    let failed = rows.iter().filter(|r| r.status == "FAIL").count();
    let _ = writeln!(
        err,
        "{} checks over 3 <= g1, g2 <= {}: {} failed",
        rows.len(),
        a.grid_max,
        failed
    );
    for r in rows.iter().filter(|r| r.status == "FAIL").take(20) {
        let _ = writeln!(err, "FAIL ({},{}) {}: {}", r.g1, r.g2, r.name, r.witness);
    }
    match emit(a.output.as_ref(), &text, out, err) {
        exit::OK if failed > 0 => exit::CHECK_FAILED,
        code => code,
    }
}

pub fn run_table1(a: &Table1Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let fx = match Fixture::load(a.fixture.as_deref()) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit::FIXTURE;
        }
    };
    let diff = match fixture::diff(&fx) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "assembly error: {e}");
            return exit::ASSEMBLY;
        }
    };
    match emit(a.output.as_ref(), &diff.to_string(), out, err) {
        exit::OK if !diff.is_clean() => exit::CHECK_FAILED,
        code => code,
    }
}
