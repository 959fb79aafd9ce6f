use std::path::PathBuf;

use clap::{Args, ValueEnum};
use prgraph::graph::export::GraphSnapshot;
use serde::Serialize;

use super::{load_graph, record_space, space_from, warn_truncated};
use crate::error::{CliError, CliResult};
use crate::manifest::{csv_with_manifest, dot_with_manifest, json_document, print, write_file, RunManifest};
use crate::Outcome;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

/// Either `--graph FILE` or `--group` (with `--n`, `--root`, `--radius`).
#[derive(Args, Debug)]
pub struct ExportArgs {
    /// Graph JSON written by `explore`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub radius: u32,
    #[arg(long, default_value_t = 100_000)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GraphDocument<'a> {
    manifest: &'a RunManifest,
    graph: GraphSnapshot,
}

pub fn run(args: ExportArgs, argv: &[String]) -> CliResult<Outcome> {
    let g = match (&args.graph, &args.group) {
        (Some(path), group) => load_graph(path, group.as_deref())?,
        (None, Some(group)) => {
            let (space, root) = space_from(group, args.n, args.root.as_deref())?;
            space.explore_ball(&root, args.radius, args.cap)?
        }
        (None, None) => return Err(CliError::Usage("export needs --graph or --group".into())),
    };
    warn_truncated(&g);

    let mut m = RunManifest::new("export", argv);
    record_space(&mut m, g.space(), g.root());
    m.radius = Some(g.radius());
    m.cap = Some(g.cap());
    m.outputs = args.out.iter().map(|p| p.display().to_string()).collect();

    let text = match args.format {
        Format::Json => json_document(&GraphDocument { manifest: &m, graph: g.snapshot() })?,
        Format::Dot => dot_with_manifest(&m, &g.to_dot()),
        Format::Csv => csv_with_manifest(&m, &g.to_csv()?),
    };
    match &args.out {
        Some(p) => write_file(p, &text)?,
        None => print(&text)?,
    }
    Ok(Outcome::Done)
}
