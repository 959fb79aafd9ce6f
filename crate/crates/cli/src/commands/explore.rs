use std::path::PathBuf;

use clap::Args;
use prgraph::graph::export::GraphSnapshot;
use serde::Serialize;

use super::{record_space, resolve, warn_truncated};
use crate::error::CliResult;
use crate::manifest::{csv_with_manifest, dot_with_manifest, json_document, print, RunManifest, Sink};
use crate::{Outcome, SpaceArgs};

#[derive(Args, Debug)]
pub struct ExploreArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 3)]
    pub radius: u32,
    /// Maximum number of vertices to discover.
    #[arg(long, default_value_t = 100_000)]
    pub cap: usize,
    /// Output directory for graph.json, graph.dot and graph.csv; stdout gets
    /// the JSON alone when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GraphDocument<'a> {
    manifest: &'a RunManifest,
    graph: GraphSnapshot,
}

pub fn run(args: ExploreArgs, argv: &[String]) -> CliResult<Outcome> {
    let (space, root) = resolve(&args.space)?;
    let g = space.explore_ball(&root, args.radius, args.cap)?;
    warn_truncated(&g);

    let sink = Sink::new(args.out)?;
    let mut m = RunManifest::new("explore", argv);
    record_space(&mut m, &space, &root);
    m.radius = Some(args.radius);
    m.cap = Some(args.cap);
    m.outputs = sink.paths(&["graph.json", "graph.dot", "graph.csv"]);

    let json = json_document(&GraphDocument { manifest: &m, graph: g.snapshot() })?;
    if sink.to_stdout() {
        print(&json)?;
    } else {
        sink.write("graph.json", &json)?;
        sink.write("graph.dot", &dot_with_manifest(&m, &g.to_dot()))?;
        sink.write("graph.csv", &csv_with_manifest(&m, &g.to_csv()?))?;
    }
    Ok(Outcome::Done)
}
