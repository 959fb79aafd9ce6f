use std::fs;
use std::path::Path;

use prgraph::graph::export::GraphSnapshot;
use prgraph::{parse_group_spec, ExploredGraph, GenTuple, PrGraph};

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;
use crate::SpaceArgs;

pub mod explore;
pub mod export;
pub mod metrics;
pub mod sample;
pub mod verify;

pub fn space_from(group: &str, n: usize, root: Option<&str>) -> CliResult<(PrGraph, GenTuple)> {
    let space = PrGraph::new(parse_group_spec(group)?, n)?;
    let root = match root {
        Some(text) => space.parse_vertex(text)?,
        None => space.default_root()?,
    };
    Ok((space, root))
}

pub fn resolve(args: &SpaceArgs) -> CliResult<(PrGraph, GenTuple)> {
    space_from(&args.group, args.n, args.root.as_deref())
}

pub fn record_space(m: &mut RunManifest, space: &PrGraph, root: &GenTuple) {
    m.group = Some(space.group().describe());
    m.n = Some(space.n());
    m.root = Some(space.format_vertex(root));
}

/// Loads a graph written by `explore`. The group is re-read from the file
/// unless `group` overrides it (needed for groups given by a table file).
pub fn load_graph(path: &Path, group: Option<&str>) -> CliResult<ExploredGraph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::File { path: path.to_path_buf(), source })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: not a graph file: {e}", path.display())))?;
    let graph = value.get("graph").cloned().unwrap_or(value);
    let snap: GraphSnapshot = serde_json::from_value(graph)
        .map_err(|e| CliError::Usage(format!("{}: not a graph file: {e}", path.display())))?;
    let group = parse_group_spec(group.unwrap_or(&snap.group))?;
    Ok(ExploredGraph::from_snapshot(group, &snap)?)
}

pub fn warn_truncated(g: &ExploredGraph) {
    if g.truncated() {
        eprintln!(
            "prgraph: warning: exploration stopped at the cap of {} vertices; the output is partial",
            g.cap()
        );
    }
}
