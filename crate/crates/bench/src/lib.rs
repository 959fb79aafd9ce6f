//! Fixtures shared by the benchmarks.

use prgraph::{parse_group_spec, GenTuple, PrGraph};

/// `Γₙ(G)` for a group spec, with its standard root.
pub fn space(spec: &str, n: usize) -> (PrGraph, GenTuple) {
    let group = parse_group_spec(spec).expect("valid group spec");
    let space = PrGraph::new(group, n).expect("valid tuple length");
    let root = space.default_root().expect("group has a standard root");
    (space, root)
}
