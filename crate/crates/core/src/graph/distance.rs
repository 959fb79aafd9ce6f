use std::collections::HashMap;

use super::{GenTuple, PrGraph};
use crate::error::Result;

/// Meet-in-the-middle BFS. Always grows the smaller frontier by one full
/// layer; the first layer that touches the other ball fixes the distance.
pub(super) fn bidirectional(
    space: &PrGraph,
    a: &GenTuple,
    b: &GenTuple,
    max_depth: u32,
) -> Result<Option<u32>> {
    if a == b {
        return Ok(Some(0));
    }
    let mut seen = [HashMap::from([(a.clone(), 0u32)]), HashMap::from([(b.clone(), 0u32)])];
    let mut frontier = [vec![a.clone()], vec![b.clone()]];
    let mut depth = [0u32, 0u32];
    while depth[0] + depth[1] < max_depth {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        if frontier[side].is_empty() {
            return Ok(None);
        }
        let mut next = vec![];
        for v in &frontier[side] {
            for w in space.neighbor_tuples(v)? {
                if seen[other].contains_key(&w) {
                    return Ok(Some(depth[0] + depth[1] + 1));
                }
                if !seen[side].contains_key(&w) {
                    seen[side].insert(w.clone(), depth[side] + 1);
                    next.push(w);
                }
            }
        }
        frontier[side] = next;
        depth[side] += 1;
    }
    Ok(None)
}
