use std::collections::HashMap;

use rayon::prelude::*;

use super::{GenTuple, PrGraph};
use crate::error::{Error, Result};
use crate::group::Group;

/// Marker for a half-edge whose target was not recorded.
pub const NONE: u32 = u32::MAX;

/// A finite BFS window onto Γₙ(G).
///
/// Vertices are numbered in discovery order. A vertex is *complete* when all
/// of its `4n(n−1)` half-edges are recorded, which holds for every vertex of
/// depth below the radius unless the vertex cap cut the exploration short.
#[derive(Clone, Debug)]
pub struct ExploredGraph {
    space: PrGraph,
    root: GenTuple,
    radius: u32,
    cap: usize,
    vertices: Vec<GenTuple>,
    index: HashMap<GenTuple, u32>,
    depth: Vec<u32>,
    targets: Vec<u32>,
    complete: Vec<bool>,
    truncated: bool,
}

impl ExploredGraph {
    pub(super) fn explore(space: PrGraph, root: GenTuple, radius: u32, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidParameter("vertex cap must be positive".into()));
        }
        if root.len() != space.n() || !space.group().is_generating(root.items())? {
            return Err(Error::NotGenerating);
        }
        let d = space.degree();
        let mut g = ExploredGraph {
            radius,
            cap,
            vertices: vec![root.clone()],
            index: HashMap::from([(root.clone(), 0)]),
            depth: vec![0],
            targets: vec![NONE; d],
            complete: vec![false],
            truncated: false,
            root,
            space,
        };
        let mut layer_start = 0usize;
        let mut layer_depth = 0u32;
        while layer_depth < radius && layer_start < g.vertices.len() {
            let layer_end = g.vertices.len();
            let space = &g.space;
            let expanded: Vec<Result<Vec<GenTuple>>> = g.vertices[layer_start..layer_end]
                .par_iter()
                .map(|v| space.neighbor_tuples(v))
                .collect();
            for (offset, ns) in expanded.into_iter().enumerate() {
                let v = layer_start + offset;
                let mut all_known = true;
                for (mi, w) in ns?.into_iter().enumerate() {
                    let id = match g.index.get(&w) {
                        Some(&id) => id,
                        None if g.vertices.len() >= cap => {
                            g.truncated = true;
                            all_known = false;
                            continue;
                        }
                        None => {
                            let id = g.vertices.len() as u32;
                            g.index.insert(w.clone(), id);
                            g.vertices.push(w);
                            g.depth.push(layer_depth + 1);
                            g.targets.extend(std::iter::repeat_n(NONE, d));
                            g.complete.push(false);
                            id
                        }
                    };
                    g.targets[v * d + mi] = id;
                }
                if all_known {
                    g.complete[v] = true;
                } else {
                    g.targets[v * d..(v + 1) * d].fill(NONE);
                }
            }
            if g.truncated {
                break;
            }
            layer_start = layer_end;
            layer_depth += 1;
        }
        Ok(g)
    }

    /// Rebuilds a graph from recorded parts, checking every recorded edge
    /// against the move it claims.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        space: PrGraph,
        radius: u32,
        cap: usize,
        truncated: bool,
        vertices: Vec<GenTuple>,
        depth: Vec<u32>,
        complete: Vec<bool>,
        targets: Vec<u32>,
    ) -> Result<Self> {
        let d = space.degree();
        let bad = |why: String| Error::InvalidParameter(format!("graph snapshot: {why}"));
        if vertices.is_empty() || depth.len() != vertices.len() || complete.len() != vertices.len() {
            return Err(bad("inconsistent vertex arrays".into()));
        }
        if targets.len() != vertices.len() * d {
            return Err(bad("inconsistent edge array".into()));
        }
        let index: HashMap<GenTuple, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        if index.len() != vertices.len() {
            return Err(bad("duplicate vertices".into()));
        }
        for (v, t) in vertices.iter().enumerate() {
            if !space.group().is_generating(t.items())? {
                return Err(Error::NotGenerating);
            }
            for (mi, &m) in space.moves().iter().enumerate() {
                let w = targets[v * d + mi];
                if complete[v] && w == NONE {
                    return Err(bad(format!("complete vertex {v} lacks move {m}")));
                }
                if w != NONE && vertices.get(w as usize) != Some(&space.apply_move(t, m)?) {
                    return Err(bad(format!("edge {v} --{m}--> {w} does not match the move")));
                }
            }
        }
        Ok(ExploredGraph {
            root: vertices[0].clone(),
            space,
            radius,
            cap,
            vertices,
            index,
            depth,
            targets,
            complete,
            truncated,
        })
    }

    pub fn space(&self) -> &PrGraph {
        &self.space
    }

    pub fn group(&self) -> &Group {
        self.space.group()
    }

    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn root(&self) -> &GenTuple {
        &self.root
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// True when the vertex cap stopped the exploration.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GenTuple] {
        &self.vertices
    }

    pub fn vertex(&self, id: u32) -> &GenTuple {
        &self.vertices[id as usize]
    }

    pub fn id_of(&self, t: &GenTuple) -> Option<u32> {
        self.index.get(t).copied()
    }

    pub fn depth(&self, id: u32) -> u32 {
        self.depth[id as usize]
    }

    pub fn is_complete(&self, id: u32) -> bool {
        self.complete[id as usize]
    }

    pub fn all_complete(&self) -> bool {
        self.complete.iter().all(|&c| c)
    }

    pub fn complete_count(&self) -> usize {
        self.complete.iter().filter(|&&c| c).count()
    }

    /// Targets of the half-edges at a complete vertex, in move order.
    pub fn half_edges(&self, id: u32) -> Option<&[u32]> {
        let d = self.degree();
        self.complete[id as usize].then(|| &self.targets[id as usize * d..(id as usize + 1) * d])
    }

    pub(crate) fn raw_targets(&self) -> &[u32] {
        &self.targets
    }

    /// Each undirected edge once, as `(src, move index, dst)`. An edge seen
    /// from both complete endpoints is reported from the smaller
    /// `(vertex, move index)` side.
    pub fn edge_pairs(&self) -> Vec<(u32, usize, u32)> {
        let d = self.degree();
        let mut out = vec![];
        for v in 0..self.len() as u32 {
            let Some(hs) = self.half_edges(v) else { continue };
            for (mi, &w) in hs.iter().enumerate() {
                let back = self.space.inverse_index(mi);
                if !self.complete[w as usize] || (v, mi) <= (w, back) {
                    out.push((v, mi, w));
                }
            }
            debug_assert_eq!(hs.len(), d);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;

    fn space(g: Group, n: usize) -> PrGraph {
        PrGraph::new(g, n).unwrap()
    }

    #[test]
    fn radius_zero() {
        let s = space(Group::free_abelian(1).unwrap(), 2);
        let root = s.default_root().unwrap();
        let g = s.explore_ball(&root, 0, 100).unwrap();
        assert_eq!(g.len(), 1);
        assert!(!g.is_complete(0));
        assert!(g.edge_pairs().is_empty());
    }

    #[test]
    fn z2_mod_two_component() {
        let s = space(Group::cyclic(2).unwrap(), 2);
        let root = s.default_root().unwrap();
        let g = s.explore_ball(&root, 2, 100).unwrap();
        assert_eq!(g.len(), 3);
        // (0,1) sits at depth 2, so completeness needs radius 3
        assert!(!g.all_complete());
        let g = s.explore_ball(&root, 3, 100).unwrap();
        assert!(g.all_complete());
        let brute = s.all_vertices(100).unwrap();
        assert_eq!(brute.len(), 3);
        for v in brute {
            assert!(g.id_of(&v).is_some());
        }
    }

    #[test]
    fn z3_component_has_eight_vertices() {
        let s = space(Group::cyclic(3).unwrap(), 2);
        let g = s.explore_component(&s.default_root().unwrap(), 1000).unwrap();
        assert_eq!(g.len(), 8);
        assert!(g.all_complete());
    }

    #[test]
    fn cap_truncates_and_flags() {
        let s = space(Group::free_abelian(1).unwrap(), 2);
        let g = s.explore_ball(&s.default_root().unwrap(), 10, 5).unwrap();
        assert!(g.truncated());
        assert_eq!(g.len(), 5);
        assert!(s.explore_component(&s.default_root().unwrap(), 5).is_err());
    }

    #[test]
    fn non_generating_root_rejected() {
        let s = space(Group::free_abelian(1).unwrap(), 2);
        let bad = GenTuple::new_unchecked(vec![Element::scalar(2), Element::scalar(2)]);
        assert_eq!(s.explore_ball(&bad, 1, 10).unwrap_err(), Error::NotGenerating);
    }

    #[test]
    fn edge_pairs_count_half_edges() {
        let s = space(Group::cyclic(3).unwrap(), 2);
        let g = s.explore_component(&s.default_root().unwrap(), 1000).unwrap();
        // closed graph: every edge seen from both sides, 8·8/2 pairs
        assert_eq!(g.edge_pairs().len(), 8 * 8 / 2);
    }
}
