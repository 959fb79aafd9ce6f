//! The product replacement graph Γₙ(G): vertices are generating n-tuples,
//! edges are Nielsen moves. The graph is treated as a `4n(n−1)`-regular
//! multigraph: a move fixing a tuple is a loop and moves landing on the same
//! tuple are parallel edges.

mod distance;
mod explore;
pub mod export;
mod moves;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use explore::{ExploredGraph, NONE};
pub use moves::{all_moves, NielsenMove, Side};

use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// An ordered tuple of group elements; a vertex of Γₙ(G) when it generates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GenTuple(Vec<Element>);

impl GenTuple {
    /// Wraps items without checking generation.
    pub fn new_unchecked(items: Vec<Element>) -> Self {
        GenTuple(items)
    }

    pub fn items(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_items(self) -> Vec<Element> {
        self.0
    }
}

impl fmt::Display for GenTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| format!("{:?}", e.coords()))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Γₙ(G) for a fixed group and tuple length.
#[derive(Clone, Debug)]
pub struct PrGraph {
    group: Group,
    n: usize,
    moves: Vec<NielsenMove>,
    inverse: Vec<usize>,
}

impl PrGraph {
    pub fn new(group: Group, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("tuple length n must be at least 1".into()));
        }
        let moves = all_moves(n);
        let inverse = moves
            .iter()
            .map(|m| {
                moves
                    .binary_search(&m.inverse())
                    .expect("inverse move is listed")
            })
            .collect();
        Ok(PrGraph {
            group,
            n,
            moves,
            inverse,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `4n(n−1)`
    pub fn degree(&self) -> usize {
        self.moves.len()
    }

    pub fn moves(&self) -> &[NielsenMove] {
        &self.moves
    }

    pub fn move_index(&self, m: NielsenMove) -> Option<usize> {
        self.moves.binary_search(&m).ok()
    }

    /// Index of the inverse of the move at `idx`.
    pub fn inverse_index(&self, idx: usize) -> usize {
        self.inverse[idx]
    }

    /// Admits `items` as a vertex after validating elements and generation.
    pub fn vertex(&self, items: Vec<Element>) -> Result<GenTuple> {
        if items.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "expected a {}-tuple, got {} entries",
                self.n,
                items.len()
            )));
        }
        for e in &items {
            self.group.validate(e)?;
        }
        if !self.group.is_generating(&items)? {
            return Err(Error::NotGenerating);
        }
        Ok(GenTuple(items))
    }

    pub fn parse_vertex(&self, text: &str) -> Result<GenTuple> {
        self.vertex(self.group.parse_tuple(text)?)
    }

    pub fn format_vertex(&self, t: &GenTuple) -> String {
        self.group.format_tuple(t.items())
    }

    pub fn default_root(&self) -> Result<GenTuple> {
        self.vertex(self.group.default_root(self.n)?)
    }

    pub fn apply_move(&self, t: &GenTuple, m: NielsenMove) -> Result<GenTuple> {
        if m.i >= t.len() || m.j >= t.len() || m.i == m.j {
            return Err(Error::InvalidParameter(format!("move {m} out of range")));
        }
        let items = t.items();
        let si = if m.sign > 0 {
            items[m.i].clone()
        } else {
            self.group.inv(&items[m.i])?
        };
        let new = match m.side {
            Side::R => self.group.mul(&items[m.j], &si)?,
            Side::L => self.group.mul(&si, &items[m.j])?,
        };
        let mut out = items.to_vec();
        out[m.j] = new;
        Ok(GenTuple(out))
    }

    /// All `4n(n−1)` neighbors in move order, with multiplicity.
    pub fn neighbors(&self, t: &GenTuple) -> Result<Vec<(NielsenMove, GenTuple)>> {
        self.moves
            .iter()
            .map(|&m| Ok((m, self.apply_move(t, m)?)))
            .collect()
    }

    pub(crate) fn neighbor_tuples(&self, t: &GenTuple) -> Result<Vec<GenTuple>> {
        self.moves.iter().map(|&m| self.apply_move(t, m)).collect()
    }

    /// BFS ball of the given radius, stopping at `cap` vertices.
    pub fn explore_ball(&self, root: &GenTuple, radius: u32, cap: usize) -> Result<ExploredGraph> {
        ExploredGraph::explore(self.clone(), root.clone(), radius, cap)
    }

    /// Whole connected component of `root`; fails if it has more than `cap`
    /// vertices.
    pub fn explore_component(&self, root: &GenTuple, cap: usize) -> Result<ExploredGraph> {
        let g = self.explore_ball(root, u32::MAX, cap)?;
        if g.truncated() {
            return Err(Error::CapExceeded { cap });
        }
        Ok(g)
    }

    /// Shortest-path length if at most `max_depth`, else `None`.
    pub fn distance(&self, a: &GenTuple, b: &GenTuple, max_depth: u32) -> Result<Option<u32>> {
        distance::bidirectional(self, a, b, max_depth)
    }

    /// Every generating n-tuple of a finite group, in lexicographic order of
    /// element indices. Refuses more than `cap` candidate tuples.
    pub fn all_vertices(&self, cap: usize) -> Result<Vec<GenTuple>> {
        let elems = self
            .group
            .elements()
            .ok_or_else(|| Error::Unsupported("enumerating Γₙ of an infinite group".into()))?;
        let total = (elems.len() as u128).pow(self.n as u32);
        if total > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let mut out = vec![];
        let mut idx = vec![0usize; self.n];
        loop {
            let items: Vec<Element> = idx.iter().map(|&i| elems[i].clone()).collect();
            if self.group.is_generating(&items)? {
                out.push(GenTuple(items));
            }
            let mut k = self.n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}
