use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::ExploredGraph;
use crate::group::{Element, Group};

/// A finite multigraph in which every vertex has `degree` half-edges, stored
/// as the target of each half-edge. The number of half-edges `v → u` equals
/// the number `u → v` for `u ≠ v`; loops never cross a cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    vertices: usize,
    degree: usize,
    targets: Vec<u32>,
}

impl RegularGraph {
    /// `targets[v * degree + k]` is the far end of the `k`-th half-edge at `v`.
    pub fn from_targets(vertices: usize, degree: usize, targets: Vec<u32>) -> Result<Self> {
        if targets.len() != vertices * degree {
            return Err(Error::InvalidParameter(format!(
                "expected {} half-edges, got {}",
                vertices * degree,
                targets.len()
            )));
        }
        if targets.iter().any(|&t| t as usize >= vertices) {
            return Err(Error::InvalidParameter("half-edge target out of range".into()));
        }
        let g = RegularGraph {
            vertices,
            degree,
            targets,
        };
        let m = g.multiplicities();
        for v in 0..vertices {
            for u in 0..v {
                if m[v][u] != m[u][v] {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric multiplicity between {u} and {v}"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Requires every explored vertex to be complete.
    pub fn from_explored(g: &ExploredGraph) -> Result<Self> {
        if !g.all_complete() {
            return Err(Error::IncompleteRegion);
        }
        Ok(RegularGraph {
            vertices: g.len(),
            degree: g.degree(),
            targets: g.raw_targets().to_vec(),
        })
    }

    /// Cay(G, S) on the elements of a finite group in canonical order, with
    /// half-edges `g → g·sᵢ` and `g → g·sᵢ⁻¹` for each `i`.
    pub fn cayley(group: &Group, gens: &[Element]) -> Result<(Self, Vec<Element>)> {
        let elems = group
            .elements()
            .ok_or_else(|| Error::Unsupported("Cayley graph of an infinite group".into()))?;
        let index: HashMap<&Element, u32> =
            elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let mut steps = vec![];
        for s in gens {
            steps.push(s.clone());
            steps.push(group.inv(s)?);
        }
        let mut targets = Vec::with_capacity(elems.len() * steps.len());
        for g in &elems {
            for s in &steps {
                targets.push(index[&group.mul(g, s)?]);
            }
        }
        let graph = Self::from_targets(elems.len(), steps.len(), targets)?;
        Ok((graph, elems))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices == 0
    }

    pub fn half_edges(&self, v: u32) -> &[u32] {
        let d = self.degree;
        &self.targets[v as usize * d..(v as usize + 1) * d]
    }

    /// `m[v][u]` = number of half-edges from `v` to `u`.
    pub fn multiplicities(&self) -> Vec<Vec<u32>> {
        let n = self.vertices;
        let mut m = vec![vec![0u32; n]; n];
        for v in 0..n {
            for &u in self.half_edges(v as u32) {
                m[v][u as usize] += 1;
            }
        }
        m
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn boundary_size(&self, set: &[u32]) -> usize {
        let mut inside = vec![false; self.vertices];
        for &v in set {
            inside[v as usize] = true;
        }
        set.iter()
            .flat_map(|&v| self.half_edges(v))
            .filter(|&&u| !inside[u as usize])
            .count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        seen[0] = true;
        let mut q = VecDeque::from([0u32]);
        let mut count = 1;
        while let Some(v) = q.pop_front() {
            for &u in self.half_edges(v) {
                if !std::mem::replace(&mut seen[u as usize], true) {
                    count += 1;
                    q.push_back(u);
                }
            }
        }
        count == self.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_targets() {
        // 0 → 1 twice, 1 → 0 once
        assert!(RegularGraph::from_targets(2, 2, vec![1, 1, 0, 1]).is_err());
        assert!(RegularGraph::from_targets(2, 2, vec![1, 1, 0, 0]).is_ok());
    }

    #[test]
    fn cayley_of_cyclic_group_is_a_cycle() {
        let g = Group::cyclic(5).unwrap();
        let (c, elems) = RegularGraph::cayley(&g, &[Element::scalar(1)]).unwrap();
        assert_eq!(elems.len(), 5);
        assert_eq!(c.degree(), 2);
        assert!(c.is_connected());
        assert_eq!(c.boundary_size(&[0, 1]), 2);
    }
}
