use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GenTuple, PrGraph};
use crate::group::{Element, Group};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadrantReport {
    pub bound: i64,
    pub vertices: usize,
    /// Distinct in-region edges between distinct vertices.
    pub edges: usize,
    pub connected: bool,
    pub acyclic: bool,
    /// Every vertex but `(1,1)` has exactly one in-region neighbor of smaller
    /// coordinate sum, and `(1,1)` has none.
    pub unique_parent: bool,
    /// Vertices with `a + b ≤ N/2` have exactly two in-region neighbors of
    /// larger coordinate sum.
    pub binary_branching: bool,
    /// Generating pairs with `|a| + |b| ≤ N` on the coordinate axes.
    pub exceptional: Vec<(i64, i64)>,
    pub exceptional_ok: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn pair(t: &GenTuple) -> (i64, i64) {
    (t.items()[0].coords()[0], t.items()[1].coords()[0])
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Checks that the positive quadrant `{(a, b) : a, b > 0, a + b ≤ N}` of
/// Γ₂(ℤ) induces a binary tree rooted at `(1,1)`, and that the only vertices
/// off the open quadrants are `(±1,0)` and `(0,±1)`.
pub fn quadrant_tree_check(bound: i64) -> Result<QuadrantReport> {
    if bound < 2 {
        return Err(Error::InvalidParameter("quadrant bound must be at least 2".into()));
    }
    let space = PrGraph::new(Group::free_abelian(1)?, 2)?;
    let mut region: Vec<(i64, i64)> = vec![];
    for a in 1..bound {
        for b in 1..=bound - a {
            if gcd(a, b) == 1 {
                region.push((a, b));
            }
        }
    }
    let index: HashMap<(i64, i64), usize> = region.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut adjacency: Vec<Vec<usize>> = vec![vec![]; region.len()];
    for (i, &(a, b)) in region.iter().enumerate() {
        // coprime by construction, so the pair generates ℤ
        let t = GenTuple::new_unchecked(vec![Element::scalar(a), Element::scalar(b)]);
        let adj = &mut adjacency[i];
        for (_, u) in space.neighbors(&t)? {
            if let Some(&j) = index.get(&pair(&u)) {
                if j != i {
                    adj.push(j);
                }
            }
        }
        adj.sort_unstable();
        adj.dedup();
    }
    let mut failures = vec![];
    let symmetric = (0..region.len()).all(|i| adjacency[i].iter().all(|&j| adjacency[j].binary_search(&i).is_ok()));
    if !symmetric {
        failures.push("in-region adjacency is not symmetric".into());
    }
    let edges = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    let root = index[&(1, 1)];
    let mut seen = vec![false; region.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &u in &adjacency[v] {
            if !std::mem::replace(&mut seen[u], true) {
                queue.push_back(u);
            }
        }
    }
    let connected = seen.iter().all(|&s| s);
    let acyclic = connected && edges + 1 == region.len();
    let sum = |i: usize| region[i].0 + region[i].1;
    let mut unique_parent = true;
    let mut binary_branching = true;
    for (i, &(a, b)) in region.iter().enumerate() {
        let smaller = adjacency[i].iter().filter(|&&j| sum(j) < sum(i)).count();
        let larger = adjacency[i].iter().filter(|&&j| sum(j) > sum(i)).count();
        let want_parents = if i == root { 0 } else { 1 };
        if smaller != want_parents {
            unique_parent = false;
            failures.push(format!("({a},{b}) has {smaller} smaller neighbors"));
        }
        if 2 * (a + b) <= bound && larger != 2 {
            binary_branching = false;
            failures.push(format!("({a},{b}) has {larger} larger neighbors"));
        }
    }
    if !connected {
        failures.push("region is not connected to (1,1)".into());
    }
    if connected && !acyclic {
        failures.push(format!("{} vertices but {edges} edges", region.len()));
    }
    let group = space.group();
    let mut exceptional = vec![];
    for a in -bound..=bound {
        let rest = bound - a.abs();
        for b in -rest..=rest {
            if a != 0 && b != 0 {
                continue;
            }
            if group.is_generating(&[Element::scalar(a), Element::scalar(b)])? {
                exceptional.push((a, b));
            }
        }
    }
    let exceptional_ok = exceptional == [(-1, 0), (0, -1), (0, 1), (1, 0)];
    if !exceptional_ok {
        failures.push(format!("unexpected axis vertices {exceptional:?}"));
    }
    Ok(QuadrantReport {
        bound,
        vertices: region.len(),
        edges,
        connected,
        acyclic,
        unique_parent,
        binary_branching,
        exceptional,
        exceptional_ok,
        passed: failures.is_empty(),
        failures,
    })
}

/// The in-region neighbor of smaller coordinate sum: subtract the smaller
/// coordinate from the larger one.
pub fn quadrant_parent(a: i64, b: i64) -> Option<(i64, i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => Some((a - b, b)),
        std::cmp::Ordering::Less => Some((a, b - a)),
        std::cmp::Ordering::Equal => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_region_by_hand() {
        let r = quadrant_tree_check(4).unwrap();
        assert_eq!(r.vertices, 5);
        assert_eq!(r.edges, 4);
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn parent_arithmetic() {
        assert_eq!(quadrant_parent(2, 3), Some((2, 1)));
        assert_eq!(quadrant_parent(1, 1), None);
    }
}
