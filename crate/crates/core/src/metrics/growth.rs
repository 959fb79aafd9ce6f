use std::collections::BTreeSet;

use num::rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ExploredGraph;

/// One half-edge leaving a vertex set: `(source, move index, target)`.
pub type HalfEdge = (u32, usize, u32);

fn member_mask(g: &ExploredGraph, set: &[u32]) -> Result<Vec<bool>> {
    let mut inside = vec![false; g.len()];
    for &v in set {
        let slot = inside.get_mut(v as usize).ok_or_else(|| {
            Error::InvalidParameter(format!("vertex id {v} not in the explored graph"))
        })?;
        *slot = true;
    }
    Ok(inside)
}

/// Half-edges with exactly one endpoint in `set`, listed from the inside, so
/// each crossing edge appears once and loops never appear.
pub fn boundary(g: &ExploredGraph, set: &[u32]) -> Result<Vec<HalfEdge>> {
    let inside = member_mask(g, set)?;
    let mut out = vec![];
    let members: BTreeSet<u32> = set.iter().copied().collect();
    for &v in &members {
        let edges = g.half_edges(v).ok_or(Error::IncompleteRegion)?;
        for (mi, &u) in edges.iter().enumerate() {
            if !inside[u as usize] {
                out.push((v, mi, u));
            }
        }
    }
    Ok(out)
}

/// `|X⁽ʳ⁾| / |X|` for the `r`-neighborhood of `X`, with the boundary lower
/// bound it implies: every vertex of `X⁽ʳ⁾ \ X` is reached by a path of length
/// at most `r` leaving `X`, and each boundary edge starts at most `r·d^(r−1)`
/// such paths, each of which is counted up to `r` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Growth {
    pub radius: u32,
    pub set_size: usize,
    pub neighborhood_size: usize,
    pub ratio: Ratio<u64>,
    /// `(α − 1)·|X| / (r²·d^(r−1))`; `None` for `r = 0` or on overflow.
    pub boundary_bound: Option<Ratio<u64>>,
}

pub fn neighborhood_growth(g: &ExploredGraph, set: &[u32], r: u32) -> Result<Growth> {
    let mut inside = member_mask(g, set)?;
    let size = inside.iter().filter(|&&b| b).count();
    if size == 0 {
        return Err(Error::InvalidParameter("neighborhood of an empty set".into()));
    }
    let mut frontier: Vec<u32> = (0..g.len() as u32).filter(|&v| inside[v as usize]).collect();
    let mut total = size;
    for _ in 0..r {
        let mut next = vec![];
        for &v in &frontier {
            for &u in g.half_edges(v).ok_or(Error::IncompleteRegion)? {
                if !std::mem::replace(&mut inside[u as usize], true) {
                    next.push(u);
                }
            }
        }
        total += next.len();
        frontier = next;
    }
    let grown = (total - size) as u64;
    let boundary_bound = (r > 0)
        .then(|| {
            let d = g.degree() as u64;
            let denom = (r as u64 * r as u64).checked_mul(d.checked_pow(r - 1)?)?;
            (denom > 0).then(|| Ratio::new(grown, denom))
        })
        .flatten();
    Ok(Growth {
        radius: r,
        set_size: size,
        neighborhood_size: total,
        ratio: Ratio::new(total as u64, size as u64),
        boundary_bound,
    })
}
