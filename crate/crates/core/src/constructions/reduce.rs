use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GenTuple, NielsenMove, PrGraph};
use crate::group::{Element, Quotient};

/// Applies `path` to `start` move by move.
pub fn replay(space: &PrGraph, start: &GenTuple, path: &[NielsenMove]) -> Result<GenTuple> {
    path.iter().try_fold(start.clone(), |t, &m| space.apply_move(&t, m))
}

/// Shortest move sequence (restricted to `allowed`) from `start` to a tuple
/// satisfying `done`, by BFS over at most `cap` states and `max_depth` moves.
fn bfs_path(
    space: &PrGraph,
    start: &GenTuple,
    allowed: &[NielsenMove],
    max_depth: u32,
    cap: usize,
    done: impl Fn(&GenTuple) -> Result<bool>,
) -> Result<Option<Vec<NielsenMove>>> {
    if done(start)? {
        return Ok(Some(vec![]));
    }
    let mut parent: HashMap<GenTuple, Option<(GenTuple, NielsenMove)>> = HashMap::from([(start.clone(), None)]);
    let mut queue = VecDeque::from([(start.clone(), 0u32)]);
    while let Some((t, depth)) = queue.pop_front() {
        if depth == max_depth {
            continue;
        }
        for &m in allowed {
            let u = space.apply_move(&t, m)?;
            if parent.contains_key(&u) {
                continue;
            }
            parent.insert(u.clone(), Some((t.clone(), m)));
            if done(&u)? {
                let mut path = vec![];
                let mut at = u;
                while let Some(Some((prev, m))) = parent.get(&at) {
                    path.push(*m);
                    at = prev.clone();
                }
                path.reverse();
                return Ok(Some(path));
            }
            if parent.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            queue.push_back((u, depth + 1));
        }
    }
    Ok(None)
}

/// A Nielsen path bringing `(s₁, …, sₙ₊₂)` to `(t₁, …, tₙ, h₁, h₂)` with both
/// `hᵢ` in the kernel `H` and not both trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Found in Γₙ₊₂(G/H) and replayed upstairs.
    pub quotient_path: Vec<NielsenMove>,
    /// Moves on the last two coordinates making the tail nontrivial, used
    /// only when the replayed tail is `(1, 1)`.
    pub extension: Vec<NielsenMove>,
    pub reduced: GenTuple,
    pub index: u64,
}

impl Reduction {
    pub fn path(&self) -> Vec<NielsenMove> {
        self.quotient_path.iter().chain(&self.extension).copied().collect()
    }
}

/// Reduces an `(n+2)`-tuple modulo a normal subgroup `H` of finite index with
/// `2ⁿ ≥ [G:H]`: BFS in the finite graph Γₙ₊₂(G/H) finds moves killing the
/// last two projected coordinates, which are then replayed in Γₙ₊₂(G).
pub fn reduce_redundant_tuple(quotient: &Quotient, t: &GenTuple, cap: usize) -> Result<Reduction> {
    let len = t.len();
    if len < 3 {
        return Err(Error::InvalidParameter("reduction needs a tuple of length at least 3".into()));
    }
    let n = len - 2;
    let index = quotient
        .index()
        .ok_or_else(|| Error::Unsupported("reduction modulo a subgroup of infinite index".into()))?;
    if n < 64 && (1u64 << n) < index {
        return Err(Error::Hypothesis(format!(
            "n = {n} is below log₂[G:H] = log₂ {index}"
        )));
    }
    let up = PrGraph::new(quotient.source.clone(), len)?;
    let down = PrGraph::new(quotient.target.clone(), len)?;
    let t = up.vertex(t.items().to_vec())?;
    let start = down.vertex(quotient.project_tuple(t.items())?)?;
    let q_id = quotient.target.identity();
    let tail_trivial = |u: &GenTuple| Ok(u.items()[n..].iter().all(|x| *x == q_id));
    let quotient_path = bfs_path(&down, &start, down.moves(), u32::MAX, cap, tail_trivial)?
        .ok_or_else(|| Error::Hypothesis("no Nielsen path kills the last two coordinates".into()))?;
    let lifted = replay(&up, &t, &quotient_path)?;
    let g_id = quotient.source.identity();
    let in_kernel = |x: &Element| Ok::<_, Error>(quotient.project(x)? == q_id);
    for x in &lifted.items()[n..] {
        if !in_kernel(x)? {
            return Err(Error::Hypothesis("replayed tail left the kernel".into()));
        }
    }
    let mut extension = vec![];
    let mut reduced = lifted.clone();
    if lifted.items()[n..].iter().all(|x| *x == g_id) {
        let allowed: Vec<NielsenMove> = up.moves().iter().copied().filter(|m| m.j >= n).collect();
        let depth = 2 * index.min(u32::MAX as u64 / 2) as u32 + 2;
        let target = |u: &GenTuple| -> Result<bool> {
            let tail = &u.items()[n..];
            Ok(tail.iter().any(|x| *x != g_id) && in_kernel(&tail[0])? && in_kernel(&tail[1])?)
        };
        extension = bfs_path(&up, &lifted, &allowed, depth, cap, target)?.ok_or_else(|| {
            Error::Hypothesis("no short extension makes the tail nontrivial".into())
        })?;
        reduced = replay(&up, &lifted, &extension)?;
    }
    Ok(Reduction {
        quotient_path,
        extension,
        reduced,
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub input: String,
    pub reduced: String,
    pub path: Vec<String>,
    pub quotient_path_len: usize,
    pub extension_len: usize,
    pub index: u64,
    pub extension_within_index: bool,
    pub replay_matches: bool,
    pub tail_in_kernel: bool,
    pub passed: bool,
}

/// Runs the reduction and independently re-checks its output.
pub fn reduction_report(quotient: &Quotient, t: &GenTuple, cap: usize) -> Result<ReductionReport> {
    let space = PrGraph::new(quotient.source.clone(), t.len())?;
    let r = reduce_redundant_tuple(quotient, t, cap)?;
    let path = r.path();
    let replay_matches = replay(&space, t, &path)? == r.reduced;
    let q_id = quotient.target.identity();
    let tail = &r.reduced.items()[t.len() - 2..];
    let tail_in_kernel = tail
        .iter()
        .map(|x| quotient.project(x).map(|p| p == q_id))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b)
        && tail.iter().any(|x| *x != quotient.source.identity());
    let extension_within_index = r.extension.len() as u64 <= r.index;
    Ok(ReductionReport {
        input: space.format_vertex(t),
        reduced: space.format_vertex(&r.reduced),
        path: path.iter().map(ToString::to_string).collect(),
        quotient_path_len: r.quotient_path.len(),
        extension_len: r.extension.len(),
        index: r.index,
        extension_within_index,
        replay_matches,
        tail_in_kernel,
        passed: replay_matches && tail_in_kernel,
    })
}
