use num::rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ExploredGraph, GenTuple, PrGraph};

/// Exact `p⁽ᵏ⁾(v, v) = walks / dᵏ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnProbability {
    pub k: u32,
    pub walks: u128,
    pub degree: u64,
    #[serde(skip)]
    pub value: Ratio<u128>,
}

impl ReturnProbability {
    pub fn to_f64(&self) -> f64 {
        if self.walks == 0 {
            return 0.0;
        }
        // ln avoids overflowing dᵏ in f64 for large k
        ((self.walks as f64).ln() - self.k as f64 * (self.degree as f64).ln()).exp()
    }
}

/// `p⁽ᵏ⁾(v,v)^(1/k)` for an even `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoEstimate {
    pub k: u32,
    pub estimate: f64,
}

/// Radius of the ball that determines all closed walks of length ≤ `k`.
pub fn walk_radius(k: u32) -> u32 {
    k.div_ceil(2)
}

/// Explores the ball needed for closed walks up to length `k_max`.
pub fn walk_ball(space: &PrGraph, root: &GenTuple, k_max: u32, cap: usize) -> Result<ExploredGraph> {
    let ball = space.explore_ball(root, walk_radius(k_max), cap)?;
    if ball.truncated() {
        return Err(Error::CapExceeded { cap });
    }
    Ok(ball)
}

/// Number of walks of length `0..=k_max` from the root back to itself.
///
/// Complete vertices pull mass over their own half-edges; incomplete frontier
/// vertices receive mass pushed from complete neighbours. A closed walk that
/// would need an edge between two frontier vertices is longer than `k_max`, so
/// the root column is exact.
pub fn closed_walk_counts(ball: &ExploredGraph, k_max: u32) -> Result<Vec<u128>> {
    let needed = walk_radius(k_max);
    if ball.radius() < needed || ball.truncated() {
        return Err(Error::InvalidParameter(format!(
            "closed walks of length {k_max} need an untruncated ball of radius {needed}"
        )));
    }
    let n = ball.len();
    let mut mass = vec![0u128; n];
    mass[0] = 1;
    let mut counts = vec![1u128];
    let frontier_in: Vec<Vec<u32>> = frontier_sources(ball);
    for _ in 0..k_max {
        let next: Result<Vec<u128>> = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                let sources: &[u32] = match ball.half_edges(v) {
                    Some(edges) => edges,
                    None => &frontier_in[v as usize],
                };
                sources.iter().try_fold(0u128, |acc, &u| {
                    acc.checked_add(mass[u as usize])
                        .ok_or(Error::Overflow("closed walk count"))
                })
            })
            .collect();
        mass = next?;
        counts.push(mass[0]);
    }
    Ok(counts)
}

/// For each incomplete vertex, the complete neighbours pointing at it, one
/// entry per half-edge.
fn frontier_sources(ball: &ExploredGraph) -> Vec<Vec<u32>> {
    let mut sources = vec![vec![]; ball.len()];
    for v in 0..ball.len() as u32 {
        if let Some(edges) = ball.half_edges(v) {
            for &u in edges {
                if !ball.is_complete(u) {
                    sources[u as usize].push(v);
                }
            }
        }
    }
    sources
}

/// Exact mass of the walk from the root over every explored vertex at each
/// step; requires a fully explored (finite) component, where mass is
/// conserved.
pub fn walk_distribution(comp: &ExploredGraph, steps: u32) -> Result<Vec<Vec<u128>>> {
    if !comp.all_complete() {
        return Err(Error::IncompleteRegion);
    }
    let n = comp.len();
    let mut mass = vec![0u128; n];
    mass[0] = 1;
    let mut out = vec![mass.clone()];
    for _ in 0..steps {
        let next: Result<Vec<u128>> = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                comp.half_edges(v)
                    .expect("complete")
                    .iter()
                    .try_fold(0u128, |acc, &u| {
                        acc.checked_add(mass[u as usize])
                            .ok_or(Error::Overflow("walk count"))
                    })
            })
            .collect();
        mass = next?;
        out.push(mass.clone());
    }
    Ok(out)
}

fn to_probabilities(counts: &[u128], degree: u64) -> Result<Vec<ReturnProbability>> {
    let mut denom = 1u128;
    counts
        .iter()
        .enumerate()
        .map(|(k, &walks)| {
            if k > 0 {
                denom = denom
                    .checked_mul(degree as u128)
                    .ok_or(Error::Overflow("walk denominator"))?;
            }
            let value = if denom == 0 {
                // degree-0 graphs: the walk stays put
                Ratio::from_integer(1)
            } else {
                Ratio::new(walks, denom)
            };
            Ok(ReturnProbability {
                k: k as u32,
                walks,
                degree,
                value,
            })
        })
        .collect()
}

/// `p⁽ᵏ⁾(root, root)` for every `k ≤ k_max`.
pub fn return_probabilities(
    space: &PrGraph,
    root: &GenTuple,
    k_max: u32,
    cap: usize,
) -> Result<Vec<ReturnProbability>> {
    let ball = walk_ball(space, root, k_max, cap)?;
    return_probabilities_in(&ball, k_max)
}

pub fn return_probabilities_in(ball: &ExploredGraph, k_max: u32) -> Result<Vec<ReturnProbability>> {
    let counts = closed_walk_counts(ball, k_max)?;
    to_probabilities(&counts, ball.degree() as u64)
}

pub fn return_probability(space: &PrGraph, root: &GenTuple, k: u32, cap: usize) -> Result<Ratio<u128>> {
    let probs = return_probabilities(space, root, k, cap)?;
    Ok(probs[k as usize].value)
}

/// `p⁽ᵏ⁾^(1/k)` for even `2 ≤ k ≤ k_max`.
pub fn rho_estimates(probs: &[ReturnProbability]) -> Vec<RhoEstimate> {
    probs
        .iter()
        .filter(|p| p.k >= 2 && p.k % 2 == 0)
        .map(|p| RhoEstimate {
            k: p.k,
            estimate: if p.walks == 0 {
                0.0
            } else {
                ((p.walks as f64).ln() / p.k as f64 - (p.degree as f64).ln()).exp()
            },
        })
        .collect()
}

pub fn rho_estimate(space: &PrGraph, root: &GenTuple, k_max: u32, cap: usize) -> Result<Vec<RhoEstimate>> {
    Ok(rho_estimates(&return_probabilities(space, root, k_max, cap)?))
}
