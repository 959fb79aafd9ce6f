use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::rational::Ratio;
use num::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ExploredGraph, GenTuple, PrGraph};
use crate::group::Element;

use super::walk::Emit;

/// Largest component for which exact walk laws are computed.
pub const EXACT_VERTEX_CAP: usize = 50_000;

/// Law of the walk after `t` steps: `weights[v] / dᵗ` on the vertices of the
/// start's component, in exploration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution {
    pub steps: u64,
    pub vertices: Vec<GenTuple>,
    pub weights: Vec<BigUint>,
    pub denominator: BigUint,
}

impl ExactDistribution {
    pub fn probability(&self, v: usize) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(self.weights[v].clone()), BigInt::from(self.denominator.clone()))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.weights.len())
            .map(|v| self.probability(v).to_f64().unwrap_or(0.0))
            .collect()
    }

    /// Total mass, which is exactly one.
    pub fn total(&self) -> Ratio<BigInt> {
        let sum: BigUint = self.weights.iter().sum();
        Ratio::new(BigInt::from(sum), BigInt::from(self.denominator.clone()))
    }

    /// Push-forward through an emission rule (random coordinates weighted
    /// `1/n` each), as floating-point probabilities.
    pub fn emitted(&self, emit: Emit) -> BTreeMap<Vec<Element>, f64> {
        let mut out: BTreeMap<Vec<Element>, f64> = BTreeMap::new();
        for (t, p) in self.vertices.iter().zip(self.probabilities()) {
            match emit {
                Emit::Tuple => *out.entry(t.items().to_vec()).or_default() += p,
                Emit::FixedCoordinate(i) => *out.entry(vec![t.items()[i - 1].clone()]).or_default() += p,
                Emit::RandomCoordinate => {
                    let share = p / t.len() as f64;
                    for x in t.items() {
                        *out.entry(vec![x.clone()]).or_default() += share;
                    }
                }
            }
        }
        out
    }
}

/// Explores the start's component (at most [`EXACT_VERTEX_CAP`] vertices).
pub fn component(space: &PrGraph, start: &GenTuple) -> Result<ExploredGraph> {
    space.explore_component(start, EXACT_VERTEX_CAP)
}

/// Exact law after `t` steps by repeated sparse transition application.
pub fn exact_walk_distribution(space: &PrGraph, start: &GenTuple, t: u64) -> Result<ExactDistribution> {
    let comp = component(space, start)?;
    exact_walk_distribution_in(&comp, t)
}

pub fn exact_walk_distribution_in(comp: &ExploredGraph, t: u64) -> Result<ExactDistribution> {
    if !comp.all_complete() {
        return Err(Error::IncompleteRegion);
    }
    let n = comp.len();
    let d = comp.degree();
    let mut weights = vec![BigUint::zero(); n];
    weights[0] = BigUint::one();
    // degree-0 graphs never move
    let steps = if d == 0 { 0 } else { t };
    for _ in 0..steps {
        weights = (0..n as u32)
            .into_par_iter()
            .map(|v| {
                comp.half_edges(v)
                    .expect("complete")
                    .iter()
                    .map(|&u| &weights[u as usize])
                    .sum()
            })
            .collect();
    }
    Ok(ExactDistribution {
        steps: t,
        vertices: comp.vertices().to_vec(),
        weights,
        denominator: BigUint::from(d.max(1)).pow(steps as u32),
    })
}

/// `½·Σ|pᵢ − qᵢ|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions over different domains");
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Distance from the uniform law on a domain of `size` points; `p` lists the
/// probabilities of the points that carry mass (missing points are zero).
pub fn tv_to_uniform(p: &[f64], size: usize) -> Result<f64> {
    if size == 0 || p.len() > size {
        return Err(Error::InvalidParameter("uniform law needs a nonempty domain covering the support".into()));
    }
    let u = 1.0 / size as f64;
    let listed: f64 = p.iter().map(|x| (x - u).abs()).sum();
    Ok(0.5 * (listed + (size - p.len()) as f64 * u))
}
