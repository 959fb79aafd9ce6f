use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GenTuple, PrGraph};
use crate::group::Quotient;
use crate::metrics::return_probabilities;

/// The graph homomorphism `π : Γₙ(G) → Γₙ(H)` induced by a quotient map,
/// applied componentwise.
#[derive(Clone, Debug)]
pub struct LiftMap {
    quotient: Quotient,
    source: PrGraph,
    target: PrGraph,
}

impl LiftMap {
    pub fn new(quotient: Quotient, n: usize) -> Result<Self> {
        let source = PrGraph::new(quotient.source.clone(), n)?;
        let target = PrGraph::new(quotient.target.clone(), n)?;
        Ok(LiftMap {
            quotient,
            source,
            target,
        })
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn source(&self) -> &PrGraph {
        &self.source
    }

    pub fn target(&self) -> &PrGraph {
        &self.target
    }

    /// Componentwise projection; the image generates because π is onto.
    pub fn lift_vertex(&self, t: &GenTuple) -> Result<GenTuple> {
        let items = self.quotient.project_tuple(t.items())?;
        self.target.vertex(items).map_err(|e| match e {
            Error::NotGenerating => Error::Hypothesis(
                "projection of a generating tuple does not generate the quotient".into(),
            ),
            e => e,
        })
    }
}

/// Checks `π(m·T) = m·π(T)` for every move `m`. Both edge lists are indexed
/// by the same moves, so equivariance is exactly the edge bijection between
/// the neighborhoods of `T` and `π(T)`.
pub fn verify_local_isomorphism(lift: &LiftMap, t: &GenTuple) -> Result<bool> {
    let down = lift.lift_vertex(t)?;
    for &m in lift.source.moves() {
        let up = lift.lift_vertex(&lift.source.apply_move(t, m)?)?;
        if up != lift.target.apply_move(&down, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalIsoReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

pub fn verify_local_isomorphism_on(lift: &LiftMap, vertices: &[GenTuple]) -> Result<LocalIsoReport> {
    let verdicts: Vec<bool> = vertices
        .par_iter()
        .map(|t| verify_local_isomorphism(lift, t))
        .collect::<Result<_>>()?;
    let failures: Vec<String> = vertices
        .iter()
        .zip(&verdicts)
        .filter(|(_, ok)| !**ok)
        .map(|(t, _)| lift.source.format_vertex(t))
        .collect();
    Ok(LocalIsoReport {
        checked: vertices.len(),
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationRow {
    pub k: u32,
    /// `p⁽ᵏ⁾(S, S)` in Γₙ(G).
    pub upstairs: String,
    /// `p⁽ᵏ⁾(π(S), π(S))` in Γₙ(H).
    pub downstairs: String,
    pub holds: bool,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub source: String,
    pub target: String,
    pub root: String,
    pub k_max: u32,
    pub rows: Vec<DominationRow>,
    pub all_hold: bool,
    pub any_strict: bool,
}

/// Closed walks at `S` project to closed walks at `π(S)` injectively (a walk
/// is determined by its move sequence), so `p⁽ᵏ⁾` can only grow downstairs.
/// Compared exactly at every even `k ≤ k_max`.
pub fn verify_return_domination(
    lift: &LiftMap,
    s: &GenTuple,
    k_max: u32,
    cap: usize,
) -> Result<DominationReport> {
    let down = lift.lift_vertex(s)?;
    let up_p = return_probabilities(&lift.source, s, k_max, cap)?;
    let down_p = return_probabilities(&lift.target, &down, k_max, cap)?;
    let rows: Vec<DominationRow> = up_p
        .iter()
        .zip(&down_p)
        .filter(|(u, _)| u.k % 2 == 0)
        .map(|(u, d)| DominationRow {
            k: u.k,
            upstairs: u.value.to_string(),
            downstairs: d.value.to_string(),
            holds: u.value <= d.value,
            strict: u.value < d.value,
        })
        .collect();
    Ok(DominationReport {
        source: lift.source.group().describe(),
        target: lift.target.group().describe(),
        root: lift.source.format_vertex(s),
        k_max,
        all_hold: rows.iter().all(|r| r.holds),
        any_strict: rows.iter().any(|r| r.strict),
        rows,
    })
}
