use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cheeger::{cheeger_exact, CheegerWitness};
use super::regular::RegularGraph;
use super::spectral::{spectral_gap, SpectralGap};
use super::walks::{
    return_probabilities, return_probabilities_in, rho_estimates, walk_radius, ReturnProbability,
    RhoEstimate,
};
use crate::error::{Error, Result};
use crate::graph::{ExploredGraph, GenTuple, PrGraph};

/// A metric that can be requested in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Cheeger,
    Spectral,
    Return,
    Rho,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Cheeger, Metric::Spectral, Metric::Return, Metric::Rho];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Cheeger => "cheeger",
            Metric::Spectral => "spectral",
            Metric::Return => "return",
            Metric::Rho => "rho",
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::Syntax(format!("unknown metric {s:?}")))
    }
}

/// Which metrics to compute and the exploration limits they run under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsRequest {
    pub radius: u32,
    pub cap: usize,
    pub k_max: u32,
    pub metrics: BTreeSet<Metric>,
}

impl Default for MetricsRequest {
    fn default() -> Self {
        MetricsRequest {
            radius: 4,
            cap: 200_000,
            k_max: 8,
            metrics: Metric::ALL.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheegerEntry {
    /// Exact value `|∂X|/|X|` as `p/q`.
    pub value: String,
    pub float: f64,
    pub witness_set: Vec<String>,
}

impl CheegerEntry {
    fn new(w: &CheegerWitness, ball: &ExploredGraph) -> Self {
        CheegerEntry {
            value: w.ratio().to_string(),
            float: w.value(),
            witness_set: w
                .set
                .iter()
                .map(|&v| ball.space().format_vertex(ball.vertex(v)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheegerSummary {
    /// Infimum over all nonempty vertex sets.
    pub unrestricted: CheegerEntry,
    /// Infimum over sets with `|X| ≤ |V|/2`.
    pub half: Option<CheegerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnProbabilityRow {
    pub k: u32,
    pub numerator: String,
    pub denominator: String,
    pub float: String,
}

impl From<&ReturnProbability> for ReturnProbabilityRow {
    fn from(p: &ReturnProbability) -> Self {
        ReturnProbabilityRow {
            k: p.k,
            numerator: p.value.numer().to_string(),
            denominator: p.value.denom().to_string(),
            float: format!("{:.12e}", p.to_f64()),
        }
    }
}

/// Limits every reported number was computed under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub radius: u32,
    pub cap: usize,
    pub k_max: u32,
    pub walk_radius: u32,
    pub explored_vertices: usize,
    pub complete_vertices: usize,
    pub truncated: bool,
    pub finite_component: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    pub group: String,
    pub n: usize,
    pub degree: usize,
    pub root: String,
    pub cheeger: Option<CheegerSummary>,
    pub spectral_gap: Option<SpectralGap>,
    pub return_probs: Option<Vec<ReturnProbabilityRow>>,
    pub rho_estimates: Option<Vec<RhoEstimate>>,
    pub truncation: Truncation,
    /// Why a requested metric is absent, keyed by metric name.
    pub errors: BTreeMap<String, String>,
}

impl MetricsReport {
    /// Every requested metric failed (vacuously false for an empty request).
    pub fn all_failed(&self, req: &MetricsRequest) -> bool {
        !req.metrics.is_empty() && self.errors.len() == req.metrics.len()
    }
}

/// Computes the requested metrics around `root`. Finite-graph metrics are
/// only produced when the ball exhausts the component; otherwise an error
/// entry says so instead of extrapolating.
pub fn metrics_report(space: &PrGraph, root: &GenTuple, req: &MetricsRequest) -> Result<MetricsReport> {
    let ball = space.explore_ball(root, req.radius, req.cap)?;
    let walks = if req.metrics.contains(&Metric::Return) || req.metrics.contains(&Metric::Rho) {
        Some(return_probabilities(space, root, req.k_max, req.cap))
    } else {
        None
    };
    Ok(assemble(&ball, req, walks))
}

/// Like [`metrics_report`] on an already explored graph; return
/// probabilities need the graph to cover radius `⌈k_max/2⌉` untruncated.
pub fn metrics_report_on(ball: &ExploredGraph, req: &MetricsRequest) -> MetricsReport {
    let walks = if req.metrics.contains(&Metric::Return) || req.metrics.contains(&Metric::Rho) {
        Some(return_probabilities_in(ball, req.k_max))
    } else {
        None
    };
    assemble(ball, req, walks)
}

fn assemble(
    ball: &ExploredGraph,
    req: &MetricsRequest,
    walks: Option<Result<Vec<ReturnProbability>>>,
) -> MetricsReport {
    let space = ball.space();
    let finite = ball.all_complete() && !ball.truncated();
    let mut errors = BTreeMap::new();
    let mut fail = |m: Metric, e: String| {
        errors.insert(m.name().to_string(), e);
    };
    let wants = |m: Metric| req.metrics.contains(&m);
    let mut cheeger = None;
    let mut spectral = None;
    if wants(Metric::Cheeger) || wants(Metric::Spectral) {
        let graph = if space.n() < 2 {
            Err("Γ₁ has no edges; metrics need n ≥ 2".to_string())
        } else if finite {
            RegularGraph::from_explored(ball).map_err(|e| e.to_string())
        } else {
            Err(format!(
                "component not exhausted within radius {} and cap {}",
                req.radius, req.cap
            ))
        };
        if wants(Metric::Cheeger) {
            match graph.as_ref().map_err(Clone::clone).and_then(|g| cheeger_exact(g).map_err(|e| e.to_string())) {
                Ok(r) => {
                    cheeger = Some(CheegerSummary {
                        unrestricted: CheegerEntry::new(&r.unrestricted, ball),
                        half: r.half.as_ref().map(|w| CheegerEntry::new(w, ball)),
                    })
                }
                Err(e) => fail(Metric::Cheeger, e),
            }
        }
        if wants(Metric::Spectral) {
            match graph.as_ref().map_err(Clone::clone).and_then(|g| spectral_gap(g).map_err(|e| e.to_string())) {
                Ok(r) => spectral = Some(r),
                Err(e) => fail(Metric::Spectral, e),
            }
        }
    }
    let mut return_probs = None;
    let mut rho = None;
    match walks {
        Some(_) if space.n() < 2 => {
            for m in [Metric::Return, Metric::Rho] {
                if wants(m) {
                    fail(m, "Γ₁ has no edges; metrics need n ≥ 2".into());
                }
            }
        }
        Some(Ok(p)) => {
            if wants(Metric::Return) {
                return_probs = Some(p.iter().map(ReturnProbabilityRow::from).collect());
            }
            if wants(Metric::Rho) {
                rho = Some(rho_estimates(&p));
            }
        }
        Some(Err(e)) => {
            for m in [Metric::Return, Metric::Rho] {
                if wants(m) {
                    fail(m, e.to_string());
                }
            }
        }
        None => {}
    }
    MetricsReport {
        group: space.group().describe(),
        n: space.n(),
        degree: space.degree(),
        root: space.format_vertex(ball.root()),
        cheeger,
        spectral_gap: spectral,
        return_probs,
        rho_estimates: rho,
        truncation: Truncation {
            radius: ball.radius(),
            cap: ball.cap(),
            k_max: req.k_max,
            walk_radius: walk_radius(req.k_max),
            explored_vertices: ball.len(),
            complete_vertices: ball.complete_count(),
            truncated: ball.truncated(),
            finite_component: finite,
        },
        errors,
    }
}

/// Return-probability table as CSV with columns `k,numerator,denominator,float`.
pub fn return_probs_csv(rows: &[ReturnProbabilityRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
