use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::exact::{component, exact_walk_distribution_in, tv_distance, tv_to_uniform};
use super::walk::{sample_elements, Emit, Histogram, WalkConfig};
use crate::error::{Error, Result};

/// Minimum expected count per chi-square bin; sparser vertices are pooled.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub bins: usize,
    pub p_value: f64,
}

/// Pearson goodness of fit of observed counts to expected probabilities over
/// bins fixed by vertex order; bins with expected count below
/// [`MIN_EXPECTED`] are pooled into one.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<ChiSquare> {
    let total: u64 = observed.iter().sum();
    if total == 0 || observed.len() != expected.len() {
        return Err(Error::InvalidParameter("chi-square needs matching, nonempty counts".into()));
    }
    let mut bins: Vec<(f64, f64)> = vec![];
    let mut pooled = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(expected) {
        let e = p * total as f64;
        if e < MIN_EXPECTED {
            pooled.0 += o as f64;
            pooled.1 += e;
        } else {
            bins.push((o as f64, e));
        }
    }
    if pooled.1 > 0.0 {
        bins.push(pooled);
    } else if pooled.0 > 0.0 {
        return Ok(ChiSquare {
            statistic: f64::INFINITY,
            dof: bins.len(),
            bins: bins.len() + 1,
            p_value: 0.0,
        });
    }
    let statistic: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = bins.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        1.0 - dist.cdf(statistic)
    };
    Ok(ChiSquare {
        statistic,
        dof,
        bins: bins.len(),
        p_value,
    })
}

/// Empirical and exact mixing of the walk, against both the walk's
/// stationary law (uniform on vertices) and uniform output on group elements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingReport {
    pub steps: u64,
    pub trials: u64,
    pub vertices: usize,
    pub group_order: Option<u64>,
    /// Exact vertex law vs uniform on the component.
    pub exact_tv_vertices: f64,
    /// Empirical vertex frequencies vs uniform on the component.
    pub empirical_tv_vertices: f64,
    /// Empirical vs exact vertex law.
    pub empirical_tv_exact: f64,
    /// Exact law of the emitted element vs uniform on the group.
    pub exact_tv_elements: Option<f64>,
    /// Empirical emitted elements vs uniform on the group.
    pub empirical_tv_elements: Option<f64>,
    pub chi_square: ChiSquare,
}

/// Runs `trials` walks and compares them with the exact law at `cfg.steps`.
pub fn mixing_report(cfg: &WalkConfig, trials: u64) -> Result<MixingReport> {
    let comp = component(&cfg.space, &cfg.start)?;
    let exact = exact_walk_distribution_in(&comp, cfg.steps)?;
    let probs = exact.probabilities();
    let tuple_cfg = WalkConfig {
        emit: Emit::Tuple,
        ..cfg.clone()
    };
    let tuples = sample_elements(&tuple_cfg, trials)?;
    let observed: Vec<u64> = exact
        .vertices
        .iter()
        .map(|t| tuples.counts.get(t.items()).copied().unwrap_or(0))
        .collect();
    if observed.iter().sum::<u64>() != tuples.trials {
        return Err(Error::Hypothesis("walk left the explored component".into()));
    }
    let freq: Vec<f64> = observed.iter().map(|&c| c as f64 / trials.max(1) as f64).collect();
    let size = exact.vertices.len();
    let group_order = cfg.space.group().order();
    let element_emit = match cfg.emit {
        Emit::Tuple => Emit::RandomCoordinate,
        e => e,
    };
    let (exact_tv_elements, empirical_tv_elements) = match group_order {
        Some(order) if order <= usize::MAX as u64 => {
            let law: Vec<f64> = exact.emitted(element_emit).into_values().collect();
            let sampled: Histogram = sample_elements(
                &WalkConfig {
                    emit: element_emit,
                    ..cfg.clone()
                },
                trials,
            )?;
            let emp: Vec<f64> = sampled
                .counts
                .values()
                .map(|&c| c as f64 / trials.max(1) as f64)
                .collect();
            (
                Some(tv_to_uniform(&law, order as usize)?),
                (trials > 0).then(|| tv_to_uniform(&emp, order as usize)).transpose()?,
            )
        }
        _ => (None, None),
    };
    Ok(MixingReport {
        steps: cfg.steps,
        trials,
        vertices: size,
        group_order,
        exact_tv_vertices: tv_to_uniform(&probs, size)?,
        empirical_tv_vertices: tv_to_uniform(&freq, size)?,
        empirical_tv_exact: tv_distance(&freq, &probs),
        exact_tv_elements,
        empirical_tv_elements,
        chi_square: chi_square(&observed, &probs)?,
    })
}
