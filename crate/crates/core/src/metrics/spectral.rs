use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::regular::RegularGraph;
use crate::error::{Error, Result};

/// Residual at which power iteration stops.
pub const SPECTRAL_TOLERANCE: f64 = 1e-11;
const MAX_ITERATIONS: usize = 2_000_000;

/// Second-largest eigenvalue of the simple random walk operator and the
/// resulting gap `1 − λ₂`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralGap {
    pub lambda2: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Set for single-vertex graphs, where there is no second eigenvalue and
    /// the gap is reported as 0 by convention.
    pub degenerate: bool,
}

/// Power iteration on the lazy operator `(I + P)/2` restricted to the
/// orthogonal complement of the constant vector. The lazy operator is positive
/// semi-definite, so the dominant eigenvalue there is `(1 + λ₂)/2`.
pub fn spectral_gap(g: &RegularGraph) -> Result<SpectralGap> {
    let n = g.len();
    if n == 0 {
        return Err(Error::InvalidParameter("spectral gap of an empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(SpectralGap {
            lambda2: 1.0,
            gap: 0.0,
            iterations: 0,
            converged: true,
            degenerate: true,
        });
    }
    let d = g.degree() as f64;
    let apply = |x: &[f64], out: &mut [f64]| {
        for (v, o) in out.iter_mut().enumerate() {
            let s: f64 = g.half_edges(v as u32).iter().map(|&u| x[u as usize]).sum();
            *o = 0.5 * (x[v] + s / d);
        }
    };
    let deflate = |x: &mut [f64]| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|v| *v /= norm);
        }
        norm
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    deflate(&mut x);
    let mut y = vec![0.0; n];
    let mut mu = 0.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        apply(&x, &mut y);
        mu = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < SPECTRAL_TOLERANCE {
            converged = true;
            break;
        }
        std::mem::swap(&mut x, &mut y);
        if deflate(&mut x) == 0.0 {
            // the start vector had no component outside the kernel of the
            // lazy operator: every nontrivial eigenvalue of P is −1
            mu = 0.0;
            converged = true;
            break;
        }
    }
    let lambda2 = 2.0 * mu - 1.0;
    Ok(SpectralGap {
        lambda2,
        gap: 1.0 - lambda2,
        iterations,
        converged,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_gap_matches_closed_form() {
        for n in 3u32..9 {
            let targets = (0..n).flat_map(|v| [(v + 1) % n, (v + n - 1) % n]).collect();
            let g = RegularGraph::from_targets(n as usize, 2, targets).unwrap();
            let r = spectral_gap(&g).unwrap();
            let expect = (2.0 * std::f64::consts::PI / n as f64).cos();
            assert!((r.lambda2 - expect).abs() < 1e-9, "n={n}: {r:?}");
            assert!(r.converged);
        }
    }

    #[test]
    fn complete_bipartite_edge() {
        let g = RegularGraph::from_targets(2, 1, vec![1, 0]).unwrap();
        let r = spectral_gap(&g).unwrap();
        assert!((r.lambda2 + 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_vertex_is_degenerate() {
        let g = RegularGraph::from_targets(1, 4, vec![0; 4]).unwrap();
        let r = spectral_gap(&g).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.gap, 0.0);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = RegularGraph::from_targets(2, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(spectral_gap(&g), Err(Error::Disconnected));
    }
}
