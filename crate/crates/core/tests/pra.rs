//! Sampler checks: move uniformity, reproducibility, and agreement of the
//! exact walk law with a dense matrix-power oracle.

use nalgebra::{DMatrix, DVector};
use prgraph::pra::*;
use prgraph::*;

fn config(group: &str, steps: u64, seed: u64, emit: Emit) -> WalkConfig {
    let space = PrGraph::new(parse_group_spec(group).unwrap(), 2).unwrap();
    let start = space.default_root().unwrap();
    WalkConfig::new(space, start, steps, seed, emit).unwrap()
}

#[test]
fn move_choices_are_uniform_within_four_sigma() {
    let degree = 8;
    let steps = 1_000_000u64;
    let mut stream = MoveStream::new(2024, 0, degree);
    let mut counts = vec![0u64; degree];
    for _ in 0..steps {
        counts[stream.next_move()] += 1;
    }
    let p = 1.0 / degree as f64;
    let mean = steps as f64 * p;
    let sigma = (steps as f64 * p * (1.0 - p)).sqrt();
    for c in counts {
        assert!((c as f64 - mean).abs() <= 4.0 * sigma, "{c} vs {mean}±{sigma}");
    }
}

#[test]
fn long_walks_reach_every_element() {
    let cfg = config("Zmod:5", 50, 9, Emit::RandomCoordinate);
    let h = sample_elements(&cfg, 2000).unwrap();
    assert_eq!(h.support(), 5);
    assert_eq!(h.trials, 2000);
}

#[test]
fn identical_seeds_give_identical_output_on_any_pool() {
    let cfg = config("Sym:3", 25, 77, Emit::Tuple);
    let reference = sample_elements(&cfg, 500).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        assert_eq!(pool.install(|| sample_elements(&cfg, 500).unwrap()), reference);
    }
    let csv = histogram_csv(&cfg.space, &reference).unwrap();
    assert_eq!(csv, histogram_csv(&cfg.space, &sample_elements(&cfg, 500).unwrap()).unwrap());
    assert!(csv.starts_with("value,count\n"));
}

/// Law after `t` steps as `e₀ᵀ Pᵗ` with a dense transition matrix.
fn matrix_power_law(comp: &ExploredGraph, t: u64) -> Vec<f64> {
    let n = comp.len();
    let d = comp.degree() as f64;
    let mut p = DMatrix::<f64>::zeros(n, n);
    for v in 0..n as u32 {
        for &u in comp.half_edges(v).unwrap() {
            p[(v as usize, u as usize)] += 1.0 / d;
        }
    }
    let mut x = DVector::<f64>::zeros(n);
    x[0] = 1.0;
    let pt = p.transpose();
    for _ in 0..t {
        x = &pt * x;
    }
    x.iter().copied().collect()
}

#[test]
fn exact_law_matches_matrix_powers() {
    for (group, t) in [("Zmod:3", 7), ("Zmod:5", 20), ("Sym:3", 12)] {
        let cfg = config(group, t, 0, Emit::Tuple);
        let comp = component(&cfg.space, &cfg.start).unwrap();
        let exact = exact_walk_distribution_in(&comp, t).unwrap();
        assert!(num::One::is_one(&exact.total()));
        let oracle = matrix_power_law(&comp, t);
        assert!(tv_distance(&exact.probabilities(), &oracle) < 1e-12, "{group}");
    }
}

#[test]
fn distance_to_stationarity_shrinks() {
    let cfg = config("Zmod:3", 0, 0, Emit::Tuple);
    let comp = component(&cfg.space, &cfg.start).unwrap();
    let tvs: Vec<f64> = (0..=40)
        .step_by(2)
        .map(|t| {
            let p = exact_walk_distribution_in(&comp, t).unwrap().probabilities();
            tv_to_uniform(&p, comp.len()).unwrap()
        })
        .collect();
    assert!((tvs[0] - (1.0 - 1.0 / 8.0)).abs() < 1e-15);
    assert!(tvs.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    assert!(*tvs.last().unwrap() < 1e-6);
}

#[test]
fn sampled_walks_fit_the_exact_law() {
    let cfg = config("Zmod:3", 9, 5, Emit::RandomCoordinate);
    let r = mixing_report(&cfg, 5000).unwrap();
    assert!(r.chi_square.p_value > 0.001, "{r:?}");
    assert_eq!(r.vertices, 8);
    assert_eq!(r.group_order, Some(3));
    assert!(r.exact_tv_elements.unwrap() < 0.2);
}
