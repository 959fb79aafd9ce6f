//! Metrics checked against independent oracles: plain subset enumeration,
//! randomized subset search, dense eigen-decomposition and explicit walk
//! enumeration over tuples.

use nalgebra::DMatrix;
use num::rational::Ratio;
use prgraph::metrics::*;
use prgraph::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn component(group: Group, n: usize) -> (PrGraph, ExploredGraph) {
    let space = PrGraph::new(group, n).unwrap();
    let root = space.default_root().unwrap();
    let comp = space.explore_component(&root, 10_000).unwrap();
    (space, comp)
}

fn finite_graphs() -> Vec<(String, RegularGraph)> {
    let mut out = vec![];
    for (g, n) in [
        (Group::cyclic(2).unwrap(), 2),
        (Group::cyclic(3).unwrap(), 2),
        (Group::cyclic(4).unwrap(), 2),
        (Group::cyclic(5).unwrap(), 2),
        (Group::symmetric(3).unwrap(), 2),
    ] {
        let name = format!("Gamma_{n}({})", g.describe());
        let (_, comp) = component(g, n);
        out.push((name, RegularGraph::from_explored(&comp).unwrap()));
    }
    for g in [
        Group::quaternion(),
        Group::dihedral(4).unwrap(),
        Group::symmetric(3).unwrap(),
        Group::cyclic(10).unwrap(),
    ] {
        let gens = g.standard_generators();
        let name = format!("Cay({})", g.describe());
        out.push((name, RegularGraph::cayley(&g, &gens).unwrap().0));
    }
    out
}

/// Direct scan: boundary of each subset counted from the multiplicity matrix.
fn brute_cheeger(g: &RegularGraph, half_only: bool) -> Option<Ratio<u64>> {
    let n = g.len();
    let m = g.multiplicities();
    let mut best: Option<Ratio<u64>> = None;
    for mask in 1u64..1 << n {
        let size = mask.count_ones() as u64;
        if half_only && 2 * size > n as u64 {
            continue;
        }
        let mut b = 0u64;
        for v in 0..n {
            for u in 0..n {
                if mask >> v & 1 == 1 && mask >> u & 1 == 0 {
                    b += m[v][u] as u64;
                }
            }
        }
        let r = Ratio::new(b, size);
        if best.is_none_or(|x| r < x) {
            best = Some(r);
        }
    }
    best
}

/// Randomized search: random subsets plus single-vertex flips; an upper
/// envelope of the true minimum.
fn random_search(g: &RegularGraph, half_only: bool, seed: u64) -> Option<Ratio<u64>> {
    let n = g.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let admissible = |set: &[u32]| !set.is_empty() && (!half_only || 2 * set.len() <= n);
    let score = |set: &[u32]| Ratio::new(g.boundary_size(set) as u64, set.len() as u64);
    let mut best: Option<Ratio<u64>> = None;
    for _ in 0..4000 {
        let p: f64 = rng.random();
        let mut set: Vec<u32> = (0..n as u32).filter(|_| rng.random_bool(p)).collect();
        for _ in 0..n {
            if admissible(&set) {
                let s = score(&set);
                if best.is_none_or(|b| s < b) {
                    best = Some(s);
                }
            }
            let v = rng.random_range(0..n as u32);
            match set.iter().position(|&x| x == v) {
                Some(i) => {
                    set.remove(i);
                }
                None => set.push(v),
            }
        }
    }
    best
}

#[test]
fn cheeger_matches_plain_enumeration() {
    for (name, g) in finite_graphs() {
        if g.len() > 18 {
            continue;
        }
        let r = cheeger_exact(&g).unwrap();
        assert_eq!(Some(r.unrestricted.ratio()), brute_cheeger(&g, false), "{name}");
        assert_eq!(r.half.as_ref().map(|h| h.ratio()), brute_cheeger(&g, true), "{name}");
    }
}

#[test]
fn cheeger_agrees_with_randomized_search_on_small_graphs() {
    for (seed, (name, g)) in finite_graphs().into_iter().enumerate() {
        if g.len() > 12 {
            continue;
        }
        let r = cheeger_exact(&g).unwrap();
        for (half, exact) in [(false, Some(r.unrestricted.ratio())), (true, r.half.map(|h| h.ratio()))] {
            let found = random_search(&g, half, seed as u64);
            assert_eq!(found, exact, "{name} half={half}");
        }
    }
}

#[test]
fn cheeger_witness_attains_value() {
    for (name, g) in finite_graphs() {
        let r = cheeger_exact(&g).unwrap();
        for w in std::iter::once(&r.unrestricted).chain(r.half.as_ref()) {
            assert_eq!(g.boundary_size(&w.set) as u64, w.boundary, "{name}");
            assert_eq!(w.set.len() as u64, w.size, "{name}");
        }
    }
}

#[test]
fn cheeger_of_cyclic_two_component() {
    // three vertices; each of (1,0), (0,1) has 4 loops and 4 half-edges to (1,1)
    let (space, comp) = component(Group::cyclic(2).unwrap(), 2);
    let g = RegularGraph::from_explored(&comp).unwrap();
    let m = g.multiplicities();
    let a = comp.id_of(&space.parse_vertex("1;0").unwrap()).unwrap() as usize;
    let b = comp.id_of(&space.parse_vertex("0;1").unwrap()).unwrap() as usize;
    let c = comp.id_of(&space.parse_vertex("1;1").unwrap()).unwrap() as usize;
    assert_eq!((m[a][a], m[a][c], m[b][b], m[b][c], m[c][a], m[c][b]), (4, 4, 4, 4, 4, 4));
    let r = cheeger_exact(&g).unwrap();
    assert_eq!(r.unrestricted.ratio(), Ratio::from_integer(0));
    assert_eq!(r.half.unwrap().ratio(), Ratio::from_integer(4));
}

#[test]
fn handcrafted_disconnected_graphs() {
    // isolated vertex with two loops next to a doubled edge
    let g = RegularGraph::from_targets(3, 2, vec![0, 0, 2, 2, 1, 1]).unwrap();
    let r = cheeger_exact(&g).unwrap();
    assert_eq!(r.unrestricted.ratio(), Ratio::from_integer(0));
    assert_eq!(r.unrestricted.set, vec![0]);
    assert_eq!(r.half.unwrap().ratio(), Ratio::from_integer(0));
    // two disjoint edges: each edge is a component with empty boundary
    let g = RegularGraph::from_targets(4, 1, vec![1, 0, 3, 2]).unwrap();
    let r = cheeger_exact(&g).unwrap();
    assert_eq!(r.unrestricted.ratio(), Ratio::from_integer(0));
    assert_eq!(r.half.unwrap().set, vec![0, 1]);
}

fn dense_lambda2(g: &RegularGraph) -> f64 {
    let n = g.len();
    let d = g.degree() as f64;
    let m = g.multiplicities();
    let p = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64 / d);
    let mut eig: Vec<f64> = p.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig[1]
}

#[test]
fn spectral_gap_matches_dense_eigensolver() {
    for (name, g) in finite_graphs() {
        let r = spectral_gap(&g).unwrap();
        assert!(r.converged, "{name}");
        let expect = dense_lambda2(&g);
        assert!((r.lambda2 - expect).abs() < 1e-9, "{name}: {} vs {expect}", r.lambda2);
        assert!(r.gap > 0.0 && r.gap <= 2.0, "{name}");
    }
}

#[test]
fn spectral_gap_of_cyclic_two_by_hand() {
    // P = [[1/2, 0, 1/2], [0, 1/2, 1/2], [1/2, 1/2, 0]] has spectrum {1, 1/2, −1/2}
    let (_, comp) = component(Group::cyclic(2).unwrap(), 2);
    let r = spectral_gap(&RegularGraph::from_explored(&comp).unwrap()).unwrap();
    assert!((r.gap - 0.5).abs() < 1e-9);
}

#[test]
fn cheeger_inequalities_on_explored_components() {
    for (name, g) in finite_graphs() {
        let lambda = spectral_gap(&g).unwrap().gap;
        let h = cheeger_exact(&g).unwrap().half.unwrap().value() / g.degree() as f64;
        assert!(lambda / 2.0 <= h + 1e-12, "{name}: λ={lambda} h={h}");
        assert!(h <= (2.0 * lambda).sqrt() + 1e-12, "{name}: λ={lambda} h={h}");
    }
}

/// Closed walks of length `k` counted by enumerating every move sequence on
/// the tuples themselves.
fn enumerate_closed_walks(space: &PrGraph, root: &GenTuple, k: u32) -> u128 {
    fn go(space: &PrGraph, root: &GenTuple, at: &GenTuple, left: u32) -> u128 {
        if left == 0 {
            return (at == root) as u128;
        }
        space
            .moves()
            .iter()
            .map(|&m| go(space, root, &space.apply_move(at, m).unwrap(), left - 1))
            .sum()
    }
    go(space, root, root, k)
}

#[test]
fn return_probabilities_match_walk_enumeration() {
    let cases = [
        (Group::cyclic(2).unwrap(), "1;0", 6),
        (Group::cyclic(2).unwrap(), "1;1", 6),
        (Group::cyclic(3).unwrap(), "1;2", 6),
        (Group::free_abelian(1).unwrap(), "1;0", 5),
        (Group::free_abelian(1).unwrap(), "2;3", 5),
    ];
    for (g, root, k_max) in cases {
        let space = PrGraph::new(g, 2).unwrap();
        let root = space.parse_vertex(root).unwrap();
        let probs = return_probabilities(&space, &root, k_max, 100_000).unwrap();
        for p in &probs {
            let walks = enumerate_closed_walks(&space, &root, p.k);
            assert_eq!(p.walks, walks, "k={}", p.k);
            assert_eq!(p.value, Ratio::new(walks, 8u128.pow(p.k)));
        }
    }
}

#[test]
fn first_return_probabilities_in_gamma_two_of_integers() {
    let space = PrGraph::new(Group::free_abelian(1).unwrap(), 2).unwrap();
    let root = space.parse_vertex("1;0").unwrap();
    assert_eq!(return_probability(&space, &root, 0, 100).unwrap(), Ratio::from_integer(1));
    assert_eq!(return_probability(&space, &root, 1, 100).unwrap(), Ratio::new(1, 2));
}

#[test]
fn even_time_return_probabilities_are_log_convex() {
    for (g, root) in [
        (Group::free_abelian(1).unwrap(), "1;0"),
        (Group::free_abelian(2).unwrap(), "1,0;0,1"),
        (Group::cyclic(5).unwrap(), "1;0"),
    ] {
        let space = PrGraph::new(g, 2).unwrap();
        let root = space.parse_vertex(root).unwrap();
        let p = return_probabilities(&space, &root, 12, 1_000_000).unwrap();
        for k in [2usize, 4, 6] {
            let pk = p[k].value;
            assert!(p[2 * k].value >= pk * pk, "k={k}");
        }
    }
}

#[test]
fn walk_mass_is_conserved_exactly() {
    for (g, n) in [(Group::cyclic(3).unwrap(), 2), (Group::symmetric(3).unwrap(), 2), (Group::cyclic(2).unwrap(), 3)] {
        let (space, comp) = component(g, n);
        let d = space.degree() as u128;
        for (k, row) in walk_distribution(&comp, 12).unwrap().iter().enumerate() {
            assert_eq!(row.iter().sum::<u128>(), d.pow(k as u32));
        }
    }
}

#[test]
fn finite_graph_rho_estimates_climb_towards_one() {
    let space = PrGraph::new(Group::cyclic(3).unwrap(), 2).unwrap();
    let root = space.default_root().unwrap();
    let rho = rho_estimate(&space, &root, 40, 1000).unwrap();
    assert_eq!(rho.iter().map(|r| r.k).collect::<Vec<_>>(), (1..=20).map(|k| 2 * k).collect::<Vec<_>>());
    assert!(rho.windows(2).all(|w| w[0].estimate < w[1].estimate));
    assert!(rho.last().unwrap().estimate > 0.94);
    assert!(rho.iter().all(|r| (0.0..=1.0).contains(&r.estimate)));
}

#[test]
fn report_for_finite_and_infinite_graphs() {
    let space = PrGraph::new(Group::cyclic(3).unwrap(), 2).unwrap();
    let root = space.default_root().unwrap();
    let report = metrics_report(&space, &root, &MetricsRequest::default()).unwrap();
    let cheeger = report.cheeger.as_ref().unwrap();
    assert_eq!(cheeger.unrestricted.value, "0");
    assert_eq!(cheeger.half.as_ref().unwrap().value, "2");
    assert!(report.spectral_gap.is_some());
    assert!(report.truncation.finite_component);
    assert!(report.errors.is_empty());
    let rows = report.return_probs.as_ref().unwrap();
    assert_eq!(rows.len(), 9);
    let csv = return_probs_csv(rows).unwrap();
    assert!(csv.starts_with("k,numerator,denominator,float\n0,1,1,"));

    let space = PrGraph::new(Group::free_abelian(1).unwrap(), 2).unwrap();
    let root = space.parse_vertex("1;0").unwrap();
    let report = metrics_report(&space, &root, &MetricsRequest::default()).unwrap();
    assert!(report.cheeger.is_none() && report.spectral_gap.is_none());
    assert!(!report.truncation.finite_component);
    assert_eq!(report.errors.keys().collect::<Vec<_>>(), ["cheeger", "spectral"]);
    assert_eq!(report.rho_estimates.as_ref().unwrap().len(), 4);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["return_probs"][1]["numerator"], "1");
    assert_eq!(json["return_probs"][1]["denominator"], "2");

    let empty = MetricsRequest {
        metrics: Default::default(),
        ..MetricsRequest::default()
    };
    let report = metrics_report(&space, &root, &empty).unwrap();
    assert!(report.errors.is_empty() && report.return_probs.is_none());
    assert!(!report.all_failed(&empty));

    // Γ₁ is edgeless and every metric refuses it
    let space = PrGraph::new(Group::free_abelian(1).unwrap(), 1).unwrap();
    let root = space.default_root().unwrap();
    let req = MetricsRequest::default();
    assert!(metrics_report(&space, &root, &req).unwrap().all_failed(&req));
}
