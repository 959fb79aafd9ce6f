//! Structural invariants of explored product replacement graphs.

use std::collections::HashSet;

use prgraph::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spaces() -> Vec<PrGraph> {
    [("Zmod:3", 2), ("Z", 2), ("Z^2", 3), ("Sym:3", 2), ("Dinf", 3), ("Q8", 2), ("Z", 3)]
        .into_iter()
        .map(|(g, n)| PrGraph::new(parse_group_spec(g).unwrap(), n).unwrap())
        .collect()
}

/// A vertex reached by a random walk from the default root.
fn random_vertex(space: &PrGraph, rng: &mut ChaCha8Rng, steps: usize) -> GenTuple {
    let mut t = space.default_root().unwrap();
    for _ in 0..steps {
        let m = space.moves()[rng.random_range(0..space.degree())];
        t = space.apply_move(&t, m).unwrap();
    }
    t
}

proptest! {
    #[test]
    fn moves_are_involutive_and_preserve_generation(seed in any::<u64>(), steps in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for space in spaces() {
            let t = random_vertex(&space, &mut rng, steps);
            let m = space.moves()[rng.random_range(0..space.degree())];
            let u = space.apply_move(&t, m)?;
            prop_assert!(space.group().is_generating(u.items())?);
            prop_assert_eq!(space.apply_move(&u, m.inverse())?, t);
        }
    }
}

#[test]
fn explored_balls_are_regular_and_symmetric() {
    for space in spaces() {
        let root = space.default_root().unwrap();
        let ball = space.explore_ball(&root, 3, 50_000).unwrap();
        assert!(ball.complete_count() > 0);
        for v in 0..ball.len() as u32 {
            assert!(space.group().is_generating(ball.vertex(v).items()).unwrap());
            let Some(edges) = ball.half_edges(v) else { continue };
            assert_eq!(edges.len(), 4 * space.n() * (space.n() - 1));
            for (mi, &u) in edges.iter().enumerate() {
                if let Some(back) = ball.half_edges(u) {
                    assert_eq!(back[space.inverse_index(mi)], v);
                }
            }
        }
    }
}

#[test]
fn ball_is_the_set_within_distance() {
    let space = PrGraph::new(Group::cyclic(3).unwrap(), 2).unwrap();
    let root = space.default_root().unwrap();
    let everything = space.all_vertices(100).unwrap();
    for r in 0..5 {
        let ball = space.explore_ball(&root, r, 100).unwrap();
        let inside: HashSet<&GenTuple> = ball.vertices().iter().collect();
        for t in &everything {
            let d = space.distance(&root, t, 10).unwrap();
            assert_eq!(inside.contains(t), d.is_some_and(|d| d <= r), "r={r} {t:?}");
        }
        for v in 0..ball.len() as u32 {
            assert_eq!(space.distance(&root, ball.vertex(v), 10).unwrap(), Some(ball.depth(v)));
        }
    }
}
