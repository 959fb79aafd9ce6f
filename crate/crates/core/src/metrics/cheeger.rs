use num::rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::regular::RegularGraph;
use crate::error::{Error, Result};

/// Largest vertex count handled by exhaustive subset enumeration.
pub const CHEEGER_MAX_VERTICES: usize = 24;

/// Number of high bits fixed per parallel chunk.
const SPLIT_BITS: usize = 4;

/// A minimizing set together with its isoperimetric ratio `|∂X| / |X|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheegerWitness {
    pub boundary: u64,
    pub size: u64,
    pub set: Vec<u32>,
}

impl CheegerWitness {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.boundary, self.size)
    }

    pub fn value(&self) -> f64 {
        self.boundary as f64 / self.size as f64
    }
}

/// Exact edge-expansion constants of a finite graph.
///
/// `unrestricted` minimizes over all nonempty sets; `half` only over sets with
/// `|X| ≤ |V|/2`, and is `None` for single-vertex graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheegerResult {
    pub unrestricted: CheegerWitness,
    pub half: Option<CheegerWitness>,
}

#[derive(Clone, Copy)]
struct Best {
    boundary: u64,
    size: u64,
    mask: u64,
}

impl Best {
    const NONE: Best = Best {
        boundary: 1,
        size: 0,
        mask: u64::MAX,
    };

    /// Lexicographic on (ratio, mask) so the winner is independent of the
    /// enumeration order.
    fn better(&self, other: &Best) -> bool {
        if other.size == 0 {
            return self.size != 0;
        }
        if self.size == 0 {
            return false;
        }
        let lhs = self.boundary * other.size;
        let rhs = other.boundary * self.size;
        lhs < rhs || (lhs == rhs && self.mask < other.mask)
    }

    fn offer(&mut self, boundary: u64, size: u64, mask: u64) {
        let cand = Best {
            boundary,
            size,
            mask,
        };
        if cand.better(self) {
            *self = cand;
        }
    }

    fn merge(a: (Best, Best), b: (Best, Best)) -> (Best, Best) {
        (
            if b.0.better(&a.0) { b.0 } else { a.0 },
            if b.1.better(&a.1) { b.1 } else { a.1 },
        )
    }
}

/// Edge multiplicities between distinct vertices, one bitmask per bit of the
/// multiplicity, so `w(v, X) = Σ_b popcount(X & planes[v][b]) << b`.
struct Planes {
    planes: Vec<Vec<u64>>,
    outer: Vec<u64>,
}

impl Planes {
    fn new(g: &RegularGraph) -> Self {
        let m = g.multiplicities();
        let n = g.len();
        let bits = (u32::BITS - (g.degree() as u32).leading_zeros()).max(1) as usize;
        let mut planes = vec![vec![0u64; bits]; n];
        let mut outer = vec![0u64; n];
        for v in 0..n {
            for u in 0..n {
                if u == v {
                    continue;
                }
                let mult = m[v][u];
                outer[v] += mult as u64;
                for (b, plane) in planes[v].iter_mut().enumerate() {
                    if mult >> b & 1 == 1 {
                        *plane |= 1 << u;
                    }
                }
            }
        }
        Planes { planes, outer }
    }

    fn weight(&self, v: usize, set: u64) -> u64 {
        self.planes[v]
            .iter()
            .enumerate()
            .map(|(b, &p)| ((set & p).count_ones() as u64) << b)
            .sum()
    }

    fn boundary(&self, set: u64) -> u64 {
        let mut total = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += self.outer[v] - self.weight(v, set & !(1 << v));
        }
        total
    }
}

/// Exhaustive minimization of `|∂X| / |X|` over vertex subsets.
pub fn cheeger_exact(g: &RegularGraph) -> Result<CheegerResult> {
    let n = g.len();
    if n == 0 {
        return Err(Error::InvalidParameter("Cheeger constant of an empty graph".into()));
    }
    if n > CHEEGER_MAX_VERTICES {
        return Err(Error::TooLarge {
            vertices: n,
            limit: CHEEGER_MAX_VERTICES,
        });
    }
    let planes = Planes::new(g);
    let split = if n > SPLIT_BITS + 8 { SPLIT_BITS } else { 0 };
    let low = n - split;
    let (all, half) = (0u64..1 << split)
        .into_par_iter()
        .map(|high| scan_chunk(&planes, n, low, high << low))
        .reduce(|| (Best::NONE, Best::NONE), Best::merge);
    let witness = |b: Best| CheegerWitness {
        boundary: b.boundary,
        size: b.size,
        set: (0..n as u32).filter(|&v| b.mask >> v & 1 == 1).collect(),
    };
    Ok(CheegerResult {
        unrestricted: witness(all),
        half: (half.size != 0).then(|| witness(half)),
    })
}

/// Gray-code walk over the low `low` bits with the high bits fixed to `base`.
fn scan_chunk(planes: &Planes, n: usize, low: usize, base: u64) -> (Best, Best) {
    let mut all = Best::NONE;
    let mut half = Best::NONE;
    let mut set = base;
    let mut size = set.count_ones() as u64;
    let mut boundary = planes.boundary(set);
    let mut consider = |set: u64, size: u64, boundary: u64| {
        if size > 0 {
            all.offer(boundary, size, set);
            if 2 * size <= n as u64 {
                half.offer(boundary, size, set);
            }
        }
    };
    consider(set, size, boundary);
    for k in 1u64..1 << low {
        let v = k.trailing_zeros() as usize;
        let bit = 1u64 << v;
        if set & bit == 0 {
            let w = planes.weight(v, set);
            boundary = boundary + planes.outer[v] - 2 * w;
            set |= bit;
            size += 1;
        } else {
            set &= !bit;
            let w = planes.weight(v, set);
            boundary = boundary + 2 * w - planes.outer[v];
            size -= 1;
        }
        consider(set, size, boundary);
    }
    (all, half)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> RegularGraph {
        let targets = (0..n).flat_map(|v| [(v + 1) % n, (v + n - 1) % n]).collect();
        RegularGraph::from_targets(n as usize, 2, targets).unwrap()
    }

    #[test]
    fn cycle_of_length_six() {
        let r = cheeger_exact(&cycle(6)).unwrap();
        assert_eq!(r.unrestricted.ratio(), Ratio::new(0, 1));
        assert_eq!(r.unrestricted.set.len(), 6);
        let half = r.half.unwrap();
        assert_eq!(half.ratio(), Ratio::new(2, 3));
    }

    #[test]
    fn large_cycle_uses_parallel_chunks() {
        let r = cheeger_exact(&cycle(16)).unwrap();
        assert_eq!(r.half.unwrap().ratio(), Ratio::new(1, 4));
    }

    #[test]
    fn incremental_boundary_matches_direct_count() {
        let g = cycle(7);
        let planes = Planes::new(&g);
        for set in 0u64..1 << 7 {
            let members: Vec<u32> = (0..7).filter(|&v| set >> v & 1 == 1).collect();
            assert_eq!(planes.boundary(set) as usize, g.boundary_size(&members));
        }
    }

    #[test]
    fn single_vertex_without_edges() {
        let g = RegularGraph::from_targets(1, 0, vec![]).unwrap();
        let r = cheeger_exact(&g).unwrap();
        assert_eq!(r.unrestricted.ratio(), Ratio::new(0, 1));
        assert_eq!(r.unrestricted.set, vec![0]);
        assert!(r.half.is_none());
    }

    #[test]
    fn rejects_oversized_graphs() {
        assert!(matches!(
            cheeger_exact(&cycle(25)),
            Err(Error::TooLarge { .. })
        ));
    }
}
