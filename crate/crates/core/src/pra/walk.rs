use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GenTuple, PrGraph};
use crate::group::Element;

/// What a walk outputs once it stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Emit {
    /// The whole final tuple.
    Tuple,
    /// One coordinate of the final tuple, chosen uniformly.
    RandomCoordinate,
    /// Coordinate `i` (1-based) of the final tuple.
    FixedCoordinate(usize),
}

#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub space: PrGraph,
    pub start: GenTuple,
    pub steps: u64,
    pub seed: u64,
    pub emit: Emit,
}

impl WalkConfig {
    pub fn new(space: PrGraph, start: GenTuple, steps: u64, seed: u64, emit: Emit) -> Result<Self> {
        let start = space.vertex(start.into_items())?;
        if let Emit::FixedCoordinate(i) = emit {
            if i == 0 || i > space.n() {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {i} out of range 1..={}",
                    space.n()
                )));
            }
        }
        Ok(WalkConfig {
            space,
            start,
            steps,
            seed,
            emit,
        })
    }
}

/// The random source of one trial: ChaCha8 keyed by the seed, with the trial
/// index selecting an independent stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform move choices for one trial.
pub struct MoveStream {
    rng: ChaCha8Rng,
    degree: usize,
}

impl MoveStream {
    pub fn new(seed: u64, trial: u64, degree: usize) -> Self {
        MoveStream {
            rng: trial_rng(seed, trial),
            degree,
        }
    }

    pub fn next_move(&mut self) -> usize {
        self.rng.random_range(0..self.degree)
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn walk_trial(cfg: &WalkConfig, trial: u64) -> Result<(GenTuple, MoveStream)> {
    let degree = cfg.space.degree();
    let mut stream = MoveStream::new(cfg.seed, trial, degree);
    let mut t = cfg.start.clone();
    if degree > 0 {
        for _ in 0..cfg.steps {
            let m = cfg.space.moves()[stream.next_move()];
            t = cfg.space.apply_move(&t, m)?;
        }
    }
    Ok((t, stream))
}

/// One product replacement walk (trial 0 of the seed).
pub fn pra_walk(cfg: &WalkConfig) -> Result<GenTuple> {
    Ok(walk_trial(cfg, 0)?.0)
}

fn emit(cfg: &WalkConfig, t: GenTuple, stream: &mut MoveStream) -> Vec<Element> {
    match cfg.emit {
        Emit::Tuple => t.into_items(),
        Emit::RandomCoordinate => {
            let i = stream.rng().random_range(0..t.len());
            vec![t.items()[i].clone()]
        }
        Emit::FixedCoordinate(i) => vec![t.items()[i - 1].clone()],
    }
}

/// Exact counts of emitted values over independent trials; a tuple is keyed
/// by all its entries, an element by a one-entry key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Histogram {
    pub trials: u64,
    pub counts: BTreeMap<Vec<Element>, u64>,
}

impl Histogram {
    fn merge(mut self, other: Histogram) -> Histogram {
        self.trials += other.trials;
        for (k, c) in other.counts {
            *self.counts.entry(k).or_default() += c;
        }
        self
    }

    pub fn support(&self) -> usize {
        self.counts.len()
    }
}

/// Runs `trials` walks in parallel, trial `i` on stream `i` of the seed, so
/// the result does not depend on the number of worker threads.
pub fn sample_elements(cfg: &WalkConfig, trials: u64) -> Result<Histogram> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let (t, mut stream) = walk_trial(cfg, trial)?;
            let key = emit(cfg, t, &mut stream);
            Ok(Histogram {
                trials: 1,
                counts: BTreeMap::from([(key, 1)]),
            })
        })
        .try_reduce(Histogram::default, |a, b| Ok(a.merge(b)))
}

/// Histogram as CSV rows `value,count`, values in the group's text syntax.
pub fn histogram_csv(space: &PrGraph, hist: &Histogram) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["value", "count"])?;
    for (k, c) in &hist.counts {
        w.write_record([space.group().format_tuple(k), c.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn config(steps: u64, seed: u64, emit: Emit) -> WalkConfig {
        let space = PrGraph::new(Group::cyclic(5).unwrap(), 2).unwrap();
        let start = space.default_root().unwrap();
        WalkConfig::new(space, start, steps, seed, emit).unwrap()
    }

    #[test]
    fn zero_steps_stay_at_start() {
        let cfg = config(0, 1, Emit::FixedCoordinate(1));
        assert_eq!(pra_walk(&cfg).unwrap(), cfg.start);
        let h = sample_elements(&cfg, 50).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(vec![Element::scalar(1)], 50)]));
        assert!(sample_elements(&cfg, 0).unwrap().counts.is_empty());
    }

    #[test]
    fn walks_are_reproducible() {
        let cfg = config(10, 42, Emit::Tuple);
        let a = pra_walk(&cfg).unwrap();
        assert_eq!(a, pra_walk(&cfg).unwrap());
        let h1 = sample_elements(&cfg, 200).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let h2 = pool.install(|| sample_elements(&cfg, 200).unwrap());
        assert_eq!(h1, h2);
    }

    #[test]
    fn coordinate_range_checked() {
        let space = PrGraph::new(Group::cyclic(5).unwrap(), 2).unwrap();
        let start = space.default_root().unwrap();
        assert!(WalkConfig::new(space, start, 1, 1, Emit::FixedCoordinate(3)).is_err());
    }
}
