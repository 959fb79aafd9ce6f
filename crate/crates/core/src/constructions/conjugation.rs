use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GenTuple, PrGraph};
use crate::group::{center, Element, Group};

/// Componentwise conjugation `g·S·g⁻¹`.
pub fn conjugate_tuple(group: &Group, s: &[Element], g: &Element) -> Result<Vec<Element>> {
    s.iter().map(|x| group.conjugate(g, x)).collect()
}

/// `f_S : G → Γₙ(G)`, `g ↦ g·S·g⁻¹`.
#[derive(Clone, Debug)]
pub struct ConjugationMap {
    space: PrGraph,
    base: GenTuple,
}

impl ConjugationMap {
    pub fn new(space: &PrGraph, base: &GenTuple) -> Result<Self> {
        let base = space.vertex(base.items().to_vec())?;
        Ok(ConjugationMap {
            space: space.clone(),
            base,
        })
    }

    pub fn base(&self) -> &GenTuple {
        &self.base
    }

    pub fn apply(&self, g: &Element) -> Result<GenTuple> {
        let items = conjugate_tuple(self.space.group(), self.base.items(), g)?;
        Ok(GenTuple::new_unchecked(items))
    }
}

/// Elements of word length `≤ radius` in the generators of `base` and their
/// inverses, with their word lengths, in BFS order.
fn word_ball(group: &Group, base: &[Element], radius: u32) -> Result<Vec<(Element, u32)>> {
    let mut steps = vec![];
    for s in base {
        steps.push(s.clone());
        steps.push(group.inv(s)?);
    }
    let id = group.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut out = vec![(id.clone(), 0)];
    let mut queue = VecDeque::from([(id, 0u32)]);
    while let Some((g, len)) = queue.pop_front() {
        if len == radius {
            continue;
        }
        for s in &steps {
            let h = group.mul(&g, s)?;
            if seen.insert(h.clone()) {
                out.push((h.clone(), len + 1));
                queue.push_back((h, len + 1));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LipschitzWitness {
    pub element: String,
    pub generator: usize,
    pub distance: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LipschitzReport {
    pub group: String,
    pub base: String,
    pub word_radius: u32,
    pub elements: usize,
    pub bound: u32,
    /// Largest `d(f_S(g), f_S(g·sᵢ))` observed; `None` if some pair was not
    /// connected within the search depth.
    pub max_distance: Option<u32>,
    pub worst: Option<LipschitzWitness>,
    /// `d(f_S(1), f_S(g)) ≤ (2n−2)·|g|` for every sampled `g`.
    pub composition_holds: bool,
    pub passed: bool,
}

/// Measures how far one generator step moves the conjugation image: for all
/// `g` of word length `≤ word_radius` and every `sᵢ`, the Nielsen distance
/// between `f_S(g)` and `f_S(g·sᵢ)`, which conjugating by `sᵢ` bounds by `2n−2`.
pub fn verify_conjugation_lipschitz(
    space: &PrGraph,
    base: &GenTuple,
    word_radius: u32,
) -> Result<LipschitzReport> {
    if word_radius < 1 {
        return Err(Error::InvalidParameter("word radius must be at least 1".into()));
    }
    let group = space.group();
    let f = ConjugationMap::new(space, base)?;
    let bound = 2 * (space.n() as u32).saturating_sub(1);
    let depth = 2 * bound + 2;
    let ball = word_ball(group, base.items(), word_radius)?;
    let steps: Vec<(usize, &Element, u32)> = ball
        .iter()
        .flat_map(|(g, len)| (0..base.len()).map(move |i| (i, g, *len)))
        .collect();
    let origin = f.apply(&group.identity())?;
    let results: Vec<(LipschitzWitness, bool)> = steps
        .par_iter()
        .map(|&(i, g, len)| {
            let here = f.apply(g)?;
            let there = f.apply(&group.mul(g, &base.items()[i])?)?;
            let distance = space.distance(&here, &there, depth)?;
            let composed = if i == 0 {
                // one check per element suffices for the composition bound
                let limit = bound * len;
                space.distance(&origin, &here, limit)?.is_some()
            } else {
                true
            };
            Ok((
                LipschitzWitness {
                    element: group.format_element(g),
                    generator: i + 1,
                    distance,
                },
                composed,
            ))
        })
        .collect::<Result<_>>()?;
    let composition_holds = results.iter().all(|(_, c)| *c);
    let mut worst: Option<LipschitzWitness> = None;
    for (w, _) in results {
        let rank = |d: Option<u32>| d.unwrap_or(u32::MAX);
        if worst.as_ref().is_none_or(|b| rank(w.distance) > rank(b.distance)) {
            worst = Some(w);
        }
    }
    let max_distance = worst.as_ref().and_then(|w| w.distance);
    Ok(LipschitzReport {
        group: group.describe(),
        base: space.format_vertex(base),
        word_radius,
        elements: ball.len(),
        bound,
        max_distance,
        worst,
        composition_holds,
        passed: max_distance.is_some_and(|d| d <= bound) && composition_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub vertices: usize,
    pub orbits: usize,
    /// Every orbit has `[G : Z(G)]` elements.
    pub orbit_size: Option<usize>,
    pub disjoint: bool,
    pub covers: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibersReport {
    pub group: String,
    pub base: String,
    pub center: Vec<String>,
    pub fibers: Vec<Vec<String>>,
    /// Each fiber is `g·Z(G)` intersected with the sample.
    pub fibers_are_center_cosets: bool,
    pub partition: Option<PartitionReport>,
    pub passed: bool,
}

/// Vertex count up to which the orbit partition of all of Γₙ(G) is checked.
pub const PARTITION_LIMIT: usize = 200_000;

/// Groups `sample` by the value of `f_S` and checks the fibers against the
/// cosets of the center; for small groups also checks that the conjugation
/// orbits `f_T(G)` partition the vertex set of Γₙ(G).
pub fn conjugation_fibers(space: &PrGraph, base: &GenTuple, sample: &[Element]) -> Result<FibersReport> {
    let group = space.group();
    let elems = group
        .elements()
        .ok_or_else(|| Error::Unsupported("conjugation fibers of an infinite group".into()))?;
    let f = ConjugationMap::new(space, base)?;
    let z = center(group);
    let z_elems = z.elements(group).expect("finite");
    let mut by_value: BTreeMap<Vec<Element>, Vec<Element>> = BTreeMap::new();
    for g in sample {
        group.validate(g)?;
        by_value.entry(f.apply(g)?.into_items()).or_default().push(g.clone());
    }
    let in_sample: HashSet<&Element> = sample.iter().collect();
    let mut cosets_ok = true;
    for fiber in by_value.values() {
        let g = &fiber[0];
        let coset: HashSet<Element> = z_elems
            .iter()
            .map(|c| group.mul(g, c))
            .collect::<Result<_>>()?;
        let expect: HashSet<&Element> = coset.iter().filter(|e| in_sample.contains(e)).collect();
        let got: HashSet<&Element> = fiber.iter().collect();
        cosets_ok &= expect == got;
    }
    let mut fibers: Vec<Vec<String>> = by_value
        .values()
        .map(|fib| {
            let mut names: Vec<String> = fib.iter().map(|e| group.format_element(e)).collect();
            names.sort();
            names
        })
        .collect();
    fibers.sort();
    let total = (elems.len() as u128).checked_pow(space.n() as u32);
    let partition = match total {
        Some(t) if t <= PARTITION_LIMIT as u128 => {
            Some(orbit_partition(space, &elems, elems.len() / z_elems.len())?)
        }
        _ => None,
    };
    let partition_ok = partition
        .as_ref()
        .is_none_or(|p| p.disjoint && p.covers && p.orbit_size.is_some());
    Ok(FibersReport {
        group: group.describe(),
        base: space.format_vertex(base),
        center: z_elems.iter().map(|e| group.format_element(e)).collect(),
        fibers,
        fibers_are_center_cosets: cosets_ok,
        partition,
        passed: cosets_ok && partition_ok,
    })
}

fn orbit_partition(space: &PrGraph, elems: &[Element], expected_size: usize) -> Result<PartitionReport> {
    let group = space.group();
    let vertices = space.all_vertices(PARTITION_LIMIT)?;
    let index: HashMap<&GenTuple, usize> = vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut orbit_of = vec![usize::MAX; vertices.len()];
    let mut orbits = 0;
    let mut disjoint = true;
    let mut uniform = true;
    for (i, t) in vertices.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let image: HashSet<Vec<Element>> = elems
            .iter()
            .map(|g| conjugate_tuple(group, t.items(), g))
            .collect::<Result<_>>()?;
        uniform &= image.len() == expected_size;
        for items in image {
            let tuple = GenTuple::new_unchecked(items);
            match index.get(&tuple) {
                Some(&j) if orbit_of[j] == usize::MAX => orbit_of[j] = orbits,
                // either lands outside the vertex set or on another orbit
                _ => disjoint = false,
            }
        }
        orbits += 1;
    }
    Ok(PartitionReport {
        vertices: vertices.len(),
        orbits,
        orbit_size: uniform.then_some(expected_size),
        disjoint,
        covers: orbit_of.iter().all(|&o| o != usize::MAX),
    })
}
