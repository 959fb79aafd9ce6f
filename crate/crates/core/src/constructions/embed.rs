use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GenTuple, PrGraph};
use crate::group::{Element, Group};

/// `Γ₂(K) → Γₙ₊₂(G)`, `(h₁, h₂) ↦ (t₁, …, tₙ, ι(h₁), ι(h₂))`, for a free
/// abelian subgroup `K = ι(ℤᵏ)` given by commuting images of the basis.
#[derive(Clone, Debug)]
pub struct Gamma2Embedding {
    prefix: Vec<Element>,
    basis: Vec<Element>,
    lattice: PrGraph,
    target: PrGraph,
}

impl Gamma2Embedding {
    pub fn new(group: &Group, prefix: &[Element], basis: &[Element]) -> Result<Self> {
        for x in prefix.iter().chain(basis) {
            group.validate(x)?;
        }
        let id = group.identity();
        if basis.is_empty() || basis.contains(&id) {
            return Err(Error::Hypothesis("embedded subgroup must be nontrivial and free abelian".into()));
        }
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                if !group.commute(a, b)? {
                    return Err(Error::Hypothesis("basis images must commute".into()));
                }
            }
        }
        let all: Vec<Element> = prefix.iter().chain(basis).cloned().collect();
        if !group.is_generating(&all)? {
            return Err(Error::Hypothesis("prefix and subgroup do not generate the group".into()));
        }
        Ok(Gamma2Embedding {
            prefix: prefix.to_vec(),
            basis: basis.to_vec(),
            lattice: PrGraph::new(Group::free_abelian(basis.len())?, 2)?,
            target: PrGraph::new(group.clone(), prefix.len() + 2)?,
        })
    }

    /// Γ₂(ℤᵏ).
    pub fn lattice(&self) -> &PrGraph {
        &self.lattice
    }

    /// Γₙ₊₂(G).
    pub fn target(&self) -> &PrGraph {
        &self.target
    }

    /// `ι(v) = Π bᵢ^vᵢ`.
    pub fn iota(&self, v: &Element) -> Result<Element> {
        let group = self.target.group();
        let mut acc = group.identity();
        for (b, &e) in self.basis.iter().zip(v.coords()) {
            let base = if e < 0 { group.inv(b)? } else { b.clone() };
            acc = group.mul(&acc, &group.pow(&base, e.unsigned_abs())?)?;
        }
        Ok(acc)
    }

    pub fn map_vertex(&self, t: &GenTuple) -> Result<GenTuple> {
        let mut items = self.prefix.clone();
        for h in t.items() {
            items.push(self.iota(h)?);
        }
        self.target.vertex(items)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub root: String,
    pub radius: u32,
    pub vertices: usize,
    pub edges_checked: usize,
    pub injective: bool,
    pub edges_preserved: bool,
    pub passed: bool,
}

/// Checks on the ball of `radius` around `root` in Γ₂(ℤᵏ) that the map is
/// injective and sends each move on `(h₁, h₂)` to the same move on the last
/// two coordinates of the image.
pub fn verify_embedding(
    emb: &Gamma2Embedding,
    root: &GenTuple,
    radius: u32,
    cap: usize,
) -> Result<EmbeddingReport> {
    let ball = emb.lattice.explore_ball(root, radius, cap)?;
    if ball.truncated() {
        return Err(Error::CapExceeded { cap });
    }
    let images: Vec<GenTuple> = ball
        .vertices()
        .iter()
        .map(|t| emb.map_vertex(t))
        .collect::<Result<_>>()?;
    let distinct: HashMap<&GenTuple, usize> = images.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let injective = distinct.len() == images.len();
    let offset = emb.prefix.len();
    let mut edges_checked = 0;
    let mut edges_preserved = true;
    for v in 0..ball.len() as u32 {
        let Some(edges) = ball.half_edges(v) else { continue };
        for (mi, &u) in edges.iter().enumerate() {
            let m = emb.lattice.moves()[mi].shifted(offset);
            edges_checked += 1;
            edges_preserved &= emb.target.apply_move(&images[v as usize], m)? == images[u as usize];
        }
    }
    Ok(EmbeddingReport {
        root: emb.lattice.format_vertex(root),
        radius,
        vertices: ball.len(),
        edges_checked,
        injective,
        edges_preserved,
        passed: injective && edges_preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_into_infinite_dihedral() {
        let g = Group::dihedral_infinite();
        let emb = Gamma2Embedding::new(&g, &[Element::new([0, 1])], &[Element::new([1, 0])]).unwrap();
        let root = emb.lattice().parse_vertex("1;0").unwrap();
        let image = emb.map_vertex(&root).unwrap();
        assert_eq!(emb.target().format_vertex(&image), "0,1;1,0;0,0");
        let r = verify_embedding(&emb, &root, 5, 100_000).unwrap();
        assert!(r.passed && r.vertices > 1);
    }

    #[test]
    fn trivial_subgroup_is_rejected() {
        let g = Group::dihedral_infinite();
        let err = Gamma2Embedding::new(&g, &[Element::new([0, 1])], &[Element::new([0, 0])]);
        assert!(matches!(err, Err(Error::Hypothesis(_))));
        assert!(matches!(Gamma2Embedding::new(&g, &[], &[]), Err(Error::Hypothesis(_))));
    }
}
