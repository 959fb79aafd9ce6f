use super::lattice::smith;
use super::{Element, Group};
use crate::error::{Error, Result};

/// A subgroup with a decidable membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Trivial,
    Whole,
    /// Subgroup of a finite table group, with its membership mask.
    Finite {
        generators: Vec<Element>,
        members: Vec<bool>,
    },
    /// Subgroup of an abelian group spanned by `generators`.
    Lattice { generators: Vec<Element> },
    /// `⟨xᵐ⟩` inside D∞; `step = 1` is the whole translation subgroup.
    DihedralTranslations { step: u64 },
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(g: &Group, gens: Vec<Element>) -> Result<Self> {
        for e in &gens {
            g.validate(e)?;
        }
        match g {
            Group::Finite(fg) => {
                let members = fg.closure(gens.iter().map(|e| e.coords()[0] as usize));
                Ok(Subgroup::Finite {
                    generators: gens,
                    members,
                })
            }
            Group::Abelian(_) => Ok(Subgroup::Lattice { generators: gens }),
            Group::DihedralInfinite => {
                if gens.iter().any(|e| e.coords()[1] != 0) {
                    return Err(Error::Unsupported(
                        "D∞ subgroups containing reflections".into(),
                    ));
                }
                let step = gens
                    .iter()
                    .fold(0u64, |acc, e| gcd(acc, e.coords()[0].unsigned_abs()));
                Ok(if step == 0 {
                    Subgroup::Trivial
                } else {
                    Subgroup::DihedralTranslations { step }
                })
            }
        }
    }

    /// `m·G` for an abelian group.
    pub fn multiples(g: &Group, m: u64) -> Result<Self> {
        let Group::Abelian(a) = g else {
            return Err(Error::Unsupported("m·G for non-abelian groups".into()));
        };
        let k = a.rank();
        let gens = (0..k)
            .map(|i| {
                a.reduce(
                    &(0..k)
                        .map(|j| if i == j { m as i64 } else { 0 })
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::Lattice { generators: gens })
    }

    pub fn generators(&self, g: &Group) -> Vec<Element> {
        match self {
            Subgroup::Trivial => vec![],
            Subgroup::Whole => g.standard_generators(),
            Subgroup::Finite { generators, .. } | Subgroup::Lattice { generators } => {
                generators.clone()
            }
            Subgroup::DihedralTranslations { step } => vec![Element::new([*step as i64, 0])],
        }
    }

    pub fn contains(&self, g: &Group, e: &Element) -> Result<bool> {
        g.validate(e)?;
        match self {
            Subgroup::Trivial => Ok(*e == g.identity()),
            Subgroup::Whole => Ok(true),
            Subgroup::Finite { members, .. } => Ok(members[e.coords()[0] as usize]),
            Subgroup::Lattice { generators } => {
                let Group::Abelian(a) = g else {
                    return Err(Error::InvalidParameter("lattice subgroup of non-abelian group".into()));
                };
                let mut rows: Vec<Vec<i64>> =
                    generators.iter().map(|x| x.coords().to_vec()).collect();
                rows.extend(a.relations());
                smith(&rows, a.rank())?.contains(e.coords())
            }
            Subgroup::DihedralTranslations { step } => {
                Ok(e.coords()[1] == 0 && e.coords()[0].unsigned_abs().is_multiple_of(*step))
            }
        }
    }

    /// Members, when the subgroup is finite and small enough to list.
    pub fn elements(&self, g: &Group) -> Option<Vec<Element>> {
        match self {
            Subgroup::Trivial => Some(vec![g.identity()]),
            Subgroup::Finite { members, .. } => Some(
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m)
                    .map(|(i, _)| Element::scalar(i as i64))
                    .collect(),
            ),
            _ => {
                let all = g.elements()?;
                let mut out = vec![];
                for e in all {
                    if self.contains(g, &e).ok()? {
                        out.push(e);
                    }
                }
                Some(out)
            }
        }
    }

    pub fn is_trivial(&self, g: &Group) -> Result<bool> {
        Ok(match self {
            Subgroup::Trivial => true,
            Subgroup::Whole => g.order() == Some(1),
            Subgroup::Finite { members, .. } => members.iter().filter(|&&m| m).count() == 1,
            Subgroup::Lattice { generators } => {
                let id = g.identity();
                generators.iter().all(|x| *x == id)
            }
            Subgroup::DihedralTranslations { .. } => false,
        })
    }

    /// Normality; decided by conjugating generators for finite groups.
    pub fn is_normal(&self, g: &Group) -> Result<bool> {
        match (self, g) {
            (Subgroup::Finite { generators, .. }, Group::Finite(_)) => {
                let all = g.elements().expect("finite");
                for x in &all {
                    for n in generators {
                        if !self.contains(g, &g.conjugate(x, n)?)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            _ => Ok(true),
        }
    }
}

/// The center, by commutation against every element for finite groups.
pub fn center(g: &Group) -> Subgroup {
    match g {
        Group::Abelian(_) => Subgroup::Whole,
        Group::DihedralInfinite => Subgroup::Trivial,
        Group::Finite(fg) => {
            let n = fg.order();
            let members: Vec<bool> = (0..n)
                .map(|z| (0..n).all(|x| fg.at(z, x) == fg.at(x, z)))
                .collect();
            let generators = members
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| Element::scalar(i as i64))
                .collect();
            Subgroup::Finite {
                generators,
                members,
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
