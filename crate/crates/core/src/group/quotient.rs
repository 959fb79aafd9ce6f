use std::sync::Arc;

use super::finite::{FiniteGroup, FiniteLabel};
use super::lattice::{smith, Smith};
use super::subgroup::center;
use super::{parse_group_spec, Element, Group, GroupKind, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Projection {
    Identity,
    /// Everything maps to the identity of the trivial group.
    Trivial,
    /// `v ↦ (v·Q)ᵢ mod dᵢ` over the kept columns (`d = 0` keeps a ℤ factor).
    Abelian {
        smith: Smith,
        keep: Vec<(usize, u64)>,
    },
    /// Finite groups: coset index of each source element.
    Cosets(Vec<u32>),
    /// D∞ → ℤ/2, `(t, f) ↦ f`.
    DihedralParity,
    /// D∞ → D:m, translations reduced mod m.
    DihedralMod(u64),
}

/// A quotient group together with its projection homomorphism.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub source: Group,
    pub target: Group,
    pub kernel: Subgroup,
    pub projection: Projection,
}

impl Quotient {
    pub fn identity(g: &Group) -> Self {
        Quotient {
            source: g.clone(),
            target: g.clone(),
            kernel: Subgroup::Trivial,
            projection: Projection::Identity,
        }
    }

    /// `G / Z(G)`.
    pub fn by_center(g: &Group) -> Result<Self> {
        quotient(g, &center(g))
    }

    /// `ℤᵏ → (ℤ/m)ᵏ` for abelian groups, `D∞ → D:m` (`ℤ/2` when `m = 1`).
    pub fn reduce_mod(g: &Group, m: u64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        match g {
            Group::Abelian(_) => quotient(g, &Subgroup::multiples(g, m)?),
            Group::DihedralInfinite => quotient(g, &Subgroup::DihedralTranslations { step: m }),
            Group::Finite(_) => Err(Error::Unsupported(
                "reduction mod m of a finite table group".into(),
            )),
        }
    }

    /// Resolves a quotient description: `center`, `self` (no reduction),
    /// `trivial` (onto the trivial group), `mod:<m>`, or a
    /// target group spec whose canonical projection is known (`Zmod:m` or
    /// `Zmod:m1x..xmk` from ℤᵏ, `Zmod:2` or `D:m` from D∞).
    pub fn by_spec(g: &Group, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "center" {
            return Self::by_center(g);
        }
        if text == "self" || text == "identity" {
            return Ok(Self::identity(g));
        }
        if text == "trivial" {
            return quotient(g, &Subgroup::Whole);
        }
        if let Some(m) = text.strip_prefix("mod:") {
            let m: u64 = m
                .parse()
                .map_err(|_| Error::Syntax(format!("bad modulus in {text:?}")))?;
            return Self::reduce_mod(g, m);
        }
        let h = parse_group_spec(text)?;
        let unsupported = || {
            Error::Unsupported(format!(
                "no canonical projection from {} onto {}",
                g.describe(),
                h.describe()
            ))
        };
        match (g, h.kind()) {
            (Group::Abelian(a), GroupKind::FiniteAbelian(ms)) => {
                let m = ms[0];
                let uniform = ms.iter().all(|&x| x == m);
                let free = a.moduli().iter().all(|&x| x == 0);
                if uniform && free && (ms.len() == a.rank() || ms.len() == 1) {
                    // a single modulus is shorthand for reducing every coordinate
                    return Self::reduce_mod(g, m);
                }
                if free && ms.len() == a.rank() {
                    // coordinate-wise reduction: kernel spanned by mᵢ·eᵢ
                    let generators = (0..a.rank())
                        .map(|i| {
                            let m = i64::try_from(ms[i]).map_err(|_| unsupported())?;
                            Ok(Element::new((0..a.rank()).map(|j| if i == j { m } else { 0 })))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    return quotient(g, &Subgroup::Lattice { generators });
                }
                Err(unsupported())
            }
            (Group::DihedralInfinite, GroupKind::FiniteAbelian(ms)) if ms == [2] => {
                Self::reduce_mod(g, 1)
            }
            (Group::DihedralInfinite, GroupKind::Table) => match &h {
                Group::Finite(fg) => match fg.label() {
                    FiniteLabel::Dihedral(m) => Self::reduce_mod(g, u64::from(*m)),
                    _ => Err(unsupported()),
                },
                _ => Err(unsupported()),
            },
            _ => Err(unsupported()),
        }
    }

    pub fn project(&self, e: &Element) -> Result<Element> {
        match &self.projection {
            Projection::Identity => Ok(e.clone()),
            Projection::Trivial => Ok(self.target.identity()),
            Projection::Abelian { smith, keep } => {
                if keep.is_empty() {
                    return Ok(self.target.identity());
                }
                let w = smith.apply(e.coords())?;
                Ok(Element::new(keep.iter().map(|&(c, d)| {
                    if d == 0 {
                        w[c]
                    } else {
                        w[c].rem_euclid(d as i64)
                    }
                })))
            }
            Projection::Cosets(idx) => Ok(Element::scalar(i64::from(idx[e.coords()[0] as usize]))),
            Projection::DihedralParity => Ok(Element::scalar(e.coords()[1])),
            Projection::DihedralMod(m) => {
                let m = *m as i64;
                Ok(Element::scalar(e.coords()[0].rem_euclid(m) + m * e.coords()[1]))
            }
        }
    }

    pub fn project_tuple(&self, items: &[Element]) -> Result<Vec<Element>> {
        items.iter().map(|e| self.project(e)).collect()
    }

    /// `[G : N]`, `None` if infinite.
    pub fn index(&self) -> Option<u64> {
        self.target.order()
    }
}

/// `G / N` with canonical coset representatives.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    let build = |target: Group, projection: Projection| Quotient {
        source: g.clone(),
        target,
        kernel: n.clone(),
        projection,
    };
    if matches!(n, Subgroup::Trivial) {
        return Ok(Quotient::identity(g));
    }
    match g {
        Group::Abelian(a) => {
            let mut rows = a.relations();
            match n {
                Subgroup::Whole => rows.extend((0..a.rank()).map(|i| {
                    (0..a.rank()).map(|j| i64::from(i == j)).collect()
                })),
                Subgroup::Lattice { generators } => {
                    rows.extend(generators.iter().map(|e| e.coords().to_vec()))
                }
                _ => return Err(Error::Unsupported("subgroup type for abelian quotient".into())),
            }
            let s = smith(&rows, a.rank())?;
            let keep: Vec<(usize, u64)> = (0..a.rank())
                .filter_map(|c| match s.factors.get(c) {
                    Some(&1) => None,
                    Some(&d) => Some((c, d as u64)),
                    None => Some((c, 0)),
                })
                .collect();
            let target = if keep.is_empty() {
                Group::cyclic(1)?
            } else {
                Group::Abelian(super::AbelianGroup::new(
                    keep.iter().map(|&(_, d)| d).collect(),
                )?)
            };
            Ok(build(target, Projection::Abelian { smith: s, keep }))
        }
        Group::DihedralInfinite => match n {
            Subgroup::Whole => Ok(build(Group::cyclic(1)?, Projection::Trivial)),
            Subgroup::DihedralTranslations { step: 1 } => {
                Ok(build(Group::cyclic(2)?, Projection::DihedralParity))
            }
            Subgroup::DihedralTranslations { step } => {
                let m = u32::try_from(*step)
                    .map_err(|_| Error::Unsupported("D∞ quotient too large".into()))?;
                Ok(build(Group::dihedral(m)?, Projection::DihedralMod(*step)))
            }
            _ => Err(Error::Unsupported("subgroup type for D∞ quotient".into())),
        },
        Group::Finite(fg) => {
            let members = match n {
                Subgroup::Whole => vec![true; fg.order()],
                Subgroup::Finite { members, .. } => members.clone(),
                _ => return Err(Error::Unsupported("subgroup type for finite quotient".into())),
            };
            if !n.is_normal(g)? {
                return Err(Error::NotNormal);
            }
            let (idx, target) = coset_table(fg, &members)?;
            Ok(build(Group::Finite(Arc::new(target)), Projection::Cosets(idx)))
        }
    }
}

fn coset_table(fg: &FiniteGroup, members: &[bool]) -> Result<(Vec<u32>, FiniteGroup)> {
    let order = fg.order();
    let kernel: Vec<usize> = (0..order).filter(|&i| members[i]).collect();
    // smallest index in each coset a·N
    let rep: Vec<usize> = (0..order)
        .map(|a| kernel.iter().map(|&k| fg.at(a, k)).min().expect("kernel has identity"))
        .collect();
    let mut reps: Vec<usize> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let pos = |r: usize| reps.binary_search(&r).expect("representative") as u32;
    let idx: Vec<u32> = rep.iter().map(|&r| pos(r)).collect();
    let rows: Vec<Vec<u32>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| idx[fg.at(a, b)]).collect())
        .collect();
    let label = FiniteLabel::Quotient(format!("{}/N", Group::Finite(Arc::new(fg.clone())).describe()));
    let names = reps
        .iter()
        .map(|&r| fg.name(&Element::scalar(r as i64)).to_string())
        .collect();
    Ok((idx, FiniteGroup::from_table(rows, label)?.with_names(names)))
}
