//! Groups with canonical element encodings.
//!
//! Every supported group is a [`Group`] value; elements are [`Element`]s whose
//! coordinates are canonical for that group, so equality and hashing of
//! elements (and of tuples of elements) is plain structural equality.
//!
//! | kind              | coordinates                               |
//! |-------------------|-------------------------------------------|
//! | ℤᵏ × ℤ/m₁ × …     | one `i64` per factor, finite ones in `[0,m)` |
//! | D∞ = ℤ ⋊ ℤ/2      | `(t, f)` meaning `xᵗ·sᶠ`, `s·x·s = x⁻¹`     |
//! | finite table      | `[index]`, index 0 is the identity        |

mod abelian;
mod dihedral;
mod finite;
pub mod lattice;
mod parse;
mod quotient;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub use abelian::AbelianGroup;
pub use finite::{FiniteGroup, FiniteLabel, MAX_TABLE_ORDER};
pub use parse::parse_group_spec;
pub use quotient::{quotient, Projection, Quotient};
pub use subgroup::{center, Subgroup};

use crate::error::{Error, Result};

/// A group element in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Element(SmallVec<[i64; 2]>);

impl Element {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Element(coords.into_iter().collect())
    }

    pub fn scalar(x: i64) -> Self {
        Element(smallvec::smallvec![x])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Canonical byte payload: coordinates as little-endian `i64`s.
    pub fn encode(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Table,
    Permutation,
    FreeAbelian(usize),
    FiniteAbelian(Vec<u64>),
    /// Mixed ℤʳ × finite, arising from lattice quotients. Modulus 0 is ℤ.
    Abelian(Vec<u64>),
    DihedralInfinite,
}

#[derive(Clone, Debug)]
pub enum Group {
    Abelian(AbelianGroup),
    DihedralInfinite,
    Finite(Arc<FiniteGroup>),
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Group::Abelian(a), Group::Abelian(b)) => a == b,
            (Group::DihedralInfinite, Group::DihedralInfinite) => true,
            (Group::Finite(a), Group::Finite(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Group {
    pub fn free_abelian(rank: usize) -> Result<Self> {
        if rank < 1 {
            return Err(Error::InvalidParameter("rank must be at least 1".into()));
        }
        Ok(Group::Abelian(AbelianGroup::new(vec![0; rank])?))
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Group::finite_abelian(&[m])
    }

    pub fn finite_abelian(moduli: &[u64]) -> Result<Self> {
        if moduli.iter().any(|&m| m < 1) {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        Ok(Group::Abelian(AbelianGroup::new(moduli.to_vec())?))
    }

    pub fn dihedral_infinite() -> Self {
        Group::DihedralInfinite
    }

    /// Dihedral group of order `2m`.
    pub fn dihedral(m: u32) -> Result<Self> {
        Ok(Group::Finite(Arc::new(FiniteGroup::dihedral(m)?)))
    }

    pub fn symmetric(m: u8) -> Result<Self> {
        Ok(Group::Finite(Arc::new(FiniteGroup::symmetric(m)?)))
    }

    pub fn quaternion() -> Self {
        Group::Finite(Arc::new(FiniteGroup::quaternion()))
    }

    pub fn from_table(table: Vec<Vec<u32>>) -> Result<Self> {
        Ok(Group::Finite(Arc::new(FiniteGroup::from_table(
            table,
            FiniteLabel::Table,
        )?)))
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            Group::Abelian(a) => a.kind(),
            Group::DihedralInfinite => GroupKind::DihedralInfinite,
            Group::Finite(g) => match g.label() {
                FiniteLabel::Symmetric(_) => GroupKind::Permutation,
                _ => GroupKind::Table,
            },
        }
    }

    /// Order, `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            Group::Abelian(a) => a.order(),
            Group::DihedralInfinite => None,
            Group::Finite(g) => Some(g.order() as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Abelian(_) => true,
            Group::DihedralInfinite => false,
            Group::Finite(g) => g.is_abelian(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Group::Abelian(a) => a.describe(),
            Group::DihedralInfinite => "Dinf".into(),
            Group::Finite(g) => g.describe(),
        }
    }

    /// Minimum number of generators, when known or cheaply searchable.
    pub fn min_generators(&self) -> Option<usize> {
        match self {
            Group::Abelian(a) => a.min_generators(),
            Group::DihedralInfinite => Some(2),
            Group::Finite(g) => g.min_generators(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Abelian(a) => a.identity(),
            Group::DihedralInfinite => Element::new([0, 0]),
            Group::Finite(_) => Element::scalar(0),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        match self {
            Group::Abelian(g) => g.add(a, b),
            Group::DihedralInfinite => dihedral::mul(a, b),
            Group::Finite(g) => Ok(g.mul(a, b)),
        }
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        match self {
            Group::Abelian(g) => g.neg(a),
            Group::DihedralInfinite => dihedral::inv(a),
            Group::Finite(g) => Ok(g.inv(a)),
        }
    }

    /// `g·x·g⁻¹`
    pub fn conjugate(&self, g: &Element, x: &Element) -> Result<Element> {
        let gx = self.mul(g, x)?;
        self.mul(&gx, &self.inv(g)?)
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: &Element, k: u64) -> Result<Element> {
        let mut acc = self.identity();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn commute(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.mul(a, b)? == self.mul(b, a)?)
    }

    /// Checks that `a` is in canonical form for this group.
    pub fn validate(&self, a: &Element) -> Result<()> {
        let ok = match self {
            Group::Abelian(g) => g.is_canonical(a),
            Group::DihedralInfinite => dihedral::is_canonical(a),
            Group::Finite(g) => g.is_canonical(a),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                group: self.describe(),
                detail: format!("{:?}", a.coords()),
            })
        }
    }

    /// Whether the elements generate the whole group.
    pub fn is_generating(&self, items: &[Element]) -> Result<bool> {
        if items.is_empty() {
            return Err(Error::InvalidParameter(
                "generation test needs a non-empty tuple".into(),
            ));
        }
        match self {
            Group::Abelian(g) => g.is_generating(items),
            Group::DihedralInfinite => dihedral::is_generating(items),
            Group::Finite(g) => Ok(g.closure_size(items) == g.order()),
        }
    }

    /// All elements, for finite groups (enumeration order is canonical).
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            Group::Abelian(g) => g.elements(),
            Group::DihedralInfinite => None,
            Group::Finite(g) => Some((0..g.order() as i64).map(Element::scalar).collect()),
        }
    }

    pub fn format_element(&self, a: &Element) -> String {
        match self {
            Group::Finite(g) => g.name(a).to_string(),
            _ => a
                .coords()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let bad = |detail: String| Error::InvalidElement {
            group: self.describe(),
            detail,
        };
        match self {
            Group::Finite(g) => g.parse(text).ok_or_else(|| bad(text.to_string())),
            Group::Abelian(g) => {
                let coords = parse_coords(text).map_err(bad)?;
                g.reduce(&coords)
            }
            Group::DihedralInfinite => {
                let coords = parse_coords(text).map_err(bad)?;
                if coords.len() != 2 || !(0..=1).contains(&coords[1]) {
                    return Err(bad(format!("expected t,f with f in {{0,1}}: {text}")));
                }
                Ok(Element::new(coords))
            }
        }
    }

    /// Parses `a;b;c` into a tuple of elements.
    pub fn parse_tuple(&self, text: &str) -> Result<Vec<Element>> {
        text.split(';').map(|e| self.parse_element(e)).collect()
    }

    pub fn format_tuple(&self, items: &[Element]) -> String {
        items
            .iter()
            .map(|e| self.format_element(e))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<Element> {
        if !bytes.len().is_multiple_of(8) {
            return Err(Error::InvalidElement {
                group: self.describe(),
                detail: "payload length is not a multiple of 8".into(),
            });
        }
        let e = Element::new(
            bytes
                .chunks_exact(8)
                .map(|c| i64::from_le_bytes(c.try_into().expect("8-byte chunk"))),
        );
        self.validate(&e)?;
        Ok(e)
    }

    /// A random element; infinite coordinates are drawn from `[-spread, spread]`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> Element {
        match self {
            Group::Abelian(g) => g.random(rng, spread),
            Group::DihedralInfinite => {
                Element::new([rng.random_range(-spread..=spread), rng.random_range(0..=1)])
            }
            Group::Finite(g) => Element::scalar(rng.random_range(0..g.order() as i64)),
        }
    }

    /// A short generating list: standard basis, `(x, s)` for dihedral
    /// groups, a transposition and an m-cycle for symmetric groups.
    pub fn standard_generators(&self) -> Vec<Element> {
        match self {
            Group::Abelian(g) => g.standard_generators(),
            Group::DihedralInfinite => vec![Element::new([1, 0]), Element::new([0, 1])],
            Group::Finite(g) => g.small_generating_set(),
        }
    }

    /// A standard generating `n`-tuple, padded with identities.
    pub fn default_root(&self, n: usize) -> Result<Vec<Element>> {
        let mut gens = self.standard_generators();
        if gens.len() > n {
            return Err(Error::InvalidParameter(format!(
                "{} needs {} generators for the default root, n = {n}",
                self.describe(),
                gens.len()
            )));
        }
        if gens.is_empty() && n > 0 {
            gens.push(self.identity());
        }
        while gens.len() < n {
            gens.push(self.identity());
        }
        Ok(gens)
    }
}

fn parse_coords(text: &str) -> std::result::Result<Vec<i64>, String> {
    let inner = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')');
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coordinate {c:?}"))
        })
        .collect()
}
