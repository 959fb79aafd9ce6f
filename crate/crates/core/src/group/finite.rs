use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Element;
use crate::error::{Error, Result};

/// Largest order accepted for multiplication-table groups.
pub const MAX_TABLE_ORDER: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteLabel {
    Table,
    Symmetric(u8),
    Dihedral(u32),
    Quaternion,
    Quotient(String),
}

/// A finite group stored as a full multiplication table over indices
/// `0..order`, index 0 being the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Vec<String>,
    lookup: HashMap<String, u32>,
    label: FiniteLabel,
    abelian: bool,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table && self.names == other.names
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn from_table(rows: Vec<Vec<u32>>, label: FiniteLabel) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty multiplication table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::Unsupported(format!(
                "table group of order {n} exceeds {MAX_TABLE_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidParameter(format!(
                        "row {i} is not a permutation of 0..{n}"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        for i in 0..n {
            if table[i] as usize != i || table[i * n] as usize != i {
                return Err(Error::InvalidParameter(
                    "row 0 and column 0 must be the identity".into(),
                ));
            }
        }
        let mut g = FiniteGroup {
            order: n,
            table,
            inverse: vec![0; n],
            names: (0..n).map(|i| i.to_string()).collect(),
            lookup: HashMap::new(),
            label,
            abelian: false,
        };
        g.check_associative()?;
        for a in 0..n {
            let b = (0..n)
                .find(|&b| g.at(a, b) == 0)
                .expect("latin square row contains the identity");
            g.inverse[a] = b as u32;
        }
        g.abelian = (0..n).all(|a| (0..a).all(|b| g.at(a, b) == g.at(b, a)));
        g.rebuild_lookup();
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = || Error::InvalidParameter("multiplication table is not associative".into());
        if n <= 128 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.at(a, b);
                    for c in 0..n {
                        if self.at(ab, c) != self.at(a, self.at(b, c)) {
                            return Err(bad());
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if self.at(self.at(a, b), c) != self.at(a, self.at(b, c)) {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    fn rebuild_lookup(&mut self) {
        self.lookup = self
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = names;
        self.rebuild_lookup();
        self
    }

    /// Dihedral group of order `2m`: index `k + m·f` is `rᵏ·sᶠ`.
    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("dihedral parameter must be at least 1".into()));
        }
        let m = m as usize;
        if 2 * m > MAX_TABLE_ORDER {
            return Err(Error::Unsupported(format!("D:{m} exceeds the table cap")));
        }
        let idx = |k: usize, f: usize| (k + m * f) as u32;
        let rows = (0..2 * m)
            .map(|a| {
                let (k1, f1) = (a % m, a / m);
                (0..2 * m)
                    .map(|b| {
                        let (k2, f2) = (b % m, b / m);
                        let k = if f1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
                        idx(k, f1 ^ f2)
                    })
                    .collect()
            })
            .collect();
        let names = (0..2 * m).map(|a| format!("{},{}", a % m, a / m)).collect();
        Ok(Self::from_table(rows, FiniteLabel::Dihedral(m as u32))?.with_names(names))
    }

    /// Symmetric group on `{1..m}` in lexicographic order of one-line images;
    /// the product is composition `(σ·τ)(x) = σ(τ(x))`.
    pub fn symmetric(m: u8) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParameter("Sym degree must be at least 1".into()));
        }
        if m > 6 {
            return Err(Error::Unsupported(format!(
                "Sym:{m} exceeds the table cap of {MAX_TABLE_ORDER}"
            )));
        }
        let perms = permutations(m as usize);
        let index: HashMap<&Vec<u8>, u32> =
            perms.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let rows = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let c: Vec<u8> = t.iter().map(|&x| s[x as usize]).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        Ok(Self::from_table(rows, FiniteLabel::Symmetric(m))?.with_names(names))
    }

    /// Q₈ with elements `1,-1,i,-i,j,-j,k,-k` at indices `0..8`.
    pub fn quaternion() -> Self {
        // unit product: (unit, sign) for units 1,i,j,k = 0..4
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let rows = (0..8)
            .map(|a: usize| {
                (0..8)
                    .map(|b: usize| {
                        let (u, neg) = UNIT[a / 2][b / 2];
                        let neg = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                        (2 * u + usize::from(neg)) as u32
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_table(rows, FiniteLabel::Quaternion)
            .expect("quaternion table is a group")
            .with_names(names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &FiniteLabel {
        &self.label
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    #[inline]
    pub(crate) fn at(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub(super) fn describe(&self) -> String {
        match &self.label {
            FiniteLabel::Table => format!("table[{}]", self.order),
            FiniteLabel::Symmetric(m) => format!("Sym:{m}"),
            FiniteLabel::Dihedral(m) => format!("D:{m}"),
            FiniteLabel::Quaternion => "Q8".into(),
            FiniteLabel::Quotient(s) => s.clone(),
        }
    }

    pub(super) fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::scalar(self.at(a.coords()[0] as usize, b.coords()[0] as usize) as i64)
    }

    pub(super) fn inv(&self, a: &Element) -> Element {
        Element::scalar(self.inverse[a.coords()[0] as usize] as i64)
    }

    pub(super) fn is_canonical(&self, a: &Element) -> bool {
        a.coords().len() == 1 && (0..self.order as i64).contains(&a.coords()[0])
    }

    pub fn name(&self, a: &Element) -> &str {
        &self.names[a.coords()[0] as usize]
    }

    pub(super) fn parse(&self, text: &str) -> Option<Element> {
        if let Some(&i) = self.lookup.get(text) {
            return Some(Element::scalar(i64::from(i)));
        }
        match self.label {
            FiniteLabel::Symmetric(m) => {
                let p = parse_cycles(text, m as usize)?;
                self.lookup
                    .get(&cycle_notation(&p))
                    .map(|&i| Element::scalar(i64::from(i)))
            }
            FiniteLabel::Dihedral(m) => {
                let (k, f) = text.split_once(',')?;
                let k: i64 = k.trim().parse().ok()?;
                let f: i64 = f.trim().parse().ok()?;
                if !(0..=1).contains(&f) {
                    return None;
                }
                Some(Element::scalar(k.rem_euclid(i64::from(m)) + i64::from(m) * f))
            }
            FiniteLabel::Table | FiniteLabel::Quotient(_) => {
                let i: i64 = text.parse().ok()?;
                (0..self.order as i64).contains(&i).then(|| Element::scalar(i))
            }
            FiniteLabel::Quaternion => None,
        }
    }

    /// Size of the subgroup generated by `items`.
    pub(crate) fn closure_size(&self, items: &[Element]) -> usize {
        self.closure(items.iter().map(|e| e.coords()[0] as usize))
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Membership mask of the subgroup generated by the given indices.
    pub(crate) fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &g in &gens {
                let w = self.at(v, g);
                if !inside[w] {
                    inside[w] = true;
                    stack.push(w);
                }
            }
        }
        inside
    }

    pub(super) fn min_generators(&self) -> Option<usize> {
        match self.label {
            _ if self.order == 1 => Some(0),
            FiniteLabel::Symmetric(m) => Some(if m <= 2 { 1 } else { 2 }),
            FiniteLabel::Dihedral(m) => Some(if m == 1 { 1 } else { 2 }),
            FiniteLabel::Quaternion => Some(2),
            _ => self.search_min_generators(),
        }
    }

    fn search_min_generators(&self) -> Option<usize> {
        let n = self.order;
        let budget = 50_000_000usize;
        if (0..n).any(|a| self.closure([a]).iter().all(|&b| b)) {
            return Some(1);
        }
        if n.saturating_pow(3) <= budget {
            for a in 0..n {
                for b in a + 1..n {
                    if self.closure([a, b]).iter().all(|&x| x) {
                        return Some(2);
                    }
                }
            }
        } else {
            return None;
        }
        if n.saturating_pow(4) <= budget {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if self.closure([a, b, c]).iter().all(|&x| x) {
                            return Some(3);
                        }
                    }
                }
            }
        }
        None
    }

    pub(super) fn small_generating_set(&self) -> Vec<Element> {
        let idx: Vec<usize> = match self.label {
            _ if self.order == 1 => vec![],
            FiniteLabel::Symmetric(m) => {
                let transposition: Vec<u8> = (0..m)
                    .map(|x| match x {
                        0 => 1,
                        1 => 0,
                        _ => x,
                    })
                    .collect();
                let cycle: Vec<u8> = (0..m).map(|x| (x + 1) % m).collect();
                let t = self.lookup[&cycle_notation(&transposition)] as usize;
                let c = self.lookup[&cycle_notation(&cycle)] as usize;
                if m <= 2 {
                    vec![t]
                } else {
                    vec![t, c]
                }
            }
            FiniteLabel::Dihedral(1) => vec![1],
            FiniteLabel::Dihedral(m) => vec![1, m as usize],
            FiniteLabel::Quaternion => vec![2, 4],
            _ => {
                let mut chosen = vec![];
                let mut inside = self.closure([]);
                for a in 0..self.order {
                    if !inside[a] {
                        chosen.push(a);
                        inside = self.closure(chosen.iter().copied());
                    }
                }
                chosen
            }
        };
        idx.into_iter().map(|i| Element::scalar(i as i64)).collect()
    }
}

fn permutations(m: usize) -> Vec<Vec<u8>> {
    let mut out = vec![];
    let mut cur: Vec<u8> = (0..m as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// 1-based cycle notation with fixed points omitted; `()` is the identity.
fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first && p.len() > 9 {
                out.push(' ');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses products of cycles like `(12)(34)` or `(1 2 3)`; cycles compose
/// right to left.
fn parse_cycles(text: &str, m: usize) -> Option<Vec<u8>> {
    let mut perm: Vec<u8> = (0..m as u8).collect();
    let mut rest = text.trim();
    let mut cycles = vec![];
    while !rest.is_empty() {
        let body = rest.strip_prefix('(')?;
        let close = body.find(')')?;
        let inner = &body[..close];
        let points: Vec<usize> = if inner.contains(' ') || inner.contains(',') {
            inner
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().ok())
                .collect::<Option<_>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()?
        };
        if points.iter().any(|&x| x < 1 || x > m) {
            return None;
        }
        cycles.push(points);
        rest = body[close + 1..].trim_start();
    }
    for cyc in cycles.iter().rev() {
        let mut cp: Vec<u8> = (0..m as u8).collect();
        for w in 0..cyc.len() {
            cp[cyc[w] - 1] = (cyc[(w + 1) % cyc.len()] - 1) as u8;
        }
        perm = perm.iter().map(|&x| cp[x as usize]).collect();
    }
    Some(perm)
}
