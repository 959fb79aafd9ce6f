use rand::Rng;

use super::lattice::smith;
use super::{Element, GroupKind};
use crate::error::{Error, Result};

/// ℤ/m₁ × … × ℤ/mₖ where a modulus of 0 stands for ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub(crate) fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParameter("abelian group needs a factor".into()));
        }
        if moduli.iter().any(|&m| m > i64::MAX as u64) {
            return Err(Error::InvalidParameter("modulus too large".into()));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Integer relation rows `mᵢ·eᵢ` of the finite factors.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let k = self.rank();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| {
                let mut row = vec![0; k];
                row[i] = m as i64;
                row
            })
            .collect()
    }

    pub(super) fn kind(&self) -> GroupKind {
        if self.moduli.iter().all(|&m| m == 0) {
            GroupKind::FreeAbelian(self.rank())
        } else if self.moduli.iter().all(|&m| m > 0) {
            GroupKind::FiniteAbelian(self.moduli.clone())
        } else {
            GroupKind::Abelian(self.moduli.clone())
        }
    }

    pub(super) fn order(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| if m == 0 { None } else { acc.checked_mul(m) })
    }

    pub(super) fn describe(&self) -> String {
        match self.kind() {
            GroupKind::FreeAbelian(k) => format!("Z^{k}"),
            _ => {
                let parts: Vec<String> = self
                    .moduli
                    .iter()
                    .map(|&m| if m == 0 { "Z".to_string() } else { m.to_string() })
                    .collect();
                if self.moduli.iter().all(|&m| m > 0) {
                    format!("Zmod:{}", parts.join("x"))
                } else {
                    format!("Abelian:{}", parts.join("x"))
                }
            }
        }
    }

    pub(super) fn min_generators(&self) -> Option<usize> {
        let free = self.moduli.iter().filter(|&&m| m == 0).count();
        let finite: Vec<u64> = self.moduli.iter().copied().filter(|&m| m > 0).collect();
        if finite.is_empty() {
            return Some(free);
        }
        let rows: Vec<Vec<i64>> = (0..finite.len())
            .map(|i| {
                let mut r = vec![0; finite.len()];
                r[i] = finite[i] as i64;
                r
            })
            .collect();
        let s = smith(&rows, finite.len()).ok()?;
        Some(free + s.factors.iter().filter(|&&d| d > 1).count())
    }

    pub(super) fn identity(&self) -> Element {
        Element::new(std::iter::repeat_n(0, self.rank()))
    }

    pub(super) fn is_canonical(&self, a: &Element) -> bool {
        a.coords().len() == self.rank()
            && a.coords()
                .iter()
                .zip(&self.moduli)
                .all(|(&x, &m)| m == 0 || (x >= 0 && (x as u64) < m))
    }

    pub(super) fn reduce(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement {
                group: self.describe(),
                detail: format!("expected {} coordinates, got {}", self.rank(), coords.len()),
            });
        }
        Ok(Element::new(coords.iter().zip(&self.moduli).map(|(&x, &m)| {
            if m == 0 {
                x
            } else {
                x.rem_euclid(m as i64)
            }
        })))
    }

    pub(super) fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let coords = a
            .coords()
            .iter()
            .zip(b.coords())
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| {
                if m == 0 {
                    x.checked_add(y).ok_or(Error::Overflow("free abelian coordinate"))
                } else {
                    Ok(((i128::from(x) + i128::from(y)) % i128::from(m)) as i64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::new(coords))
    }

    pub(super) fn neg(&self, a: &Element) -> Result<Element> {
        let coords = a
            .coords()
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                if m == 0 {
                    x.checked_neg().ok_or(Error::Overflow("free abelian coordinate"))
                } else {
                    Ok((m as i64 - x) % m as i64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::new(coords))
    }

    pub(super) fn is_generating(&self, items: &[Element]) -> Result<bool> {
        let mut rows: Vec<Vec<i64>> = items.iter().map(|e| e.coords().to_vec()).collect();
        rows.extend(self.relations());
        Ok(smith(&rows, self.rank())?.is_full())
    }

    pub(super) fn elements(&self) -> Option<Vec<Element>> {
        let order = self.order()?;
        if order > 1 << 24 {
            return None;
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; self.rank()];
        loop {
            out.push(Element::new(cur.iter().copied()));
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                cur[i] += 1;
                if (cur[i] as u64) < self.moduli[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub(super) fn random<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> Element {
        Element::new(self.moduli.iter().map(|&m| {
            if m == 0 {
                rng.random_range(-spread..=spread)
            } else {
                rng.random_range(0..m as i64)
            }
        }))
    }

    pub(super) fn standard_generators(&self) -> Vec<Element> {
        (0..self.rank())
            .filter(|&i| self.moduli[i] != 1)
            .map(|i| {
                Element::new((0..self.rank()).map(|j| i64::from(i == j)))
            })
            .collect()
    }
}
