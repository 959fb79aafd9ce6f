//! D∞ as ℤ ⋊ ℤ/2: `(t, f)` stands for `xᵗ·sᶠ` with `s·x·s = x⁻¹`.

use super::Element;
use crate::error::{Error, Result};

fn parts(a: &Element) -> (i64, i64) {
    (a.coords()[0], a.coords()[1])
}

pub(super) fn is_canonical(a: &Element) -> bool {
    a.coords().len() == 2 && (0..=1).contains(&a.coords()[1])
}

pub(super) fn mul(a: &Element, b: &Element) -> Result<Element> {
    let (t1, f1) = parts(a);
    let (t2, f2) = parts(b);
    let t = if f1 == 0 {
        t1.checked_add(t2)
    } else {
        t1.checked_sub(t2)
    }
    .ok_or(Error::Overflow("dihedral translation"))?;
    Ok(Element::new([t, f1 ^ f2]))
}

pub(super) fn inv(a: &Element) -> Result<Element> {
    let (t, f) = parts(a);
    if f == 1 {
        return Ok(a.clone());
    }
    let t = t.checked_neg().ok_or(Error::Overflow("dihedral translation"))?;
    Ok(Element::new([t, 0]))
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Generates iff some entry is a reflection and the translation subgroup
/// `gcd(translations, reflection offsets)` is all of ℤ.
pub(super) fn is_generating(items: &[Element]) -> Result<bool> {
    let Some(base) = items.iter().find(|e| e.coords()[1] == 1) else {
        return Ok(false);
    };
    let b0 = base.coords()[0];
    let mut g = 0i64;
    for e in items {
        let (t, f) = parts(e);
        let v = if f == 0 {
            t
        } else {
            t.checked_sub(b0).ok_or(Error::Overflow("dihedral generation test"))?
        };
        g = gcd(g, v);
        if g == 1 {
            return Ok(true);
        }
    }
    Ok(g == 1)
}
