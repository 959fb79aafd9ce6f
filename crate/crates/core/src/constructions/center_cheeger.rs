use num::rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Quotient};
use crate::metrics::{cheeger_exact, CheegerWitness, RegularGraph, CHEEGER_MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionComparison {
    /// `h(G, S)`.
    pub group: Option<String>,
    /// `h(G/Z(G), S̃)`.
    pub quotient: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterCheegerReport {
    pub group: String,
    pub generators: String,
    pub order: usize,
    pub quotient_order: usize,
    /// Infimum over all nonempty sets.
    pub unrestricted: ConventionComparison,
    /// Infimum over sets of at most half the vertices.
    pub half: ConventionComparison,
    /// The quotient is a single vertex, so the comparison carries no content.
    pub degenerate: bool,
    pub passed: bool,
}

fn compare(a: Option<&CheegerWitness>, b: Option<&CheegerWitness>) -> ConventionComparison {
    let ratio = |w: Option<&CheegerWitness>| w.map(CheegerWitness::ratio);
    let holds = match (ratio(a), ratio(b)) {
        (Some(x), Some(y)) => y >= x,
        // no admissible set in the quotient: nothing to compare
        (_, None) => true,
        (None, Some(_)) => false,
    };
    ConventionComparison {
        group: ratio(a).map(|r: Ratio<u64>| r.to_string()),
        quotient: ratio(b).map(|r| r.to_string()),
        holds,
    }
}

/// Compares exact Cheeger constants of Cay(G, S) and Cay(G/Z(G), S̃), both as
/// `2|S|`-regular multigraphs (generators falling into the center become
/// loops in the quotient).
pub fn verify_center_quotient_cheeger(group: &Group, gens: &[Element]) -> Result<CenterCheegerReport> {
    let order = group
        .order()
        .ok_or_else(|| Error::Unsupported("Cayley graph of an infinite group".into()))?
        as usize;
    if order > CHEEGER_MAX_VERTICES {
        return Err(Error::TooLarge {
            vertices: order,
            limit: CHEEGER_MAX_VERTICES,
        });
    }
    if !group.is_generating(gens)? {
        return Err(Error::NotGenerating);
    }
    let q = Quotient::by_center(group)?;
    let q_gens = q.project_tuple(gens)?;
    let (cay, _) = RegularGraph::cayley(group, gens)?;
    let (cay_q, _) = RegularGraph::cayley(&q.target, &q_gens)?;
    let h = cheeger_exact(&cay)?;
    let hq = cheeger_exact(&cay_q)?;
    let unrestricted = compare(Some(&h.unrestricted), Some(&hq.unrestricted));
    let half = compare(h.half.as_ref(), hq.half.as_ref());
    let degenerate = cay_q.len() == 1;
    Ok(CenterCheegerReport {
        group: group.describe(),
        generators: group.format_tuple(gens),
        order,
        quotient_order: cay_q.len(),
        passed: unrestricted.holds && half.holds,
        unrestricted,
        half,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_group_is_degenerate() {
        let g = Group::cyclic(6).unwrap();
        let r = verify_center_quotient_cheeger(&g, &[Element::scalar(1)]).unwrap();
        assert!(r.degenerate && r.passed);
        assert_eq!(r.quotient_order, 1);
    }
}
