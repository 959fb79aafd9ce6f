use std::path::Path;

use super::Group;
use crate::error::{Error, Result};

/// Parses a group description:
///
/// ```text
/// Z^<k> | Z | Zmod:<m> | Zmod:<m1>x<m2>... | Dinf | D:<m> | Sym:<m> | Q8 | table:<path>
/// ```
pub fn parse_group_spec(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    let syntax = || Error::Syntax(spec.to_string());
    if spec == "Z" {
        return Group::free_abelian(1);
    }
    if spec == "Dinf" {
        return Ok(Group::dihedral_infinite());
    }
    if spec == "Q8" {
        return Ok(Group::quaternion());
    }
    if let Some(k) = spec.strip_prefix("Z^") {
        let k: usize = k.parse().map_err(|_| syntax())?;
        return Group::free_abelian(k);
    }
    if let Some(ms) = spec.strip_prefix("Zmod:") {
        let moduli = ms
            .split('x')
            .map(|m| m.parse::<u64>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>>>()?;
        return Group::finite_abelian(&moduli);
    }
    if let Some(m) = spec.strip_prefix("D:") {
        let m: u32 = m.parse().map_err(|_| syntax())?;
        return Group::dihedral(m);
    }
    if let Some(m) = spec.strip_prefix("Sym:") {
        let m: u8 = m.parse().map_err(|_| syntax())?;
        return Group::symmetric(m);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        return read_table(Path::new(path));
    }
    match spec.split_once(':') {
        Some((kind, _)) => Err(Error::Unsupported(format!("group kind {kind:?}"))),
        None => Err(syntax()),
    }
}

/// Table file: first line `N`, then `N` rows of `N` whitespace-separated
/// 0-based indices.
pub(crate) fn parse_table(text: &str) -> Result<Group> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let bad = |why: &str| Error::Syntax(format!("table file: {why}"));
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("missing order line"))?
        .parse()
        .map_err(|_| bad("order is not an integer"))?;
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<u32>().map_err(|_| bad("entry is not an index")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != n {
        return Err(bad(&format!("expected {n} rows, found {}", rows.len())));
    }
    Group::from_table(rows)
}

fn read_table(path: &Path) -> Result<Group> {
    parse_table(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupKind;

    #[test]
    fn grammar_cases() {
        assert_eq!(parse_group_spec("Z^2").unwrap().kind(), GroupKind::FreeAbelian(2));
        assert_eq!(parse_group_spec("Z").unwrap().kind(), GroupKind::FreeAbelian(1));
        assert_eq!(parse_group_spec("Zmod:3").unwrap().order(), Some(3));
        assert_eq!(
            parse_group_spec("Zmod:2x4").unwrap().kind(),
            GroupKind::FiniteAbelian(vec![2, 4])
        );
        let d = parse_group_spec("Dinf").unwrap();
        assert_eq!(d.kind(), GroupKind::DihedralInfinite);
        assert_eq!(d.order(), None);
        assert_eq!(parse_group_spec("D:4").unwrap().order(), Some(8));
        assert_eq!(parse_group_spec("Sym:3").unwrap().kind(), GroupKind::Permutation);
        assert_eq!(parse_group_spec("Q8").unwrap().order(), Some(8));
    }

    #[test]
    fn grammar_errors() {
        assert!(matches!(parse_group_spec("Zmod:0"), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_group_spec("Z^0"), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_group_spec("Z^x"), Err(Error::Syntax(_))));
        assert!(matches!(parse_group_spec("Foo:3"), Err(Error::Unsupported(_))));
        assert!(matches!(parse_group_spec("garbage"), Err(Error::Syntax(_))));
        assert!(parse_group_spec("table:/nonexistent/file").is_err());
    }

    #[test]
    fn table_text() {
        let g = parse_table("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(g.order(), Some(3));
        assert!(g.is_abelian());
        assert!(parse_table("2\n0 1\n").is_err());
        assert!(parse_table("2\n0 1\n1 x\n").is_err());
    }
}
