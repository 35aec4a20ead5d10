use std::collections::BTreeMap;

use super::{DiagramError, Pass, Role, Sign, VirtualLinkDiagram};

const ENTRIES: &[(&str, &str, &str)] = &[
    ("unknot", "U", "crossingless unknot"),
    ("unlink2", "U;U", "two-component unlink"),
    ("kink", "O1+U1+", "unknot with one positive kink"),
    ("hopf", "O1+U2+;U1+O2+", "positive Hopf link"),
    ("trefoil", "O1+U2+O3+U1+O2+U3+", "right-handed trefoil"),
    ("figure_eight", "O1-U2+O3+U1-O4-U3+O2+U4-", "figure-eight knot"),
    ("virtual_trefoil", "O1+O2+U1+U2+", "virtual trefoil, two classical crossings"),
    ("kishino", "O1+U2-U1+O2-O3+U4-U3+O4-", "Kishino's knot"),
    (
        "modified_kishino",
        "O1+U2-O5+U6+U1+O2-O3+U4-O6+U5+U3+O4-",
        "Kishino's knot with a clasp of two crossings added",
    ),
    (
        "linkL",
        "O2-U1+O4+U5+O1+O3+;U2-U3+U4+O5+",
        "two-component classical link with alpha = 0 at crossing 1",
    ),
    (
        "kprime",
        "O1-U2+O3+U4-O7-U5-O4-U1-O6-U7-O5-U3+O2+U6-",
        "classical knot: the braid tangle 1,-2,-2,1,-2 closed by crossings 6 and 7",
    ),
];

/// Names accepted by [`catalog`].
pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _, _)| *n).collect()
}

/// One-line description of a catalog entry.
pub fn catalog_description(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _, _)| *n == name).map(|(_, _, d)| *d)
}

pub fn catalog(name: &str) -> Result<VirtualLinkDiagram, DiagramError> {
    ENTRIES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, code, _)| VirtualLinkDiagram::parse(code).expect("catalog codes are valid"))
        .ok_or_else(|| DiagramError::UnknownName(name.to_string()))
}

/// Member `n` of the family built from the modified Kishino knot by adding
/// an antiparallel twist of `n + 2` crossings between two of its arcs.
pub fn p_family(n: usize) -> VirtualLinkDiagram {
    let base = VirtualLinkDiagram::parse("O1+U2-O5+U6+U1+O2-O3+U4-O6+U5+U3+O4-")
        .expect("base code is valid");
    let passes = &base.components()[0];
    let m = n as u32 + 2;
    let role = |over: bool| if over { Role::Over } else { Role::Under };
    let mut out = Vec::with_capacity(passes.len() + 2 * m as usize);
    for (i, p) in passes.iter().enumerate() {
        out.push(*p);
        if i == 3 {
            out.extend((0..m).map(|k| Pass { crossing: 7 + k, role: role(k % 2 == 0) }));
        }
        if i == 7 {
            out.extend((0..m).rev().map(|k| Pass { crossing: 7 + k, role: role(k % 2 == 1) }));
        }
    }
    let mut signs: BTreeMap<u32, Sign> = base.crossings().map(|c| (c.id, c.sign)).collect();
    signs.extend((0..m).map(|k| (7 + k, Sign::Positive)));
    VirtualLinkDiagram::new(vec![out], signs).expect("family members are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_validate() {
        for name in catalog_names() {
            let d = catalog(name).unwrap();
            assert_eq!(VirtualLinkDiagram::parse(&d.to_string()).unwrap(), d);
            assert!(catalog_description(name).is_some());
        }
        assert!(matches!(catalog("nope"), Err(DiagramError::UnknownName(_))));
    }

    #[test]
    fn crossing_counts() {
        let count = |n| catalog(n).unwrap().num_crossings();
        assert_eq!(count("kishino"), 4);
        assert_eq!(count("modified_kishino"), 6);
        assert_eq!(count("trefoil"), 3);
        assert_eq!(count("figure_eight"), 4);
        assert_eq!(catalog("linkL").unwrap().num_components(), 2);
        assert_eq!(count("kprime"), 7);
    }

    #[test]
    fn family_sizes() {
        for n in 0..5 {
            let d = p_family(n);
            assert_eq!(d.num_crossings(), 8 + n);
            assert_eq!(d.num_components(), 1);
        }
    }
}
