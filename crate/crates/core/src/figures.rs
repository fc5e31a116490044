//! The drawn pontableau poset for `(2,1,4,(0,0),(0,2))`, transcribed node
//! by node, and a comparison against the computed strata poset.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::pontableaux::{PontError, PontLabeling, Pontableau, StrataPoset};
use crate::shapes::BnData;

/// Named labelings and arrows `(upper, lower)` of a drawn poset.
#[derive(Clone, Debug)]
pub struct Drawing {
    pub data: BnData,
    pub nodes: Vec<(&'static str, PontLabeling)>,
    pub arrows: Vec<(&'static str, &'static str)>,
}

/// Boxes: `(0,0)` on the top row, `(-1,1)` and `(-2,1)` on the row below.
pub fn figure_four() -> Drawing {
    let data = BnData::new(2, 1, 4, vec![0, 0], vec![0, 2]).expect("valid family");
    let two = |top: &'static str, left: &'static str| [(0, 0, top), (-1, 1, left)];
    let three = |top: &'static str, mid: &'static str, left: &'static str| [(0, 0, top), (-1, 1, mid), (-2, 1, left)];
    let parse = |entries: &[(i64, i64, &str)]| PontLabeling::parse(entries).expect("drawn labels parse");
    let nodes = vec![
        ("S2-1", parse(&two("1", "1-"))),
        ("S2-2", parse(&two("2", "2-"))),
        ("S2-3", parse(&two("1", "2-"))),
        ("S2-4", parse(&two("2", "1-"))),
        ("S2-5", parse(&three("1", "1-", "1-,2"))),
        ("S1-1", parse(&two("2", "-2"))),
        ("S1-2", parse(&two("1,-2,2", "1-"))),
        ("S1-3", parse(&two("1", "-2"))),
        ("S1-4", parse(&three("1", "1-", "-2,2"))),
        ("S1-5", parse(&two("1,-2,2", "2-"))),
        ("S0-1", parse(&two("1,-2,2", "-2"))),
        ("S0-2", parse(&three("1", "-2", "-2,2"))),
    ];
    let arrows = vec![
        ("S1-1", "S0-1"),
        ("S1-2", "S0-1"),
        ("S1-3", "S0-1"),
        ("S1-3", "S0-2"),
        ("S2-1", "S1-2"),
        ("S2-1", "S1-3"),
        ("S2-1", "S1-4"),
        ("S2-2", "S1-1"),
        ("S2-2", "S1-5"),
        ("S1-4", "S0-2"),
        ("S1-5", "S0-1"),
        ("S2-3", "S1-3"),
        ("S2-3", "S1-5"),
        ("S2-4", "S1-1"),
        ("S2-4", "S1-2"),
        ("S2-5", "S1-4"),
    ];
    Drawing { data, nodes, arrows }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DrawingComparison {
    /// Drawn nodes that are not pontableaux of the family.
    pub invalid_nodes: Vec<String>,
    /// Drawn nodes whose level (the digit after `S`) differs from `dim`.
    pub wrong_levels: Vec<String>,
    /// Computed strata missing from the drawing.
    pub undrawn_strata: usize,
    pub missing_arrows: Vec<(String, String)>,
    pub extra_arrows: Vec<(String, String)>,
    pub arrows: usize,
}

impl DrawingComparison {
    pub fn matches(&self) -> bool {
        self.invalid_nodes.is_empty()
            && self.wrong_levels.is_empty()
            && self.undrawn_strata == 0
            && self.missing_arrows.is_empty()
            && self.extra_arrows.is_empty()
    }
}

/// Rebuilds every drawn node, checks its dimension against its level, and
/// compares the drawn arrows with the cover relation.
pub fn compare(drawing: &Drawing, strata: &StrataPoset) -> DrawingComparison {
    let index: BTreeMap<&Pontableau, usize> = strata.nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut cmp = DrawingComparison { arrows: drawing.arrows.len(), ..Default::default() };
    let mut name_of: BTreeMap<usize, &str> = BTreeMap::new();
    for (name, labeling) in &drawing.nodes {
        let built: Result<Pontableau, PontError> = Pontableau::from_labeling(&drawing.data, labeling);
        match built.ok().and_then(|p| index.get(&p).map(|&i| (i, p.dim()))) {
            Some((i, dim)) => {
                name_of.insert(i, name);
                if name[1..2].parse::<i64>().ok() != Some(dim) {
                    cmp.wrong_levels.push(name.to_string());
                }
            }
            None => cmp.invalid_nodes.push(name.to_string()),
        }
    }
    cmp.undrawn_strata = strata.nodes.len() - name_of.len();
    let computed: BTreeSet<(String, String)> = strata
        .poset
        .covers()
        .iter()
        .filter_map(|&(lo, hi)| Some((name_of.get(&hi)?.to_string(), name_of.get(&lo)?.to_string())))
        .collect();
    let drawn: BTreeSet<(String, String)> =
        drawing.arrows.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
    cmp.missing_arrows = drawn.difference(&computed).cloned().collect();
    cmp.extra_arrows = computed.difference(&drawn).cloned().collect();
    cmp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drawing_matches_computation() {
        let drawing = figure_four();
        let strata = StrataPoset::new(&drawing.data);
        let cmp = compare(&drawing, &strata);
        assert!(cmp.matches(), "{cmp:?}");
        assert_eq!(strata.poset.covers().len(), 16);
    }

    #[test]
    fn a_wrong_arrow_is_reported() {
        let mut drawing = figure_four();
        drawing.arrows[0] = ("S2-5", "S0-1");
        let cmp = compare(&drawing, &StrataPoset::new(&drawing.data));
        assert_eq!(cmp.missing_arrows, vec![("S2-5".to_string(), "S0-1".to_string())]);
        assert_eq!(cmp.extra_arrows, vec![("S1-1".to_string(), "S0-1".to_string())]);
    }
}
