//! Known expressiveness relations and a checker that sweeps them over a corpus.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithm::AlgorithmSpec;
use crate::error::Result;
use crate::graph::Graph;

/// `(weak, strong)`: whenever `weak` distinguishes a pair, `strong` must too.
pub const ARROWS: [(&str, &str); 17] = [
    ("swl-vs", "swl-sv"),
    ("swl-vs", "pswl-vs"),
    ("swl-sv", "pswl-sv"),
    ("pswl-vs", "pswl-sv"),
    ("pswl-sv", "gswl"),
    ("gswl", "sswl"),
    ("lfwl2", "slfwl2"),
    ("slfwl2", "fwl2"),
    ("pswl-vs", "lfwl2"),
    ("sswl", "slfwl2"),
    ("gdwl:spd", "gdwl:spd+htd"),
    ("gdwl:htd", "gdwl:spd+htd"),
    ("gdwl:spd", "gdwl:spd+rd"),
    ("gdwl:rd", "gdwl:spd+rd"),
    ("gdwl:spd+htd", "pswl-vs"),
    ("gdwl:rd", "sswl"),
    ("gdwl:spd+rd", "sswl"),
];

/// Pairs of algorithms that must agree on every input pair.
pub const EQUIVALENCES: [(&str, &str); 14] = [
    ("swl-vs", "custom:lu:vs:de"),
    ("swl-sv", "custom:lu:sv:de"),
    ("pswl-vs", "custom:lu,pvv:vs:de"),
    ("gswl", "custom:lu,gv:vs:de"),
    ("sswl", "custom:lu,lv:vs:de"),
    ("sswl", "custom:lu,pvu:vs"),
    ("sswl", "custom:lu,lv:sv"),
    ("gswl", "custom:lu,gv:sv"),
    ("sswl", "delta2lwl"),
    ("gswl", "dsswl"),
    ("swl-vs", "custom:lv:sv"),
    ("pswl-vs", "custom:lv,puu:sv"),
    ("gswl", "custom:lv,gu:sv"),
    ("swl-sv", "custom:lv:vs"),
];

/// Relations nobody has proved either way; outcomes are only reported.
pub const OPEN: [(&str, &str); 2] = [("gdwl:rd", "pswl-vs"), ("gdwl:spd+rd", "pswl-vs")];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Arrow,
    Equivalence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: RelationKind,
    pub left: String,
    pub right: String,
    pub pair: usize,
    pub left_distinguishes: bool,
    pub right_distinguishes: bool,
}

/// Counts of pairs where the first algorithm separates and the second does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenObservation {
    pub left: String,
    pub right: String,
    pub left_only: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HierarchyReport {
    pub pairs: usize,
    pub relations_checked: usize,
    pub violations: Vec<Violation>,
    pub open: Vec<OpenObservation>,
    /// Per algorithm, how many pairs it distinguished.
    pub distinguished: BTreeMap<String, usize>,
}

fn relations() -> impl Iterator<Item = (RelationKind, &'static str, &'static str)> {
    ARROWS
        .iter()
        .map(|&(a, b)| (RelationKind::Arrow, a, b))
        .chain(EQUIVALENCES.iter().map(|&(a, b)| (RelationKind::Equivalence, a, b)))
}

fn is_broken(kind: RelationKind, da: bool, db: bool) -> bool {
    match kind {
        RelationKind::Arrow => da && !db,
        RelationKind::Equivalence => da != db,
    }
}

fn involved() -> Vec<&'static str> {
    let mut names: Vec<&str> =
        ARROWS.iter().chain(EQUIVALENCES.iter()).chain(OPEN.iter()).flat_map(|&(a, b)| [a, b]).collect();
    names.sort_unstable();
    names.dedup();
    names
}

/// Runs every algorithm named in the relation tables on every pair and lists
/// each broken arrow or equivalence.
pub fn check_hierarchy(pairs: &[(Graph, Graph)]) -> Result<HierarchyReport> {
    let names = involved();
    let algs: Vec<AlgorithmSpec> = names.iter().map(|n| n.parse()).collect::<Result<_>>()?;
    let verdicts: Vec<Vec<bool>> = pairs
        .par_iter()
        .map(|(g, h)| algs.iter().map(|a| Ok(a.distinguish(g, h)?.distinguishes)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let col = |name: &str| names.binary_search(&name).expect("name listed in relation tables");
    let mut violations = Vec::new();
    for (kind, a, b) in relations() {
        let (ia, ib) = (col(a), col(b));
        for (pair, row) in verdicts.iter().enumerate() {
            let (da, db) = (row[ia], row[ib]);
            if is_broken(kind, da, db) {
                violations.push(Violation {
                    kind,
                    left: a.into(),
                    right: b.into(),
                    pair,
                    left_distinguishes: da,
                    right_distinguishes: db,
                });
            }
        }
    }
    let open = OPEN
        .iter()
        .map(|&(a, b)| OpenObservation {
            left: a.into(),
            right: b.into(),
            left_only: verdicts.iter().filter(|r| r[col(a)] && !r[col(b)]).count(),
        })
        .collect();
    let distinguished =
        names.iter().enumerate().map(|(i, n)| (n.to_string(), verdicts.iter().filter(|r| r[i]).count())).collect();
    Ok(HierarchyReport {
        pairs: pairs.len(),
        relations_checked: ARROWS.len() + EQUIVALENCES.len(),
        violations,
        open,
        distinguished,
    })
}

/// Relations broken by one row of verdicts keyed by algorithm name.
/// Relations that mention an algorithm missing from the row are skipped.
pub fn broken_in_row(row: &BTreeMap<String, bool>) -> Vec<(RelationKind, &'static str, &'static str)> {
    relations()
        .filter(|&(kind, a, b)| match (row.get(a), row.get(b)) {
            (Some(&da), Some(&db)) => is_broken(kind, da, db),
            _ => false,
        })
        .collect()
}
