//! System classes from elementary decompositions, and the correspondence
//! between composite patterns and Kautz's neuro-symbolic system types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::catalog::Catalog;
use crate::matcher::{decompose_with, find_matches_with, DecomposeOptions, Decomposition, MatchError, MatchOptions};
use crate::graph::PatternGraph;
use crate::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    Ml,
    Kr,
    Hybrid,
    Unclassified,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Ml => "ML",
            Class::Kr => "KR",
            Class::Hybrid => "HYBRID",
            Class::Unclassified => "UNCLASSIFIED",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemClass {
    pub class: Class,
    pub decomposition: Decomposition,
}

/// ML is exactly one 1a plus one 2a, KR exactly one 2b, anything else fully
/// covered is HYBRID. Graphs without processes, or with a process no
/// elementary pattern covers, are UNCLASSIFIED.
pub fn class_of(d: &Decomposition) -> Class {
    if !d.uncovered.is_empty() || d.parts.is_empty() {
        return Class::Unclassified;
    }
    let mut names = d.part_names();
    names.sort_unstable();
    match names.as_slice() {
        ["1a", "2a"] => Class::Ml,
        ["2b"] => Class::Kr,
        _ => Class::Hybrid,
    }
}

pub fn classify_system(g: &PatternGraph, catalog: &Catalog) -> Result<SystemClass, MatchError> {
    classify_system_with(g, catalog, DecomposeOptions::default())
}

pub fn classify_system_with(g: &PatternGraph, catalog: &Catalog, opts: DecomposeOptions) -> Result<SystemClass, MatchError> {
    let decomposition = decompose_with(g, catalog, opts)?;
    Ok(SystemClass {
        class: class_of(&decomposition),
        decomposition,
    })
}

/// Composite pattern to the Kautz types it exemplifies. Type 6 has no entry.
pub const KAUTZ_TABLE: [(&str, &[u8]); 7] = [
    ("3b", &[1, 4]),
    ("11", &[2]),
    ("6a", &[3]),
    ("6b", &[3]),
    ("8", &[4]),
    ("10", &[4]),
    ("7", &[5]),
];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KautzReport {
    pub types: BTreeSet<u8>,
    /// Type to the table patterns found in the graph, in table order.
    pub evidence: BTreeMap<u8, Vec<String>>,
}

/// Looks up the table patterns in `catalog` and reports the types of those
/// that occur in `g`. Table names missing from the catalog are skipped.
pub fn kautz_types(g: &PatternGraph, catalog: &Catalog, exec: Exec) -> KautzReport {
    let present: Vec<(&str, &[u8], &PatternGraph)> = KAUTZ_TABLE
        .iter()
        .filter_map(|&(name, types)| catalog.get(name).map(|p| (name, types, p)))
        .collect();
    let inner = MatchOptions {
        exec: Exec::Sequential,
        ..Default::default()
    };
    let found = exec.map(&present, |(_, _, p)| !find_matches_with(p, g, inner).is_empty());
    let mut report = KautzReport::default();
    for ((name, types, _), hit) in present.iter().zip(found) {
        if hit {
            for &t in *types {
                report.types.insert(t);
                report.evidence.entry(t).or_default().push(name.to_string());
            }
        }
    }
    report
}
